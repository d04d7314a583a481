#pragma once

#include <stdexcept>
#include <string>

namespace shufflekit {

// Bad input: wrong deck size, out-of-range rank, mismatched dimensions,
// unsupported model for an operation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request that would need more state than the configured cap allows
// (n! enumeration, n!×n! matrices, brute-force trees).
class ResourceLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace shufflekit
