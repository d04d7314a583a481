#pragma once

#include <string>
#include <vector>

#include "shufflekit/rational.hpp"

namespace shufflekit::cli {

enum class Format { kCsv, kJson };

/// How numbers are rendered in every command's output.
struct NumberStyle {
  int precision = 12;
  bool rational = false;
};

std::string decimal(const Rational& q, const NumberStyle& style);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

std::string csv_row(const std::vector<std::string>& fields);

}  // namespace shufflekit::cli
