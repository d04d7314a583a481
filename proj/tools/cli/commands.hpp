#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cli/serialize.hpp"
#include "shufflekit/permutation.hpp"
#include "shufflekit/shuffle_models.hpp"

namespace shufflekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

struct GlobalOptions {
  Format format = Format::kCsv;
  std::optional<std::string> out_path;
  NumberStyle numbers;
  std::uint64_t seed = 1;
  std::optional<int> max_n_override;

  DeckCap cap() const;
};

/// Model flags shared by several subcommands.
struct ModelOptions {
  std::string name = "gsr";
  int packets = 2;
  int cut_spread = 5;
  int max_packet = 5;

  ShuffleModel build() const;
};

struct MatrixArgs {
  ModelOptions model;
  int n = 3;
  int power = 1;
};

struct DistanceArgs {
  ModelOptions model;
  int n = 3;
  int k_max = 10;
  std::string method = "exact";
};

struct FaroArgs {
  int n = 52;
  std::string variant = "out";
  std::optional<int> trace_depth;
  std::optional<int> hands;
  bool period = false;
};

struct SimulateArgs {
  ModelOptions model;
  int n = 52;
  int hands = 1;
};

struct EmpiricalArgs {
  ModelOptions model;
  int n = 4;
  int hands = 1;
  std::uint64_t trials = 100000;
  std::string compare = "none";
};

std::string cmd_matrix(const MatrixArgs& args, const GlobalOptions& global);
std::string cmd_distance(const DistanceArgs& args, const GlobalOptions& global);
std::string cmd_faro(const FaroArgs& args, const GlobalOptions& global);
std::string cmd_simulate(const SimulateArgs& args, const GlobalOptions& global);
std::string cmd_empirical(const EmpiricalArgs& args, const GlobalOptions& global);

/// Parses argv, runs one subcommand and writes its output to `out` (or the
/// --out file). Errors go to `err` as a single line. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shufflekit::cli
