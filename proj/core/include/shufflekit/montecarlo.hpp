#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "shufflekit/markov.hpp"
#include "shufflekit/permutation.hpp"
#include "shufflekit/shuffle_models.hpp"

namespace shufflekit::mc {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer applied to (seed, stream); used to seed one Engine
/// per block of trials so results do not depend on scheduling.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Engine make_engine(std::uint64_t seed, std::uint64_t stream);

/// Uniform integer in [0, bound) by multiply-and-reject; no modulo bias.
std::uint64_t uniform_below(Engine& rng, std::uint64_t bound);

/// One hand of `model` applied to `deck`. Deterministic kinds ignore rng.
Arrangement shuffle_once(const Arrangement& deck, const ShuffleModel& model, Engine& rng);

/// Largest deck whose n! outcomes are counted densely.
inline constexpr int kMaxCountingN = 8;

/// Trials per independently seeded stream.
inline constexpr std::uint64_t kTrialsPerStream = 4096;

struct SimulationConfig {
  ShuffleModel model;
  int n = 1;
  int hands = 1;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
};

/// Occurrence counts of final arrangements, indexed by rank.
struct EmpiricalDistribution {
  int n = 0;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t count(Rank r) const { return counts.at(r.value); }

  /// Only the arrangements that occurred.
  std::map<Rank, std::uint64_t> nonzero() const;

  friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;
};

/// Shuffles `trials` fresh identity decks `hands` times each. The result is
/// a function of cfg alone; `threads` (0 = hardware concurrency) only
/// changes wall time.
EmpiricalDistribution run_trials(const SimulationConfig& cfg, unsigned threads = 0);

/// ½ Σ |count(π)/trials − q(π)|, exact.
Rational empirical_tv_exact(const EmpiricalDistribution& e, const Distribution& q);

double empirical_tv(const EmpiricalDistribution& e, const Distribution& q);

/// Frequencies as an exact Distribution.
Distribution to_distribution(const EmpiricalDistribution& e);

struct PhysicalVsGsrReport {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  PhysicalRiffle params;
  double empirical_vs_gsr = 0.0;
  // Present when the physical random-choice tree could be enumerated.
  std::optional<Rational> exact_physical_vs_gsr;
  std::optional<double> empirical_vs_exact_physical;
};

/// Empirical one-hand PhysicalRiffle law against the exact GSR(2) law and,
/// when enumerable, against the exact PhysicalRiffle law. n <= 6.
PhysicalVsGsrReport compare_physical_vs_gsr(int n, std::uint64_t trials, std::uint64_t seed,
                                            PhysicalRiffle params = {}, unsigned threads = 0);

}  // namespace shufflekit::mc
