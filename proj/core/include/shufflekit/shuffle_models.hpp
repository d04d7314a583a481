#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "shufflekit/permutation.hpp"
#include "shufflekit/rational.hpp"

namespace shufflekit {

// Model kinds. Stochastic ones carry their parameters; the deterministic
// ones (FaroOut, FaroIn, Mongean) carry none.

/// Move the top card to one of the n positions, uniformly.
struct TopInAtRandom {};

/// Gilbert-Shannon-Reeds a-shuffle: multinomial cut into `packets` piles,
/// uniformly random interleaving.
struct GsrRiffle {
  int packets = 2;
};

/// Hand riffle: cut near the middle (±cut_spread), then alternate packets
/// of 1..max_packet cards from each half.
struct PhysicalRiffle {
  int cut_spread = 5;
  int max_packet = 5;
};

struct FaroOut {};
struct FaroIn {};
struct Mongean {};

/// Uniformly random arrangement; the idealized "generic randomizer".
struct NaiveUniform {};

class ShuffleModel {
 public:
  using Kind = std::variant<TopInAtRandom, GsrRiffle, PhysicalRiffle, FaroOut, FaroIn,
                            Mongean, NaiveUniform>;

  /// Validates parameters (a >= 2, cut_spread >= 0, max_packet >= 1).
  ShuffleModel(Kind kind);  // NOLINT(google-explicit-constructor)

  template <typename T>
    requires(!std::same_as<std::remove_cvref_t<T>, ShuffleModel> &&
             !std::same_as<std::remove_cvref_t<T>, Kind> && std::constructible_from<Kind, T>)
  ShuffleModel(T&& kind)  // NOLINT(google-explicit-constructor)
      : ShuffleModel(Kind(std::forward<T>(kind))) {}

  const Kind& kind() const { return kind_; }

  bool is_deterministic() const;

  /// Short machine name, e.g. "top", "gsr(a=2)", "physical(s=5,p=5)".
  std::string name() const;

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }

 private:
  Kind kind_;
};

/// Exact single-step law over arrangements reached from the identity,
/// keyed by rank. Only positive entries are stored.
struct StepDistribution {
  int n = 0;
  std::map<Rank, Rational> probs;

  Rational total() const;
  Rational at(Rank r) const;
};

/// Closed-form one-shuffle law for TopInAtRandom, GsrRiffle and
/// NaiveUniform. GsrRiffle and NaiveUniform touch all of S_n, so they obey
/// `cap`. Other kinds throw InvalidArgument.
StepDistribution single_shuffle_distribution(const ShuffleModel& model, int n,
                                             const DeckCap& cap = {});

/// Default number of leaves brute_force_distribution will walk.
inline constexpr std::uint64_t kDefaultPathBudget = 20'000'000;

/// Exact law obtained by walking every random-choice path of the model:
///  - GsrRiffle(a): all a^n pile-assignment words, each with weight a^-n;
///  - PhysicalRiffle: every (cut, starting half, packet sizes) path;
///  - TopInAtRandom: the n insertion points;
///  - NaiveUniform: every arrangement;
///  - deterministic kinds: the single path.
/// Throws ResourceLimit when the tree has more than `path_budget` leaves.
StepDistribution brute_force_distribution(const ShuffleModel& model, int n,
                                          std::uint64_t path_budget = kDefaultPathBudget);

/// FaroOut/FaroIn (even n only) or Mongean, applied to the identity deck.
Arrangement deterministic_permutation(const ShuffleModel& model, int n);

/// Order of deterministic_permutation: lcm of its cycle lengths.
std::uint64_t deterministic_period(const ShuffleModel& model, int n);

/// Depths (cards above the tracked card, 0 = top) of one card over `hands`
/// repetitions of a Faro shuffle; the result has hands + 1 entries and starts
/// at `start_depth`. For the out-shuffle, depths 0 and n-1 never move and the
/// others double modulo n-1.
std::vector<int> faro_trace(int n, int start_depth, int hands, bool out_shuffle = true);

/// Deck produced by one application of a deterministic kind to `deck`.
Arrangement apply_deterministic(const ShuffleModel& model, const Arrangement& deck);

}  // namespace shufflekit
