#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace shufflekit {

/// Lexicographic index of an arrangement among all n! orderings.
struct Rank {
  std::uint64_t value = 0;

  friend auto operator<=>(const Rank&, const Rank&) = default;
};

/// A deck ordering. Position 1 is the top of the deck; labels are 1..n.
///
/// Also read as the function position -> label, which is what compose()
/// and inverse() operate on.
class Arrangement {
 public:
  /// Validates that `labels` is a bijection on 1..n with n >= 1.
  explicit Arrangement(std::vector<int> labels);

  static Arrangement identity(int n);

  int size() const { return static_cast<int>(labels_.size()); }

  /// Label of the card at 1-based `position`.
  int at(int position) const;

  /// 1-based position of `label`.
  int position_of(int label) const;

  std::span<const int> labels() const { return labels_; }

  /// "213" for n <= 9, "2,1,3,..." above.
  std::string to_string() const;

  friend bool operator==(const Arrangement&, const Arrangement&) = default;
  friend auto operator<=>(const Arrangement&, const Arrangement&) = default;

 private:
  struct Unchecked {};
  Arrangement(std::vector<int> labels, Unchecked) : labels_(std::move(labels)) {}

  std::vector<int> labels_;

  friend Arrangement unrank(int n, Rank r);
  friend Arrangement compose(const Arrangement& f, const Arrangement& g);
  friend Arrangement inverse(const Arrangement& a);
};

/// Largest n for which n! fits in a Rank.
inline constexpr int kMaxRankableN = 20;

/// n! as a 64-bit integer; n must be in 0..kMaxRankableN.
std::uint64_t factorial(int n);

Rank rank(const Arrangement& a);

/// Lehmer-code decoding. Throws InvalidArgument when r >= n!.
Arrangement unrank(int n, Rank r);

/// result(i) = f(g(i)).
Arrangement compose(const Arrangement& f, const Arrangement& g);

Arrangement inverse(const Arrangement& a);

/// 1 + #{v : label v+1 sits above label v}.
int rising_sequences(const Arrangement& a);

/// Parses either "213" (single digits) or "2,1,3".
Arrangement parse_arrangement(const std::string& text);

/// Cap on anything that materializes all of S_n (enumeration, dense
/// distributions, transition matrices).
class DeckCap {
 public:
  static constexpr int kDefault = 6;
  static constexpr int kOverrideLimit = 7;

  DeckCap() = default;

  /// Raises (or lowers) the cap; values above kOverrideLimit are rejected.
  static DeckCap with_override(int max_n);

  int max_n() const { return max_n_; }

  /// Throws ResourceLimit naming the limit when n > max_n().
  void check(int n, const char* what) const;

 private:
  explicit DeckCap(int max_n) : max_n_(max_n) {}
  int max_n_ = kDefault;
};

/// All n! arrangements in lexicographic order.
std::vector<Arrangement> enumerate(int n, const DeckCap& cap = {});

}  // namespace shufflekit
