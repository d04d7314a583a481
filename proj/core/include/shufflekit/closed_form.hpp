#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "shufflekit/markov.hpp"
#include "shufflekit/rational.hpp"

namespace shufflekit::closed_form {

/// A(n, r): how many n-card arrangements have exactly r rising sequences.
struct EulerianTable {
  int n = 0;
  std::vector<BigInt> counts;  // counts[r - 1]

  const BigInt& count(int r) const;
};

/// A(n,r) = r·A(n−1,r) + (n−r+1)·A(n−1,r−1), A(1,1) = 1.
EulerianTable eulerian(int n);

/// Probability of one particular arrangement with r rising sequences after
/// an a-shuffle: C(a + n − r, n) / a^n.
Rational a_shuffle_probability(int n, const BigInt& packets, int r);

/// Same law after k GSR riffles, i.e. a = 2^k.
Rational riffle_k_probability(int n, int k, int r);

/// Dense law of k GSR riffles over S_n (n <= kMaxDenseLawN).
inline constexpr int kMaxDenseLawN = 8;
Distribution riffle_k_law(int n, int k);

/// d(k) = ½ Σ_r A(n,r)·|C(2^k+n−r, n)/2^{kn} − 1/n!| for k = 0..k_max.
DistanceCurve riffle_distance_closed_form(int n, int k_max);

struct BoundParams {
  int n = 1;
  int k = 0;
};

/// 1 − Π_{j=1}^{n−1} (1 − j/2^k), or 1 whenever 2^k <= n − 1.
Rational coupling_bound(BoundParams p);

DistanceCurve coupling_bound_curve(int n, int k_max);

enum class CutoffKind { kRiffle, kTopCard };

/// Accepts "riffle" or "top"; anything else is InvalidArgument.
CutoffKind parse_cutoff_kind(std::string_view name);

/// Riffle: (3/2)·log2 n.  Top-card: n·log2 n.
double cutoff_estimate(CutoffKind kind, int n);

/// Smallest k on the curve with d(k) <= threshold; nullopt if never reached.
/// threshold must lie strictly inside (0, 1).
std::optional<int> cutoff_detect(const DistanceCurve& curve, double threshold = 0.5);

}  // namespace shufflekit::closed_form
