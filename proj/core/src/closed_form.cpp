#include "shufflekit/closed_form.hpp"

#include <cmath>

#include "shufflekit/errors.hpp"

namespace shufflekit::closed_form {

namespace {

void require_deck(int n) {
  if (n < 1) throw InvalidArgument("deck size must be >= 1, got " + std::to_string(n));
}

BigInt power_of_two(unsigned long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, exponent);
  return out;
}

BigInt big_factorial(int n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace

const BigInt& EulerianTable::count(int r) const {
  if (r < 1 || r > n) {
    throw InvalidArgument("rising-sequence count " + std::to_string(r) + " outside 1.." +
                          std::to_string(n));
  }
  return counts[r - 1];
}

EulerianTable eulerian(int n) {
  require_deck(n);
  std::vector<BigInt> row{1};
  for (int m = 2; m <= n; ++m) {
    std::vector<BigInt> next(m);
    for (int r = 1; r <= m; ++r) {
      BigInt value = 0;
      if (r <= m - 1) value += r * row[r - 1];
      if (r >= 2) value += (m - r + 1) * row[r - 2];
      next[r - 1] = std::move(value);
    }
    row = std::move(next);
  }
  return EulerianTable{n, std::move(row)};
}

Rational a_shuffle_probability(int n, const BigInt& packets, int r) {
  require_deck(n);
  if (r < 1 || r > n) {
    throw InvalidArgument("rising-sequence count " + std::to_string(r) + " outside 1.." +
                          std::to_string(n));
  }
  if (packets < 1) throw InvalidArgument("packet count must be >= 1");
  BigInt denominator;
  mpz_pow_ui(denominator.get_mpz_t(), packets.get_mpz_t(), static_cast<unsigned long>(n));
  Rational p(binomial(packets + n - r, static_cast<unsigned long>(n)), denominator);
  p.canonicalize();
  return p;
}

Rational riffle_k_probability(int n, int k, int r) {
  if (k < 0) throw InvalidArgument("hand count must be >= 0, got " + std::to_string(k));
  return a_shuffle_probability(n, power_of_two(static_cast<unsigned long>(k)), r);
}

Distribution riffle_k_law(int n, int k) {
  require_deck(n);
  if (n > kMaxDenseLawN) {
    throw ResourceLimit("dense riffle law for n=" + std::to_string(n) +
                        " exceeds the limit n <= " + std::to_string(kMaxDenseLawN));
  }
  std::vector<Rational> by_r(n + 1);
  for (int r = 1; r <= n; ++r) by_r[r] = riffle_k_probability(n, k, r);
  std::vector<Rational> entries(factorial(n));
  for (std::uint64_t i = 0; i < entries.size(); ++i) {
    entries[i] = by_r[rising_sequences(unrank(n, Rank{i}))];
  }
  return Distribution(n, std::move(entries));
}

DistanceCurve riffle_distance_closed_form(int n, int k_max) {
  require_deck(n);
  if (k_max < 0) throw InvalidArgument("k_max must be >= 0");
  const EulerianTable table = eulerian(n);
  const Rational uniform(BigInt(1), big_factorial(n));
  DistanceCurve curve{n, "gsr(a=2)", CurveMethod::kClosedForm, {}};
  curve.points.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    Rational sum = 0;
    for (int r = 1; r <= n; ++r) {
      sum += table.count(r) * abs(riffle_k_probability(n, k, r) - uniform);
    }
    curve.points.push_back({k, sum / 2});
  }
  return curve;
}

Rational coupling_bound(BoundParams p) {
  require_deck(p.n);
  if (p.k < 0) throw InvalidArgument("hand count must be >= 0, got " + std::to_string(p.k));
  const BigInt scale = power_of_two(static_cast<unsigned long>(p.k));
  if (scale <= p.n - 1) return 1;
  Rational product = 1;
  for (int j = 1; j <= p.n - 1; ++j) {
    Rational factor(scale - j, scale);
    factor.canonicalize();
    product *= factor;
  }
  return 1 - product;
}

DistanceCurve coupling_bound_curve(int n, int k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be >= 0");
  DistanceCurve curve{n, "gsr(a=2)", CurveMethod::kBound, {}};
  for (int k = 0; k <= k_max; ++k) curve.points.push_back({k, coupling_bound({n, k})});
  return curve;
}

CutoffKind parse_cutoff_kind(std::string_view name) {
  if (name == "riffle") return CutoffKind::kRiffle;
  if (name == "top") return CutoffKind::kTopCard;
  throw InvalidArgument("unknown cutoff kind '" + std::string(name) + "'");
}

double cutoff_estimate(CutoffKind kind, int n) {
  require_deck(n);
  const double lg = std::log2(static_cast<double>(n));
  switch (kind) {
    case CutoffKind::kRiffle: return 1.5 * lg;
    case CutoffKind::kTopCard: return n * lg;
  }
  throw InvalidArgument("unknown cutoff kind");
}

std::optional<int> cutoff_detect(const DistanceCurve& curve, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidArgument("cutoff threshold must lie in (0, 1)");
  }
  if (curve.points.empty()) throw InvalidArgument("cutoff_detect on an empty curve");
  const Rational limit(threshold);  // exact binary value of the double
  for (const auto& point : curve.points) {
    if (point.d <= limit) return point.k;
  }
  return std::nullopt;
}

}  // namespace shufflekit::closed_form
