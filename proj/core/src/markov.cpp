#include "shufflekit/markov.hpp"

#include "shufflekit/errors.hpp"

namespace shufflekit {

namespace {

void require_same_n(int a, int b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": deck sizes differ (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Distribution::Distribution(int n, std::vector<Rational> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n < 1 || n > kMaxRankableN) {
    throw InvalidArgument("distribution deck size out of range: " + std::to_string(n));
  }
  if (entries_.size() != factorial(n)) {
    throw InvalidArgument("distribution for n=" + std::to_string(n) + " needs " +
                          std::to_string(factorial(n)) + " entries, got " +
                          std::to_string(entries_.size()));
  }
  Rational sum = 0;
  for (const auto& e : entries_) {
    if (e < 0) throw InvalidArgument("distribution has a negative entry");
    sum += e;
  }
  if (sum != 1) {
    throw InvalidArgument("distribution sums to " + to_rational_string(sum) + ", not 1");
  }
}

Distribution Distribution::point_mass(int n, Rank at) {
  std::vector<Rational> entries(factorial(n));
  if (at.value >= entries.size()) throw InvalidArgument("point mass rank out of range");
  entries[at.value] = 1;
  return Distribution(n, std::move(entries), Unchecked{});
}

Distribution Distribution::uniform(int n) {
  const std::uint64_t size = factorial(n);
  return Distribution(n, std::vector<Rational>(size, Rational(1, size)), Unchecked{});
}

TransitionMatrix TransitionMatrix::identity(int n) {
  TransitionMatrix m(n, factorial(n));
  for (std::size_t i = 0; i < m.dim_; ++i) m.at(i, i) = 1;
  return m;
}

Distribution TransitionMatrix::row(std::size_t row) const {
  if (row >= dim_) throw InvalidArgument("matrix row out of range");
  auto first = cells_.begin() + static_cast<std::ptrdiff_t>(row * dim_);
  return Distribution(n_, std::vector<Rational>(first, first + static_cast<std::ptrdiff_t>(dim_)));
}

StepDistribution step_law(const ShuffleModel& model, int n, const DeckCap& cap) {
  if (model.is<TopInAtRandom>() || model.is<GsrRiffle>() || model.is<NaiveUniform>()) {
    return single_shuffle_distribution(model, n, cap);
  }
  return brute_force_distribution(model, n);
}

TransitionMatrix transition_matrix_from_step(const StepDistribution& step, const DeckCap& cap) {
  const int n = step.n;
  const auto arrangements = enumerate(n, cap);
  std::vector<std::pair<Arrangement, Rational>> moves;
  moves.reserve(step.probs.size());
  for (const auto& [r, p] : step.probs) moves.emplace_back(unrank(n, r), p);

  TransitionMatrix m(n, arrangements.size());
  for (std::size_t source = 0; source < arrangements.size(); ++source) {
    for (const auto& [move, p] : moves) {
      m.at(source, rank(compose(arrangements[source], move)).value) += p;
    }
  }
  return m;
}

TransitionMatrix transition_matrix(const ShuffleModel& model, int n, const DeckCap& cap) {
  if (n < 1) throw InvalidArgument("deck size must be >= 1, got " + std::to_string(n));
  cap.check(n, "transition matrix");
  return transition_matrix_from_step(step_law(model, n, cap), cap);
}

TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b) {
  require_same_n(a.n(), b.n(), "matrix product");
  const std::size_t dim = a.dim();
  TransitionMatrix out(a.n(), dim);
  Rational term;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Rational& lhs = a(i, j);
      if (lhs == 0) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        const Rational& rhs = b(j, c);
        if (rhs == 0) continue;
        term = lhs * rhs;
        out.at(i, c) += term;
      }
    }
  }
  return out;
}

TransitionMatrix matrix_power(const TransitionMatrix& m, int k) {
  if (k < 0) throw InvalidArgument("matrix power must be >= 0, got " + std::to_string(k));
  TransitionMatrix result = TransitionMatrix::identity(m.n());
  TransitionMatrix base = m;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : multiply(result, base);
      first = false;
    }
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

Distribution evolve(const Distribution& d, const TransitionMatrix& m, int k) {
  require_same_n(d.n(), m.n(), "evolve");
  if (k < 0) throw InvalidArgument("hand count must be >= 0, got " + std::to_string(k));
  const std::size_t dim = m.dim();
  std::vector<Rational> current = d.entries();
  std::vector<Rational> next(dim);
  Rational term;
  for (int step = 0; step < k; ++step) {
    for (auto& e : next) e = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (current[i] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        const Rational& p = m(i, j);
        if (p == 0) continue;
        term = current[i] * p;
        next[j] += term;
      }
    }
    current.swap(next);
  }
  return Distribution(d.n(), std::move(current), Distribution::Unchecked{});
}

Rational tv_distance(const Distribution& p, const Distribution& q) {
  require_same_n(p.n(), q.n(), "tv_distance");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += abs(p[i] - q[i]);
  return sum / 2;
}

std::string to_string(CurveMethod method) {
  switch (method) {
    case CurveMethod::kExact: return "exact";
    case CurveMethod::kClosedForm: return "closed-form";
    case CurveMethod::kBound: return "bound";
    case CurveMethod::kEmpirical: return "empirical";
  }
  return "unknown";
}

const Rational& DistanceCurve::at(int k) const {
  for (const auto& point : points) {
    if (point.k == k) return point.d;
  }
  throw InvalidArgument("curve has no point at k=" + std::to_string(k));
}

DistanceCurve distance_curve_exact(const ShuffleModel& model, int n, int k_max,
                                   const DeckCap& cap) {
  if (k_max < 0) throw InvalidArgument("k_max must be >= 0");
  const TransitionMatrix m = transition_matrix(model, n, cap);
  const Distribution uniform = Distribution::uniform(n);
  DistanceCurve curve{n, model.name(), CurveMethod::kExact, {}};
  curve.points.reserve(k_max + 1);
  Distribution current = Distribution::point_mass(n);
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) current = evolve(current, m, 1);
    curve.points.push_back({k, tv_distance(current, uniform)});
  }
  return curve;
}

}  // namespace shufflekit
