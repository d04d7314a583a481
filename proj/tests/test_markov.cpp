#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shufflekit/closed_form.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/markov.hpp"

using namespace shufflekit;

namespace {

std::vector<Rational> fractions(std::initializer_list<std::pair<long, long>> values) {
  std::vector<Rational> out;
  for (auto [num, den] : values) out.emplace_back(num, den);
  for (auto& q : out) q.canonicalize();
  return out;
}

std::vector<Rational> row_of(const TransitionMatrix& m, std::size_t r) {
  std::vector<Rational> out;
  for (std::size_t c = 0; c < m.dim(); ++c) out.push_back(m(r, c));
  return out;
}

}  // namespace

TEST_CASE("distribution construction") {
  CHECK_THROWS_AS(Distribution(3, std::vector<Rational>(5, Rational(1, 5))), InvalidArgument);
  CHECK_THROWS_AS(Distribution(2, fractions({{1, 1}, {1, 2}})), InvalidArgument);
  CHECK_THROWS_AS(Distribution(2, fractions({{3, 2}, {-1, 2}})), InvalidArgument);
  CHECK(Distribution::uniform(3)[4] == Rational(1, 6));
  CHECK(Distribution::point_mass(3)[0] == 1);
}

TEST_CASE("transition matrices") {
  SUBCASE("top-card n=3 identity row") {
    const auto m = transition_matrix(TopInAtRandom{}, 3);
    CHECK(row_of(m, 0) == fractions({{1, 3}, {0, 1}, {1, 3}, {1, 3}, {0, 1}, {0, 1}}));
  }
  SUBCASE("GSR n=3 keeps half the mass on the identity") {
    CHECK(transition_matrix(GsrRiffle{2}, 3)(0, 0) == Rational(1, 2));
  }
  SUBCASE("rows are stochastic and the walk is translation invariant") {
    std::mt19937_64 rng(11);
    const std::vector<ShuffleModel> models{TopInAtRandom{}, GsrRiffle{2}, GsrRiffle{3},
                                           PhysicalRiffle{}, NaiveUniform{}};
    for (const auto& model : models) {
      const auto m = transition_matrix(model, 4);
      REQUIRE(m.dim() == 24);
      for (std::size_t r = 0; r < m.dim(); ++r) {
        Rational sum = 0;
        for (std::size_t c = 0; c < m.dim(); ++c) sum += m(r, c);
        REQUIRE(sum == 1);
      }
      for (int trial = 0; trial < 200; ++trial) {
        const auto sigma = unrank(4, Rank{rng() % 24});
        const auto p = unrank(4, Rank{rng() % 24});
        REQUIRE(m(rank(sigma).value, rank(compose(sigma, p)).value) == m(0, rank(p).value));
      }
    }
  }
  SUBCASE("caps and errors") {
    CHECK_THROWS_AS(transition_matrix(TopInAtRandom{}, 7), ResourceLimit);
    CHECK_THROWS_AS(transition_matrix(TopInAtRandom{}, 0), InvalidArgument);
  }
}

TEST_CASE("matrix powers") {
  const auto top = transition_matrix(TopInAtRandom{}, 3);
  CHECK(matrix_power(top, 0) == TransitionMatrix::identity(3));
  CHECK(matrix_power(top, 1) == top);
  CHECK(row_of(matrix_power(top, 2), 0) ==
        fractions({{2, 9}, {1, 9}, {2, 9}, {2, 9}, {1, 9}, {1, 9}}));
  CHECK_THROWS_AS(matrix_power(top, -1), InvalidArgument);

  SUBCASE("squaring equals iterated multiplication") {
    const auto m = transition_matrix(GsrRiffle{2}, 4);
    TransitionMatrix iterated = TransitionMatrix::identity(4);
    for (int k = 1; k <= 5; ++k) {
      iterated = multiply(iterated, m);
      CHECK(matrix_power(m, k) == iterated);
    }
  }

  SUBCASE("two riffles are one 4-shuffle") {
    const auto sq = matrix_power(transition_matrix(GsrRiffle{2}, 3), 2);
    for (std::size_t c = 0; c < sq.dim(); ++c) {
      const int r = rising_sequences(unrank(3, Rank{c}));
      // C(4 + 3 - r, 3) / 4^3
      const long count = r == 1 ? 20 : r == 2 ? 10 : 4;
      CHECK(sq(0, c) * 64 == count);
    }
  }

  SUBCASE("identity row of M^k is the 2^k-shuffle law") {
    for (int n = 3; n <= 5; ++n) {
      const auto m = transition_matrix(GsrRiffle{2}, n);
      for (int k = 1; k <= 10; ++k) {
        const auto mk = matrix_power(m, k);
        for (std::size_t c = 0; c < mk.dim(); ++c) {
          const int r = rising_sequences(unrank(n, Rank{c}));
          REQUIRE(mk(0, c) == closed_form::riffle_k_probability(n, k, r));
        }
      }
    }
  }
}

TEST_CASE("evolve") {
  const auto top = transition_matrix(TopInAtRandom{}, 3);
  const auto start = Distribution::point_mass(3);
  CHECK(evolve(start, top, 0) == start);
  CHECK(evolve(start, top, 3).entries() ==
        fractions({{5, 27}, {4, 27}, {5, 27}, {5, 27}, {4, 27}, {4, 27}}));
  CHECK(evolve(start, top, 4) == matrix_power(top, 4).row(0));
  for (const ShuffleModel model : {ShuffleModel(TopInAtRandom{}), ShuffleModel(GsrRiffle{2}),
                                   ShuffleModel(PhysicalRiffle{}), ShuffleModel(NaiveUniform{})}) {
    const auto m = transition_matrix(model, 4);
    for (int k = 0; k <= 4; ++k) {
      CHECK(evolve(Distribution::uniform(4), m, k) == Distribution::uniform(4));
    }
  }
  CHECK_THROWS_AS(evolve(Distribution::point_mass(4), top, 1), InvalidArgument);
  CHECK_THROWS_AS(evolve(start, top, -1), InvalidArgument);
}

TEST_CASE("total variation") {
  CHECK(tv_distance(Distribution::point_mass(3), Distribution::uniform(3)) == Rational(5, 6));
  CHECK(tv_distance(Distribution::uniform(3), Distribution::uniform(3)) == 0);
  CHECK(tv_distance(transition_matrix(GsrRiffle{2}, 4).row(0), Distribution::uniform(4)) ==
        Rational(1, 2));
  CHECK_THROWS_AS(tv_distance(Distribution::uniform(3), Distribution::uniform(4)),
                  InvalidArgument);

  SUBCASE("half-sum equals the maximum over events") {
    // Brute force over all 2^6 subsets of S_3.
    const auto p = transition_matrix(TopInAtRandom{}, 3).row(0);
    const auto q = Distribution::uniform(3);
    Rational best = 0;
    for (int mask = 0; mask < 64; ++mask) {
      Rational diff = 0;
      for (int i = 0; i < 6; ++i) {
        if (mask & (1 << i)) diff += p[i] - q[i];
      }
      if (abs(diff) > best) best = abs(diff);
    }
    CHECK(best == tv_distance(p, q));
  }
}

TEST_CASE("exact distance curves") {
  const auto top3 = distance_curve_exact(TopInAtRandom{}, 3, 3);
  CHECK(top3.method == CurveMethod::kExact);
  CHECK(top3.at(0) == Rational(5, 6));
  CHECK(top3.at(1) == Rational(1, 2));
  CHECK(top3.at(2) == Rational(1, 6));
  CHECK(top3.at(3) == Rational(1, 18));
  CHECK_THROWS_AS(top3.at(4), InvalidArgument);

  const auto gsr3 = distance_curve_exact(GsrRiffle{2}, 3, 3);
  CHECK(gsr3.at(1) == Rational(1, 3));
  CHECK(gsr3.at(2) == Rational(7, 48));
  CHECK(gsr3.at(3) == Rational(13, 192));

  CHECK(distance_curve_exact(TopInAtRandom{}, 4, 1).at(1) == Rational(5, 6));
  CHECK(distance_curve_exact(TopInAtRandom{}, 4, 0).at(0) == Rational(23, 24));

  SUBCASE("agrees with the card-level oracle") {
    for (int n = 2; n <= 4; ++n) {
      const auto top = distance_curve_exact(TopInAtRandom{}, n, 5);
      const auto gsr = distance_curve_exact(GsrRiffle{2}, n, 5);
      for (int k = 0; k <= 5; ++k) {
        CHECK(top.at(k) == oracle::distance_after(oracle::top_step, n, k));
        CHECK(gsr.at(k) == oracle::distance_after(oracle::gsr_step, n, k));
      }
    }
  }

  SUBCASE("monotone for every stochastic model, convergent for the ergodic walks") {
    const std::vector<ShuffleModel> models{TopInAtRandom{}, GsrRiffle{2}, GsrRiffle{3},
                                           PhysicalRiffle{}, NaiveUniform{}};
    for (const auto& model : models) {
      for (int n = 2; n <= 5; ++n) {
        const auto curve = distance_curve_exact(model, n, 20);
        for (int k = 0; k < 20; ++k) REQUIRE(curve.at(k + 1) <= curve.at(k));
        // Physical riffle at small n wastes most hands on empty cuts and
        // mixes more slowly (d(20) ~ 7e-3 at n = 5).
        if (!model.is<PhysicalRiffle>()) CHECK(curve.at(20) < Rational(1, 1000));
      }
    }
  }
}
