#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "shufflekit/permutation.hpp"
#include "shufflekit/rational.hpp"
#include "shufflekit/shuffle_models.hpp"

namespace shufflekit {

class TransitionMatrix;

/// Dense probability vector over S_n, indexed by lexicographic rank.
class Distribution {
 public:
  /// Validates size n!, non-negative entries summing exactly to 1.
  Distribution(int n, std::vector<Rational> entries);

  static Distribution point_mass(int n, Rank at = Rank{0});
  static Distribution uniform(int n);

  int n() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  const Rational& operator[](std::size_t rank) const { return entries_[rank]; }
  const std::vector<Rational>& entries() const { return entries_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  struct Unchecked {};
  Distribution(int n, std::vector<Rational> entries, Unchecked)
      : n_(n), entries_(std::move(entries)) {}

  int n_;
  std::vector<Rational> entries_;

  friend Distribution evolve(const Distribution&, const TransitionMatrix&, int);
};

/// n!×n! row-stochastic matrix; row = source rank, column = target rank.
class TransitionMatrix {
 public:
  static TransitionMatrix identity(int n);

  int n() const { return n_; }
  std::size_t dim() const { return dim_; }

  const Rational& operator()(std::size_t row, std::size_t col) const {
    return cells_[row * dim_ + col];
  }

  /// Row `row` as a Distribution.
  Distribution row(std::size_t row) const;

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  TransitionMatrix(int n, std::size_t dim) : n_(n), dim_(dim), cells_(dim * dim) {}

  Rational& at(std::size_t row, std::size_t col) { return cells_[row * dim_ + col]; }

  int n_;
  std::size_t dim_;
  std::vector<Rational> cells_;

  friend TransitionMatrix transition_matrix_from_step(const StepDistribution&, const DeckCap&);
  friend TransitionMatrix multiply(const TransitionMatrix&, const TransitionMatrix&);
};

/// Exact one-step law for any model: closed form where one exists
/// (top, GSR, naive), brute-force enumeration otherwise.
StepDistribution step_law(const ShuffleModel& model, int n, const DeckCap& cap = {});

/// Random-walk matrix M[σ][σ∘p] = Q(p) built from the identity row Q.
TransitionMatrix transition_matrix_from_step(const StepDistribution& step,
                                             const DeckCap& cap = {});

TransitionMatrix transition_matrix(const ShuffleModel& model, int n, const DeckCap& cap = {});

TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b);

/// Exact M^k by repeated squaring; M^0 is the identity.
TransitionMatrix matrix_power(const TransitionMatrix& m, int k);

/// d · M^k as a row vector.
Distribution evolve(const Distribution& d, const TransitionMatrix& m, int k);

/// ½ Σ |p(π) − q(π)|.
Rational tv_distance(const Distribution& p, const Distribution& q);

enum class CurveMethod { kExact, kClosedForm, kBound, kEmpirical };

std::string to_string(CurveMethod method);

struct CurvePoint {
  int k = 0;
  Rational d;
};

/// Distances d(k) to uniformity, with where they came from.
struct DistanceCurve {
  int n = 0;
  std::string model;
  CurveMethod method = CurveMethod::kExact;
  std::vector<CurvePoint> points;

  /// d(k); throws InvalidArgument when k is not on the curve.
  const Rational& at(int k) const;
};

/// d(k) = ||δ_id · M^k − U|| for k = 0..k_max.
DistanceCurve distance_curve_exact(const ShuffleModel& model, int n, int k_max,
                                   const DeckCap& cap = {});

}  // namespace shufflekit
