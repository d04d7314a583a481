#include <benchmark/benchmark.h>

#include "shufflekit/markov.hpp"

using namespace shufflekit;

static void BM_TransitionMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transition_matrix(GsrRiffle{2}, n));
}
BENCHMARK(BM_TransitionMatrix)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_MatrixPower(benchmark::State& state) {
  const auto m = transition_matrix(TopInAtRandom{}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_power(m, 8));
}
BENCHMARK(BM_MatrixPower)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

// Vector evolution is what distance curves use.
static void BM_ExactCurve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(distance_curve_exact(GsrRiffle{2}, n, 10));
}
BENCHMARK(BM_ExactCurve)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
