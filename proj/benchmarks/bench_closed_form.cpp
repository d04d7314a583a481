#include <benchmark/benchmark.h>

#include "shufflekit/closed_form.hpp"

using namespace shufflekit;

static void BM_RiffleCurve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(closed_form::riffle_distance_closed_form(n, 20));
}
BENCHMARK(BM_RiffleCurve)->Arg(10)->Arg(52)->Arg(104)->Unit(benchmark::kMillisecond);

static void BM_Eulerian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(closed_form::eulerian(n));
}
BENCHMARK(BM_Eulerian)->Arg(52)->Arg(200);

static void BM_CouplingBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(closed_form::coupling_bound_curve(52, 20));
}
BENCHMARK(BM_CouplingBound);
