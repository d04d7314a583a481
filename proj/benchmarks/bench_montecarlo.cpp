#include <benchmark/benchmark.h>

#include "shufflekit/montecarlo.hpp"

using namespace shufflekit;

static void BM_RunTrials(benchmark::State& state) {
  const mc::SimulationConfig cfg{PhysicalRiffle{}, static_cast<int>(state.range(0)), 1, 100'000, 7};
  for (auto _ : state) benchmark::DoNotOptimize(mc::run_trials(cfg, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}
BENCHMARK(BM_RunTrials)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ShuffleOnce52(benchmark::State& state) {
  auto rng = mc::make_engine(1, 0);
  Arrangement deck = Arrangement::identity(52);
  for (auto _ : state) {
    deck = mc::shuffle_once(deck, GsrRiffle{2}, rng);
    benchmark::DoNotOptimize(deck);
  }
}
BENCHMARK(BM_ShuffleOnce52);
