#include <benchmark/benchmark.h>

#include "noma_uav/engine.hpp"

using namespace noma_uav;

namespace {

void BM_EngineStep(benchmark::State& state)
{
  ScenarioConfig cfg;
  cfg.k_total = static_cast<std::size_t>(state.range(0));
  cfg.scheme = static_cast<Scheme>(state.range(1));
  Simulation sim(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim.step());
  }
}
BENCHMARK(BM_EngineStep)
    ->ArgsProduct({{20, 100}, {static_cast<long>(Scheme::proposed), static_cast<long>(Scheme::greedy)}});

void BM_FullRun(benchmark::State& state)
{
  ScenarioConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(cfg).summary);
  }
}
BENCHMARK(BM_FullRun)->Unit(benchmark::kMillisecond);

} // namespace
