#include <benchmark/benchmark.h>

#include "noma_uav/power_opt.hpp"

using namespace noma_uav;

namespace {

// A mid-range pair at 10 dB transmit SNR.
constexpr double kGs = 0.4;
constexpr double kGw = 0.2;
constexpr double kN0 = 0.1;
constexpr double kTs = 1.2;
constexpr double kTw = 0.6;

void BM_BisectionPair(benchmark::State& state)
{
  const BisectionConfig cfg{};
  std::size_t evaluations = 0;
  for (auto _ : state) {
    const SearchResult w = min_power_weak(kGw, kTw, kN0, {0.0, 1.0}, cfg);
    const SearchResult s =
        min_power_strong(kGs, kTs, w.power.value_or(0.0) * kGw, kN0, {0.0, 1.0}, cfg);
    benchmark::DoNotOptimize(s.power);
    evaluations = static_cast<std::size_t>(w.evaluations + s.evaluations);
  }
  state.counters["evaluations"] = static_cast<double>(evaluations);
}
BENCHMARK(BM_BisectionPair);

void BM_EspaPair(benchmark::State& state)
{
  const double step = 1.0 / static_cast<double>(state.range(0));
  std::size_t evaluations = 0;
  for (auto _ : state) {
    const EspaResult r = espa_oracle(kGs, kGw, kTs, kTw, kN0, {0.0, 1.0}, step);
    benchmark::DoNotOptimize(r.p_strong);
    evaluations = r.evaluations;
  }
  state.counters["evaluations"] = static_cast<double>(evaluations);
}
BENCHMARK(BM_EspaPair)->Arg(100)->Arg(1000);

} // namespace
