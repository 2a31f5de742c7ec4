#include <benchmark/benchmark.h>

#include <vector>

#include "noma_uav/link.hpp"
#include "noma_uav/matching.hpp"
#include "noma_uav/mobility.hpp"

using namespace noma_uav;

namespace {

struct Instance {
  ChannelSnapshot snap;
  PowerMatrix powers;
  PairEnergyTable energies;
  PreferenceLists prefs;
};

Instance make_instance(std::size_t k)
{
  Rng rng = make_stream(1, 0, StreamPurpose::mobility);
  std::vector<LinkGeometry> geo;
  std::vector<double> fading;
  for (std::size_t i = 0; i < k; ++i) {
    geo.push_back(geometry_at(uniform(rng, 0.1, 1.0), 0.5));
    fading.push_back(unit_exponential(rng));
  }
  Instance inst;
  inst.snap = snapshot(geo, fading, EnvironmentParams{});
  std::vector<double> targets;
  for (const ChannelRecord& r : inst.snap.uavs) {
    targets.push_back(target_rate(1.0, r.gain, 0.1));
  }
  PairwiseOptions opts;
  opts.ch_th = 0.0;
  inst.powers = optimize_pairwise(inst.snap, inst.snap.ranking, targets, opts);
  inst.energies = pair_energies(inst.powers, 0.1, 1.0);
  inst.prefs = build_preferences(inst.snap, inst.powers, inst.energies, 0.0, opts.p_th);
  return inst;
}

void BM_Match(benchmark::State& state)
{
  const Instance inst = make_instance(static_cast<std::size_t>(state.range(0)));
  MatchStats stats;
  for (auto _ : state) {
    stats = {};
    benchmark::DoNotOptimize(match(inst.prefs, inst.energies, &stats));
  }
  state.counters["proposals"] = static_cast<double>(stats.proposals);
}
BENCHMARK(BM_Match)->Arg(8)->Arg(20)->Arg(60)->Arg(200);

void BM_PowerMatrix(benchmark::State& state)
{
  const Instance inst = make_instance(static_cast<std::size_t>(state.range(0)));
  std::vector<double> targets;
  for (const ChannelRecord& r : inst.snap.uavs) {
    targets.push_back(target_rate(1.0, r.gain, 0.1));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_pairwise(inst.snap, inst.snap.ranking, targets, {}));
  }
}
BENCHMARK(BM_PowerMatrix)->Arg(20)->Arg(60);

} // namespace
