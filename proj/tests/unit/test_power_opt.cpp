#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "noma_uav/errors.hpp"
#include "noma_uav/link.hpp"
#include "noma_uav/power_opt.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace noma_uav;

namespace {

const BisectionConfig kCfg{};

using testing_support::snapshot_with_gains;

std::vector<double> targets_for(const ChannelSnapshot& s, double n0)
{
  return testing_support::full_power_targets(s, n0);
}

} // namespace

TEST(PowerOpt, WeakMinimumPowerMatchesClosedForm)
{
  const SearchResult r = min_power_weak(0.5, 1.0, 1.0, {0.0, 4.0}, kCfg);
  ASSERT_TRUE(r.feasible());
  EXPECT_NEAR(*r.power, static_cast<double>(oracle::inverse_power(1.0L, 0.5L, 0.0L, 1.0L)), 1e-3);
  EXPECT_NEAR(*r.power, 2.0, 1e-3);
  EXPECT_GE(weak_rate(*r.power, 0.5, 1.0), 1.0);
  EXPECT_LE(r.evaluations, kCfg.max_iters);
}

TEST(PowerOpt, ZeroTargetNeedsMinimumPower)
{
  const SearchResult r = min_power_weak(0.5, 0.0, 1.0, {0.0, 4.0}, kCfg);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(*r.power, 0.0);
  const SearchResult s = min_power_weak(0.5, 0.0, 1.0, {0.25, 4.0}, kCfg);
  EXPECT_EQ(*s.power, 0.25);
}

TEST(PowerOpt, UnreachableWeakTargetIsInfeasible)
{
  const SearchResult r = min_power_weak(0.01, 10.0, 1.0, {0.0, 1.0}, kCfg);
  EXPECT_FALSE(r.feasible());
  EXPECT_LT(weak_rate(1.0, 0.01, 1.0), 10.0);
}

TEST(PowerOpt, StrongMinimumPowerMatchesClosedForm)
{
  const SearchResult r = min_power_strong(1.0, 1.0, 1.0, 1.0, {0.0, 4.0}, kCfg);
  ASSERT_TRUE(r.feasible());
  EXPECT_NEAR(*r.power, static_cast<double>(oracle::inverse_power(1.0L, 1.0L, 1.0L, 1.0L)), 1e-3);
  EXPECT_NEAR(*r.power, 2.0, 1e-3);
}

TEST(PowerOpt, StrongWithoutInterferenceEqualsWeak)
{
  const SearchResult s = min_power_strong(0.3, 0.8, 0.0, 0.1, {0.0, 1.0}, kCfg);
  const SearchResult w = min_power_weak(0.3, 0.8, 0.1, {0.0, 1.0}, kCfg);
  ASSERT_TRUE(s.feasible());
  EXPECT_EQ(*s.power, *w.power);
}

TEST(PowerOpt, StrongInfeasibleUnderHeavyInterference)
{
  const SearchResult r = min_power_strong(1.0, 1.0, 10.0, 1.0, {0.0, 4.0}, kCfg);
  EXPECT_FALSE(r.feasible());
  EXPECT_LT(std::log2(1.0 + 4.0 / 11.0), 1.0);
  EXPECT_THROW(min_power_strong(1.0, 1.0, -1.0, 1.0, {0.0, 4.0}, kCfg), ContractError);
}

TEST(PowerOpt, EspaAgreesWithClosedForm)
{
  const double step = 1e-3;
  const EspaResult r = espa_oracle(1.0, 0.5, 1.0, 1.0, 1.0, {0.0, 4.0}, step);
  ASSERT_TRUE(r.feasible());
  const double pw = static_cast<double>(oracle::inverse_power(1.0L, 0.5L, 0.0L, 1.0L));
  EXPECT_GE(*r.p_weak, pw - 1e-12);
  EXPECT_LE(*r.p_weak, pw + step + 1e-12);
  const double ps =
      static_cast<double>(oracle::inverse_power(1.0L, 1.0L, *r.p_weak * 0.5L, 1.0L));
  EXPECT_GE(*r.p_strong, ps - 1e-12);
  EXPECT_LE(*r.p_strong, ps + step + 1e-12);
}

TEST(PowerOpt, EspaInfeasibleAndZeroTargetCases)
{
  EXPECT_FALSE(espa_oracle(1.0, 0.01, 1.0, 10.0, 1.0, {0.0, 1.0}, 1e-2).feasible());
  const EspaResult z = espa_oracle(1.0, 0.5, 0.0, 0.0, 1.0, {0.1, 1.0}, 1e-2);
  ASSERT_TRUE(z.feasible());
  EXPECT_EQ(*z.p_weak, 0.1);
  EXPECT_EQ(*z.p_strong, 0.1);
  EXPECT_THROW(espa_oracle(1.0, 0.5, 0.0, 0.0, 1.0, {0.0, 1.0}, 0.0), ContractError);
}

TEST(PowerOpt, FullMatrixForFourUavs)
{
  const ChannelSnapshot s = snapshot_with_gains({0.05, 0.9, 0.2, 0.6});
  const double n0 = 0.1;
  const auto targets = targets_for(s, n0);
  PairwiseOptions o;
  o.n0 = n0;
  o.ch_th = 0.1;
  const PowerMatrix m = optimize_pairwise(s, s.ranking, targets, o);
  EXPECT_EQ(m.weak_ids, (std::vector<UavId>{0, 2}));
  EXPECT_EQ(m.strong_ids, (std::vector<UavId>{3, 1}));
  ASSERT_EQ(m.entries.size(), 4u);
  for (const PowerEntry& e : m.entries) {
    ASSERT_TRUE(e.feasible) << e.weak << "," << e.strong;
    const PairRates r =
        sic_pair_rates(e.p_strong, s.gain(e.strong), e.p_weak, s.gain(e.weak), n0);
    EXPECT_GE(r.first, targets[e.strong]);
    // Either the rate is tight or the power-gap floor is what binds.
    if (e.p_strong > e.p_weak + o.p_th) {
      EXPECT_LE(r.first, targets[e.strong] + o.bisection.rate_tol);
    }
    EXPECT_GE(r.second, targets[e.weak]);
    EXPECT_LE(r.second, targets[e.weak] + o.bisection.rate_tol);
  }
}

TEST(PowerOpt, GainGapGateRemovesEntries)
{
  const ChannelSnapshot s = snapshot_with_gains({0.30, 0.35, 0.32, 0.9});
  const auto targets = targets_for(s, 0.1);
  PairwiseOptions o;
  o.ch_th = 0.1;
  const PowerMatrix m = optimize_pairwise(s, s.ranking, targets, o);
  // weak {0, 2}, strong {1, 3}; only pairs with UAV 3 clear the gap.
  EXPECT_EQ(m.find(0, 1), nullptr);
  EXPECT_EQ(m.find(2, 1), nullptr);
  EXPECT_NE(m.find(0, 3), nullptr);
  EXPECT_NE(m.find(2, 3), nullptr);

  o.ch_th = 0.0;
  EXPECT_EQ(optimize_pairwise(s, s.ranking, targets, o).entries.size(), 4u);
}

TEST(PowerOpt, OddOrShortRankingRejected)
{
  const ChannelSnapshot s = snapshot_with_gains({0.1, 0.2, 0.3});
  const auto targets = targets_for(s, 0.1);
  EXPECT_THROW(optimize_pairwise(s, s.ranking, targets, {}), ContractError);
  const std::vector<UavId> one{0};
  EXPECT_THROW(optimize_pairwise(s, one, targets, {}), ContractError);
  const std::vector<double> short_targets{1.0};
  const std::vector<UavId> two{0, 1};
  EXPECT_THROW(optimize_pairwise(s, two, short_targets, {}), ContractError);
}

TEST(PowerOpt, MethodsAgreeOnFeasibleEntries)
{
  const ChannelSnapshot s = snapshot_with_gains({0.05, 0.9, 0.2, 0.6});
  const auto targets = targets_for(s, 0.1);
  PairwiseOptions o;
  const PowerMatrix bis = optimize_pairwise(s, s.ranking, targets, o);
  o.method = PowerMethod::espa;
  const PowerMatrix esp = optimize_pairwise(s, s.ranking, targets, o);
  ASSERT_EQ(bis.entries.size(), esp.entries.size());
  for (std::size_t k = 0; k < bis.entries.size(); ++k) {
    const PowerEntry& a = bis.entries[k];
    const PowerEntry& b = esp.entries[k];
    ASSERT_EQ(a.feasible, b.feasible);
    if (a.feasible) {
      EXPECT_NEAR(a.p_weak, b.p_weak, 2e-3);
    }
  }
  EXPECT_GT(esp.evaluations(), 10 * bis.evaluations());
}

TEST(PowerOpt, FixedMethodUsesFullPowerWithGap)
{
  const ChannelSnapshot s = snapshot_with_gains({0.05, 0.9, 0.2, 0.6});
  const auto targets = targets_for(s, 0.1);
  PairwiseOptions o;
  o.method = PowerMethod::fixed;
  for (const PowerEntry& e : optimize_pairwise(s, s.ranking, targets, o).entries) {
    EXPECT_EQ(e.p_strong, 1.0);
    EXPECT_DOUBLE_EQ(e.p_weak, 0.9);
    const PairRates r = sic_pair_rates(e.p_strong, s.gain(e.strong), e.p_weak, s.gain(e.weak), 0.1);
    EXPECT_EQ(e.feasible, r.first >= targets[e.strong] && r.second >= targets[e.weak]);
  }
}

TEST(PowerOptProperty, FeasibilityIsMonotoneInPower)
{
  Rng rng = make_stream(21, 0, StreamPurpose::fading);
  for (int trial = 0; trial < 300; ++trial) {
    const double g = std::pow(10.0, uniform(rng, -3.0, 0.0));
    const double target = uniform(rng, 0.1, 2.0);
    const double n0 = 0.01;
    bool seen_feasible = false;
    for (double p = 0.0; p <= 1.0; p += 1e-3) {
      const bool ok = weak_rate(p, g, n0) >= target;
      ASSERT_FALSE(seen_feasible && !ok) << "feasibility lost at p=" << p;
      seen_feasible = seen_feasible || ok;
    }
  }
}

TEST(PowerOptProperty, BisectionMatchesEspaOnRandomInstances)
{
  Rng rng = make_stream(22, 0, StreamPurpose::fading);
  const double n0 = 0.01;
  const double step = 1e-3;
  const PowerBounds bounds{0.0, 1.0};
  int checked = 0;
  while (checked < 200) {
    double g1 = std::pow(10.0, uniform(rng, -3.0, 0.0));
    double g2 = std::pow(10.0, uniform(rng, -3.0, 0.0));
    const double gs = std::max(g1, g2);
    const double gw = std::min(g1, g2);
    const double ts = uniform(rng, 0.1, 2.0);
    const double tw = uniform(rng, 0.1, 2.0);
    const EspaResult espa = espa_oracle(gs, gw, ts, tw, n0, bounds, step);
    const SearchResult w = min_power_weak(gw, tw, n0, bounds, kCfg);
    if (!espa.feasible() || !w.feasible()) {
      continue;
    }
    // The grid keeps p_strong >= p_weak, so the bisection gets the same floor.
    const SearchResult s =
        min_power_strong(gs, ts, *espa.p_weak * gw, n0, {*espa.p_weak, bounds.max}, kCfg);
    ASSERT_TRUE(s.feasible());
    ASSERT_NEAR(*w.power, *espa.p_weak, step + 1e-3);
    ASSERT_NEAR(*s.power, *espa.p_strong, step + 1e-3);
    ASSERT_LE(w.evaluations, kCfg.max_iters);
    ASSERT_LE(s.evaluations, kCfg.max_iters);
    ++checked;
  }
}

TEST(PowerOptProperty, FeasibleEntriesKeepPowerOrderAndMeetTargets)
{
  Rng rng = make_stream(23, 0, StreamPurpose::fading);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 * (1 + static_cast<std::size_t>(uniform(rng, 0.0, 6.0)));
    std::vector<double> gains;
    for (std::size_t i = 0; i < k; ++i) {
      gains.push_back(std::pow(10.0, uniform(rng, -3.0, 0.0)));
    }
    const ChannelSnapshot s = snapshot_with_gains(gains);
    const double n0 = 0.01;
    const auto targets = targets_for(s, n0);
    for (PowerMethod method : {PowerMethod::bisect, PowerMethod::espa, PowerMethod::fixed}) {
      PairwiseOptions o;
      o.n0 = n0;
      o.ch_th = 0.01;
      o.method = method;
      o.espa_grid_step = 1e-2;
      for (const PowerEntry& e : optimize_pairwise(s, s.ranking, targets, o).entries) {
        ASSERT_GE(s.gain(e.strong) - s.gain(e.weak), o.ch_th);
        if (!e.feasible) {
          continue;
        }
        ASSERT_GT(e.p_strong, e.p_weak);
        ASSERT_GE(e.p_strong - e.p_weak, o.p_th - kPowerGapSlack);
        ASSERT_GE(e.p_weak, o.bounds.min);
        ASSERT_LE(e.p_strong, o.bounds.max);
        const PairRates r =
            sic_pair_rates(e.p_strong, s.gain(e.strong), e.p_weak, s.gain(e.weak), n0);
        ASSERT_GE(r.first, targets[e.strong]);
        ASSERT_GE(r.second, targets[e.weak]);
      }
    }
  }
}
