#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "noma_uav/errors.hpp"
#include "noma_uav/link.hpp"
#include "noma_uav/random.hpp"

using namespace noma_uav;

TEST(Link, WeakRateExamples)
{
  EXPECT_DOUBLE_EQ(weak_rate(1.0, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(weak_rate(3.0, 1.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(weak_rate(0.0, 0.4, 0.1), 0.0);
}

TEST(Link, StrongRateExamples)
{
  // signal 3, interference 1, n0 1
  EXPECT_NEAR(strong_rate(3.0, 1.0, 2.0, 0.5, 1.0), std::log2(2.5), 1e-15);
  EXPECT_NEAR(strong_rate(3.0, 1.0, 2.0, 0.5, 1.0), 1.3219, 1e-4);
  EXPECT_DOUBLE_EQ(strong_rate(0.0, 1.0, 2.0, 0.5, 1.0), 0.0);
}

TEST(Link, StrongRateRejectsRoleViolation)
{
  EXPECT_THROW(strong_rate(1.0, 0.5, 1.0, 0.5, 1.0), ContractError);
  EXPECT_THROW(strong_rate(1.0, 0.4, 1.0, 0.5, 1.0), ContractError);
}

TEST(Link, TargetRateExamples)
{
  EXPECT_DOUBLE_EQ(target_rate(3.0, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(target_rate(1.0, 15.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(target_rate(0.0, 1.0, 1.0), 0.0);
}

TEST(Link, StepEnergyExamples)
{
  EXPECT_DOUBLE_EQ(step_energy(2.0, 1.0, 1.0), 3.0);
  double total = 0.0;
  for (int t = 0; t < 3; ++t) {
    total += step_energy(2.0, 1.0, 1.0);
  }
  EXPECT_DOUBLE_EQ(total, 9.0);
  EXPECT_DOUBLE_EQ(step_energy(0.0, 0.0, 1.0), 0.0);
  EXPECT_THROW(step_energy(1.0, 1.0, 0.0), ContractError);
}

TEST(Link, EnergyEfficiencyExamples)
{
  const std::vector<double> r1{1.0};
  const std::vector<double> e1{2.0};
  EXPECT_DOUBLE_EQ(energy_efficiency(r1, e1), 0.5);

  const std::vector<double> r2{1.0, 2.0};
  const std::vector<double> e2{2.0, 4.0};
  EXPECT_DOUBLE_EQ(energy_efficiency(r2, e2), 1.0);

  const std::vector<double> e2x{4.0, 8.0};
  EXPECT_DOUBLE_EQ(energy_efficiency(r2, e2x), 0.5);

  const std::vector<double> zero{0.0};
  EXPECT_THROW(energy_efficiency(r1, zero), DomainError);
  EXPECT_THROW(energy_efficiency(r2, e1), ContractError);
}

TEST(Link, SatisfactionExamples)
{
  const std::vector<double> rates{1.0, 0.9};
  const std::vector<double> targets{0.9, 1.0};
  const Satisfaction s = satisfaction(rates, targets);
  EXPECT_EQ(s.kappa, (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(s.count, 1u);

  const std::vector<double> all(20, 1.0);
  EXPECT_EQ(satisfaction(all, all).count, 20u);
}

TEST(Link, PowerProfileValidation)
{
  EXPECT_NO_THROW(PowerProfile{}.validate());
  EXPECT_THROW((PowerProfile{-0.1, 1.0, 0.1, 0.1}.validate()), ConfigError);
  EXPECT_THROW((PowerProfile{1.0, 1.0, 0.1, 0.1}.validate()), ConfigError);
  EXPECT_THROW((PowerProfile{0.0, 1.0, 0.0, 0.1}.validate()), ConfigError);
  EXPECT_THROW((PowerProfile{0.0, 1.0, 0.1, -1.0}.validate()), ConfigError);
}

TEST(LinkProperty, RatesMonotoneInPowers)
{
  Rng rng = make_stream(17, 0, StreamPurpose::fading);
  for (int trial = 0; trial < 2000; ++trial) {
    const double n0 = uniform(rng, 0.01, 1.0);
    const double gj = uniform(rng, 1e-3, 1.0);
    const double gi = gj + uniform(rng, 1e-3, 1.0);
    const double p = uniform(rng, 0.0, 1.0);
    const double dp = uniform(rng, 1e-6, 0.5);
    const double pj = uniform(rng, 0.0, 1.0);
    ASSERT_GT(weak_rate(p + dp, gj, n0), weak_rate(p, gj, n0));
    ASSERT_GT(strong_rate(p + dp, gi, pj, gj, n0), strong_rate(p, gi, pj, gj, n0));
    if (p > 0.0) {
      ASSERT_LT(strong_rate(p, gi, pj + dp, gj, n0), strong_rate(p, gi, pj, gj, n0));
    }
  }
}

TEST(LinkProperty, StrongRateWithoutInterferenceIsWeakRate)
{
  Rng rng = make_stream(18, 0, StreamPurpose::fading);
  for (int trial = 0; trial < 2000; ++trial) {
    const double n0 = uniform(rng, 0.01, 1.0);
    const double g = uniform(rng, 1e-3, 1.0);
    const double p = uniform(rng, 0.0, 1.0);
    ASSERT_EQ(strong_rate(p, g, 0.0, g / 2.0, n0), weak_rate(p, g, n0));
  }
}

TEST(LinkProperty, ConstantPowerEnergyIsLinear)
{
  for (int steps : {1, 7, 300}) {
    for (double dt : {0.5, 1.0, 2.0}) {
      double sum = 0.0;
      for (int t = 0; t < steps; ++t) {
        sum += step_energy(0.3, 0.1, dt);
      }
      EXPECT_NEAR(sum, steps * (0.3 + 0.1) * dt, 1e-9 * steps);
    }
  }
}

TEST(LinkProperty, SatisfactionCountBoundedByPopulation)
{
  Rng rng = make_stream(19, 0, StreamPurpose::fading);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 40.0));
    std::vector<double> r(k);
    std::vector<double> t(k);
    for (std::size_t i = 0; i < k; ++i) {
      r[i] = uniform(rng, 0.0, 2.0);
      t[i] = uniform(rng, 0.0, 2.0);
    }
    const Satisfaction s = satisfaction(r, t);
    ASSERT_LE(s.count, k);
    for (std::size_t i = 0; i < k; ++i) {
      ASSERT_EQ(s.kappa[i] == 1, r[i] >= t[i]);
    }
  }
}
