#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "noma_uav/errors.hpp"
#include "noma_uav/mobility.hpp"

using namespace noma_uav;

namespace {

Rng stream(std::uint64_t seed = 7) { return make_stream(seed, 0, StreamPurpose::mobility); }

} // namespace

TEST(Mobility, SampledWaypointLiesInAnnulus)
{
  Rng rng = stream();
  const CellGeometry cell{};
  for (int i = 0; i < 10'000; ++i) {
    const double r = norm(sample_waypoint(rng, cell) - cell.bs_xy);
    ASSERT_GE(r, 0.1);
    ASSERT_LE(r, 1.0);
  }
}

TEST(Mobility, UniformDiskMeanRadiusIsTwoThirds)
{
  // Uniform on a unit disk: density 2r on [0, 1], so E[r] = 2/3.
  Rng rng = stream(11);
  CellGeometry cell{};
  cell.min_horizontal = 0.0;
  constexpr int n = 100'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += norm(sample_waypoint(rng, cell));
  }
  EXPECT_NEAR(sum / n, 2.0 / 3.0, 0.01);
}

TEST(Mobility, EmptyAnnulusIsAConfigurationError)
{
  Rng rng = stream();
  CellGeometry cell{};
  cell.min_horizontal = cell.radius;
  EXPECT_THROW(sample_waypoint(rng, cell), ConfigError);
  EXPECT_THROW(cell.validate(), ConfigError);
}

TEST(Mobility, AdvanceMovesStraightTowardWaypoint)
{
  Rng rng = stream();
  UavKinematics k;
  k.position = {0.0, 0.0};
  k.waypoint = {1.0, 0.0};
  k.speed = 0.1;
  const UavKinematics next = advance(k, 1.0, rng, CellGeometry{}, SpeedRange{});
  EXPECT_DOUBLE_EQ(next.position.x, 0.1);
  EXPECT_DOUBLE_EQ(next.position.y, 0.0);
  EXPECT_EQ(next.waypoint, k.waypoint);
  EXPECT_EQ(next.speed, k.speed);
}

TEST(Mobility, ArrivalSpendsResidualTowardFreshWaypoint)
{
  Rng rng = stream(3);
  UavKinematics k;
  k.position = {0.0, 0.0};
  k.waypoint = {0.05, 0.0};
  k.speed = 0.1;
  const SpeedRange speeds{};
  const UavKinematics next = advance(k, 1.0, rng, CellGeometry{}, speeds);
  EXPECT_NE(next.waypoint, k.waypoint);
  EXPECT_GE(next.speed, speeds.min);
  EXPECT_LE(next.speed, speeds.max);
  // The fresh waypoint is at least 0.05 away from (0.05, 0) here (it lies in the
  // annulus), so the whole residual is spent along one straight segment.
  EXPECT_NEAR(norm(next.position - Vec2{0.05, 0.0}), 0.05, 1e-12);
}

TEST(Mobility, NonPositiveStepIsRejected)
{
  Rng rng = stream();
  UavKinematics k = spawn_uav(0, rng, CellGeometry{}, SpeedRange{});
  EXPECT_THROW(advance(k, 0.0, rng, CellGeometry{}, SpeedRange{}), ContractError);
  EXPECT_THROW(advance(k, -1.0, rng, CellGeometry{}, SpeedRange{}), ContractError);
}

TEST(Mobility, GeometryExamples)
{
  const LinkGeometry a = geometry_at(3.0, 4.0);
  EXPECT_DOUBLE_EQ(a.slant, 5.0);
  EXPECT_NEAR(a.elevation_deg, std::asin(0.8) * 180.0 / std::numbers::pi, 1e-12);
  EXPECT_NEAR(a.elevation_deg, 53.13, 0.005);

  const LinkGeometry b = geometry_at(0.0, 1.0);
  EXPECT_DOUBLE_EQ(b.slant, 1.0);
  EXPECT_DOUBLE_EQ(b.elevation_deg, 90.0);

  const LinkGeometry c = geometry_at(1.0, 1.0);
  EXPECT_DOUBLE_EQ(c.slant, std::sqrt(2.0));
  EXPECT_NEAR(c.elevation_deg, 45.0, 1e-12);
}

TEST(Mobility, InvalidSpeedRangeRejected)
{
  EXPECT_THROW((SpeedRange{0.0, 0.1}.validate()), ConfigError);
  EXPECT_THROW((SpeedRange{0.2, 0.1}.validate()), ConfigError);
  EXPECT_NO_THROW((SpeedRange{0.1, 0.1}.validate()));
}

TEST(MobilityProperty, TrajectoriesStayInAnnulusWithBoundedElevation)
{
  CellGeometry cell{};
  cell.bs_xy = {0.3, -0.2};
  const SpeedRange speeds{0.01, 0.2};
  const double theta_floor =
      std::asin(cell.altitude / std::hypot(cell.radius, cell.altitude)) * 180.0 / std::numbers::pi;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_stream(seed, 1, StreamPurpose::mobility);
    UavKinematics k = spawn_uav(1, rng, cell, speeds);
    for (int t = 0; t < 2000; ++t) {
      const LinkGeometry g = geometry(k, cell);
      ASSERT_GE(g.horizontal, cell.min_horizontal - 1e-12);
      ASSERT_LE(g.horizontal, cell.radius + 1e-12);
      ASSERT_GT(g.elevation_deg, theta_floor - 1e-9);
      ASSERT_LE(g.elevation_deg, 90.0);
      ASSERT_LE(norm(k.waypoint - cell.bs_xy), cell.radius);
      ASSERT_GE(k.speed, speeds.min);
      ASSERT_LE(k.speed, speeds.max);
      k = advance(k, 1.0, rng, cell, speeds);
    }
  }
}

TEST(MobilityProperty, AdvanceIsDeterministicGivenRngState)
{
  Rng a = stream(99);
  Rng b = stream(99);
  UavKinematics ka = spawn_uav(0, a, CellGeometry{}, SpeedRange{});
  UavKinematics kb = spawn_uav(0, b, CellGeometry{}, SpeedRange{});
  for (int t = 0; t < 1000; ++t) {
    ka = advance(ka, 1.0, a, CellGeometry{}, SpeedRange{0.01, 0.3});
    kb = advance(kb, 1.0, b, CellGeometry{}, SpeedRange{0.01, 0.3});
    ASSERT_EQ(ka.position, kb.position);
    ASSERT_EQ(ka.waypoint, kb.waypoint);
    ASSERT_EQ(ka.speed, kb.speed);
  }
}

TEST(MobilityProperty, SlantAtLeastAltitudeWithEqualityOnlyOverhead)
{
  Rng rng = stream(5);
  for (int i = 0; i < 10'000; ++i) {
    const double d = uniform(rng, 0.0, 2.0);
    const double h = uniform(rng, 0.01, 2.0);
    const LinkGeometry g = geometry_at(d, h);
    ASSERT_GE(g.slant, h);
    if (d > 0.0) {
      ASSERT_GT(g.slant, h) << "D=" << d << " H=" << h;
    }
  }
  EXPECT_EQ(geometry_at(0.0, 0.7).slant, 0.7);
}
