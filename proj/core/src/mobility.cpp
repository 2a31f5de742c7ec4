#include "noma_uav/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noma_uav/errors.hpp"

namespace noma_uav {

namespace {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Distance from point p to the closed segment [a, b].
double distance_to_segment(Vec2 p, Vec2 a, Vec2 b)
{
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) {
    return norm(p - a);
  }
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + s * ab));
}

template <typename Accept>
Vec2 rejection_sample(Rng& rng, const CellGeometry& cell, Accept accept)
{
  for (int attempt = 0; attempt < kMaxWaypointAttempts; ++attempt) {
    const Vec2 offset{uniform(rng, -cell.radius, cell.radius), uniform(rng, -cell.radius, cell.radius)};
    const double r = norm(offset);
    if (r > cell.radius || r < cell.min_horizontal) {
      continue;
    }
    const Vec2 p = cell.bs_xy + offset;
    if (accept(p)) {
      return p;
    }
  }
  throw ConfigError("waypoint sampling: no admissible point after " +
                    std::to_string(kMaxWaypointAttempts) + " attempts (check radius/min_horizontal)");
}

} // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

void CellGeometry::validate() const
{
  if (!(min_horizontal >= 0.0)) {
    throw ConfigError("cell: min_horizontal must be >= 0");
  }
  if (!(radius > min_horizontal)) {
    throw ConfigError("cell: radius must exceed min_horizontal");
  }
  if (!(altitude > 0.0)) {
    throw ConfigError("cell: altitude must be > 0");
  }
}

void SpeedRange::validate() const
{
  if (!(min > 0.0) || !(max >= min)) {
    throw ConfigError("speed range: need 0 < speed_min <= speed_max");
  }
}

Vec2 sample_waypoint(Rng& rng, const CellGeometry& cell)
{
  return rejection_sample(rng, cell, [](Vec2) { return true; });
}

Vec2 sample_waypoint_from(Rng& rng, const CellGeometry& cell, Vec2 from)
{
  // Starting inside the keep-out disk (only possible for a hand-placed UAV) every
  // segment fails the test, so fall back to the plain draw.
  if (cell.min_horizontal == 0.0 || norm(from - cell.bs_xy) < cell.min_horizontal) {
    return sample_waypoint(rng, cell);
  }
  return rejection_sample(rng, cell, [&](Vec2 p) {
    return distance_to_segment(cell.bs_xy, from, p) >= cell.min_horizontal;
  });
}

UavKinematics spawn_uav(UavId id, Rng& rng, const CellGeometry& cell, const SpeedRange& speeds)
{
  UavKinematics k;
  k.uav_id = id;
  k.position = sample_waypoint(rng, cell);
  k.waypoint = sample_waypoint_from(rng, cell, k.position);
  k.speed = uniform(rng, speeds.min, speeds.max);
  return k;
}

UavKinematics advance(UavKinematics k, double dt, Rng& rng, const CellGeometry& cell,
                      const SpeedRange& speeds)
{
  if (!(dt > 0.0)) {
    throw ContractError("advance: dt must be > 0");
  }
  double remaining = k.speed * dt;
  while (remaining > 0.0) {
    const Vec2 to_target = k.waypoint - k.position;
    const double dist = norm(to_target);
    if (dist > remaining) {
      k.position = k.position + (remaining / dist) * to_target;
      break;
    }
    k.position = k.waypoint;
    remaining -= dist;
    k.waypoint = sample_waypoint_from(rng, cell, k.position);
    k.speed = uniform(rng, speeds.min, speeds.max);
  }
  return k;
}

LinkGeometry geometry(const UavKinematics& k, const CellGeometry& cell)
{
  return geometry_at(norm(k.position - cell.bs_xy), cell.altitude);
}

LinkGeometry geometry_at(double horizontal, double altitude)
{
  LinkGeometry g;
  g.horizontal = horizontal;
  g.slant = std::hypot(horizontal, altitude);
  // asin(H/d) can exceed 90 degrees by an ulp when D == 0.
  g.elevation_deg = std::min(90.0, std::asin(altitude / g.slant) * 180.0 / std::numbers::pi);
  return g;
}

} // namespace noma_uav
