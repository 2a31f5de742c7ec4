#pragma once

#include <cstddef>

#include "noma_uav/random.hpp"

namespace noma_uav {

using UavId = std::size_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

double norm(Vec2 v);

/// Circular cell around a ground BS. All lengths are normalized.
struct CellGeometry {
  Vec2 bs_xy{};
  double radius = 1.0;
  double min_horizontal = 0.1;
  double altitude = 0.5; ///< shared flight altitude H

  /// Throws ConfigError unless radius > min_horizontal >= 0 and altitude > 0.
  void validate() const;

  friend bool operator==(const CellGeometry&, const CellGeometry&) = default;
};

struct SpeedRange {
  double min = 0.005;
  double max = 0.02;

  void validate() const;

  friend bool operator==(const SpeedRange&, const SpeedRange&) = default;
};

struct UavKinematics {
  Vec2 position{};
  Vec2 waypoint{};
  double speed = 0.0;
  UavId uav_id = 0;
};

/// BS-relative geometry of one UAV.
struct LinkGeometry {
  double horizontal = 0.0;    ///< D, ground distance to the BS
  double slant = 0.0;         ///< d = sqrt(D^2 + H^2)
  double elevation_deg = 0.0; ///< asin(H / d) in degrees, in (0, 90]
};

/// Maximum rejection-sampling attempts before a waypoint draw is declared a
/// configuration error.
inline constexpr int kMaxWaypointAttempts = 10'000;

/// Uniform point over the annulus min_horizontal <= |p - bs| <= radius.
/// Throws ConfigError if no point is accepted within kMaxWaypointAttempts.
Vec2 sample_waypoint(Rng& rng, const CellGeometry& cell);

/// Like sample_waypoint, but additionally rejects destinations whose straight
/// path from `from` would cut through the keep-out disk around the BS. Used by
/// advance so that every visited position respects min_horizontal. A `from`
/// already inside the keep-out disk gets a plain sample_waypoint draw.
Vec2 sample_waypoint_from(Rng& rng, const CellGeometry& cell, Vec2 from);

/// Fresh UAV: position and waypoint drawn from the cell, speed from `speeds`.
UavKinematics spawn_uav(UavId id, Rng& rng, const CellGeometry& cell, const SpeedRange& speeds);

/// One random-waypoint step of length speed * dt. On arrival a new waypoint and
/// speed are drawn and the leftover distance is spent toward the new waypoint.
/// Pause time is zero. Throws ContractError if dt <= 0.
UavKinematics advance(UavKinematics k, double dt, Rng& rng, const CellGeometry& cell,
                      const SpeedRange& speeds);

LinkGeometry geometry(const UavKinematics& k, const CellGeometry& cell);

/// Geometry from a horizontal distance alone; used by tests and the channel module.
LinkGeometry geometry_at(double horizontal, double altitude);

} // namespace noma_uav
