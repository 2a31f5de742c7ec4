#include "noma_uav/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "noma_uav/errors.hpp"

namespace noma_uav {

void EnvironmentParams::validate() const
{
  if (!(zeta > 0.0)) {
    throw ConfigError("environment: zeta must be > 0");
  }
  if (!(delta > 0.0)) {
    throw ConfigError("environment: delta must be > 0");
  }
  if (!(loss_nlos_db >= loss_los_db)) {
    throw ConfigError("environment: loss_nlos_db must be >= loss_los_db");
  }
  if (!(psi >= 1.0)) {
    throw ConfigError("environment: psi must be >= 1");
  }
}

double los_probability(double theta_deg, const EnvironmentParams& env)
{
  return 1.0 / (1.0 + env.zeta * std::exp(-env.delta * (theta_deg - env.zeta)));
}

double path_loss_db(double distance, const EnvironmentParams& env, LinkState state)
{
  if (!(distance > 0.0)) {
    throw DomainError("path_loss_db: distance must be > 0");
  }
  const double excess = state == LinkState::los ? env.loss_los_db : env.loss_nlos_db;
  return 10.0 * env.psi * std::log10(distance) + excess;
}

double combined_path_loss_db(double distance, double theta_deg, const EnvironmentParams& env)
{
  const double p_los = los_probability(theta_deg, env);
  return p_los * path_loss_db(distance, env, LinkState::los) +
         (1.0 - p_los) * path_loss_db(distance, env, LinkState::nlos);
}

double channel_gain(double pl_db, double fading_power)
{
  return std::pow(10.0, -pl_db / 10.0) * fading_power;
}

double sample_fading(Rng& rng) { return unit_exponential(rng); }

void rank_ascending(std::vector<UavId>& ids, const ChannelSnapshot& snap)
{
  std::sort(ids.begin(), ids.end(), [&](UavId a, UavId b) {
    const double ga = snap.gain(a);
    const double gb = snap.gain(b);
    return ga < gb || (ga == gb && a < b);
  });
}

ChannelSnapshot snapshot(std::span<const LinkGeometry> geometry, std::span<const double> fading,
                         const EnvironmentParams& env, std::size_t time)
{
  if (geometry.size() < 2) {
    throw ContractError("snapshot: need at least two UAVs");
  }
  if (fading.size() != geometry.size()) {
    throw ContractError("snapshot: one fading value per UAV required");
  }
  ChannelSnapshot snap;
  snap.time = time;
  snap.uavs.reserve(geometry.size());
  for (std::size_t k = 0; k < geometry.size(); ++k) {
    ChannelRecord rec;
    rec.pl_db = combined_path_loss_db(geometry[k].slant, geometry[k].elevation_deg, env);
    rec.fading_power = fading[k];
    rec.gain = channel_gain(rec.pl_db, rec.fading_power);
    snap.uavs.push_back(rec);
  }
  snap.ranking.resize(geometry.size());
  std::iota(snap.ranking.begin(), snap.ranking.end(), UavId{0});
  rank_ascending(snap.ranking, snap);
  return snap;
}

ChannelSnapshot snapshot(std::span<const LinkGeometry> geometry, std::span<Rng> fading_streams,
                         const EnvironmentParams& env, std::size_t time)
{
  if (fading_streams.size() != geometry.size()) {
    throw ContractError("snapshot: one fading stream per UAV required");
  }
  std::vector<double> fading;
  fading.reserve(fading_streams.size());
  for (Rng& rng : fading_streams) {
    fading.push_back(sample_fading(rng));
  }
  return snapshot(geometry, fading, env, time);
}

} // namespace noma_uav
