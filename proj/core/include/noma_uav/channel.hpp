#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noma_uav/mobility.hpp"
#include "noma_uav/random.hpp"

namespace noma_uav {

/// Elevation-angle LOS model and excess losses. Defaults are the dense-urban set.
struct EnvironmentParams {
  double zeta = 12.0870;
  double delta = 0.1139;
  double loss_los_db = 1.6;
  double loss_nlos_db = 23.0;
  double psi = 2.0; ///< path-loss exponent

  void validate() const;

  friend bool operator==(const EnvironmentParams&, const EnvironmentParams&) = default;
};

enum class LinkState { los, nlos };

/// 1 / (1 + zeta * exp(-delta * (theta - zeta))). The NLOS probability is the complement.
double los_probability(double theta_deg, const EnvironmentParams& env);

/// 10 * psi * log10(d) + excess loss of the given state. Throws DomainError for d <= 0.
double path_loss_db(double distance, const EnvironmentParams& env, LinkState state);

/// LOS/NLOS path losses weighted by their probabilities, averaged in dB.
double combined_path_loss_db(double distance, double theta_deg, const EnvironmentParams& env);

/// |h|^2 = 10^(-pl/10) * |h~|^2.
double channel_gain(double pl_db, double fading_power);

/// |h~|^2 of unit-power Rayleigh fading.
double sample_fading(Rng& rng);

struct ChannelRecord {
  double pl_db = 0.0;
  double fading_power = 1.0;
  double gain = 0.0;
};

/// Channel state of every UAV at one timestep. Immutable once built.
struct ChannelSnapshot {
  std::size_t time = 0;
  std::vector<ChannelRecord> uavs;  ///< indexed by UavId
  std::vector<UavId> ranking;       ///< ascending gain, ties by ascending id

  double gain(UavId id) const { return uavs.at(id).gain; }
  std::size_t size() const { return uavs.size(); }
};

/// Sorts `ids` by ascending gain (ties by ascending id).
void rank_ascending(std::vector<UavId>& ids, const ChannelSnapshot& snap);

/// Builds a snapshot from per-UAV geometry and already-drawn fading powers.
/// Throws ContractError for fewer than two UAVs or mismatched lengths.
ChannelSnapshot snapshot(std::span<const LinkGeometry> geometry, std::span<const double> fading,
                         const EnvironmentParams& env, std::size_t time = 0);

/// Same, drawing one fading value per UAV from its own stream.
ChannelSnapshot snapshot(std::span<const LinkGeometry> geometry, std::span<Rng> fading_streams,
                         const EnvironmentParams& env, std::size_t time = 0);

} // namespace noma_uav
