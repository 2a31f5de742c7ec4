#pragma once

#include <vector>

#include "noma_uav/channel.hpp"
#include "noma_uav/link.hpp"
#include "noma_uav/mobility.hpp"

namespace testing_support {

/// Snapshot whose UAV gains equal `gains` exactly: every UAV sits overhead at
/// unit slant range and the fading value absorbs the path loss.
inline noma_uav::ChannelSnapshot snapshot_with_gains(const std::vector<double>& gains)
{
  using namespace noma_uav;
  const std::vector<LinkGeometry> geo(gains.size(), geometry_at(0.0, 1.0));
  const double attenuation = channel_gain(combined_path_loss_db(1.0, 90.0, {}), 1.0);
  std::vector<double> fading;
  for (double g : gains) {
    fading.push_back(g / attenuation);
  }
  return snapshot(geo, fading, EnvironmentParams{});
}

inline std::vector<double> full_power_targets(const noma_uav::ChannelSnapshot& s, double n0)
{
  std::vector<double> t;
  for (const noma_uav::ChannelRecord& r : s.uavs) {
    t.push_back(noma_uav::target_rate(1.0, r.gain, n0));
  }
  return t;
}

} // namespace testing_support
