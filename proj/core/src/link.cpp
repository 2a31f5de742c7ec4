#include "noma_uav/link.hpp"

#include <cmath>

#include "noma_uav/errors.hpp"

namespace noma_uav {

void PowerProfile::validate() const
{
  if (!(p_min >= 0.0) || !(p_max > p_min)) {
    throw ConfigError("power: need 0 <= p_min < p_max");
  }
  if (!(noise_n0 > 0.0)) {
    throw ConfigError("power: noise must be > 0");
  }
  if (!(e_fly >= 0.0)) {
    throw ConfigError("power: e_fly must be >= 0");
  }
}

double weak_rate(double p_tx, double gain, double n0)
{
  return std::log2(1.0 + (p_tx * gain) / n0);
}

double strong_rate(double p_i, double gain_i, double p_j, double gain_j, double n0)
{
  if (!(gain_i > gain_j)) {
    throw ContractError("strong_rate: strong UAV must have the larger channel gain");
  }
  return std::log2(1.0 + (p_i * gain_i) / (p_j * gain_j + n0));
}

double target_rate(double p_ref, double gain, double n0)
{
  return 0.5 * std::log2(1.0 + (p_ref / n0) * gain);
}

double step_energy(double p_tx, double e_fly, double dt)
{
  if (!(dt > 0.0)) {
    throw ContractError("step_energy: dt must be > 0");
  }
  return (p_tx + e_fly) * dt;
}

double energy_efficiency(std::span<const double> rates, std::span<const double> energies)
{
  if (rates.size() != energies.size()) {
    throw ContractError("energy_efficiency: rates and energies differ in length");
  }
  double eta = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (!(energies[k] > 0.0)) {
      throw DomainError("energy_efficiency: energy must be > 0");
    }
    eta += rates[k] / energies[k];
  }
  return eta;
}

Satisfaction satisfaction(std::span<const double> rates, std::span<const double> targets)
{
  if (rates.size() != targets.size()) {
    throw ContractError("satisfaction: rates and targets differ in length");
  }
  Satisfaction s;
  s.kappa.resize(rates.size());
  for (std::size_t k = 0; k < rates.size(); ++k) {
    s.kappa[k] = rates[k] >= targets[k] ? 1 : 0;
    s.count += s.kappa[k];
  }
  return s;
}

PairRates sic_pair_rates(double p_first, double gain_first, double p_second, double gain_second,
                         double n0)
{
  return {std::log2(1.0 + (p_first * gain_first) / (p_second * gain_second + n0)),
          weak_rate(p_second, gain_second, n0)};
}

} // namespace noma_uav
