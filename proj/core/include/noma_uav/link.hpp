#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace noma_uav {

/// Transmit-power limits, noise and flying energy shared by every UAV. Powers
/// are the effective transmit power alpha * P; the two factors never appear apart.
struct PowerProfile {
  double p_min = 0.0;
  double p_max = 1.0;
  double noise_n0 = 0.1;
  double e_fly = 0.1; ///< flying energy per unit time

  void validate() const;

  friend bool operator==(const PowerProfile&, const PowerProfile&) = default;
};

/// Rate of the UAV decoded last (after SIC): log2(1 + p g / n0).
double weak_rate(double p_tx, double gain, double n0);

/// Rate of the UAV decoded first, with the partner's signal as interference:
/// log2(1 + p_i g_i / (p_j g_j + n0)). Throws ContractError unless gain_i > gain_j.
double strong_rate(double p_i, double gain_i, double p_j, double gain_j, double n0);

/// OMA reference rate with the 1/2 multiplexing loss: 0.5 log2(1 + (p_ref/n0) g).
double target_rate(double p_ref, double gain, double n0);

/// (p_tx + e_fly) * dt. Throws ContractError if dt <= 0.
double step_energy(double p_tx, double e_fly, double dt);

/// Sum over UAVs of accumulated rate / accumulated energy.
/// Throws DomainError on a non-positive energy, ContractError on length mismatch.
double energy_efficiency(std::span<const double> rates, std::span<const double> energies);

struct RateReport {
  double rate = 0.0;
  double target = 0.0;
  bool satisfied = false;
};

struct Satisfaction {
  std::vector<std::uint8_t> kappa; ///< 1 iff rate >= target
  std::size_t count = 0;
};

Satisfaction satisfaction(std::span<const double> rates, std::span<const double> targets);

struct PairRates {
  double first = 0.0;  ///< UAV decoded first (stronger channel)
  double second = 0.0; ///< UAV decoded after SIC
};

/// Rates of a two-UAV NOMA pair given which member is decoded first. Unlike
/// strong_rate, no role check: used when the engine re-evaluates an existing
/// pair whose gains may have crossed.
PairRates sic_pair_rates(double p_first, double gain_first, double p_second, double gain_second,
                         double n0);

} // namespace noma_uav
