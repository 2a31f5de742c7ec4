#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "noma_uav/channel.hpp"

namespace noma_uav {

struct PowerBounds {
  double min = 0.0;
  double max = 1.0;
};

struct BisectionConfig {
  double rate_tol = 1e-4; ///< stop once rate(p) - target <= rate_tol
  int max_iters = 60;     ///< cap on rate evaluations, endpoint checks included

  void validate() const;

  friend bool operator==(const BisectionConfig&, const BisectionConfig&) = default;
};

/// Outcome of a one-dimensional minimum-power search. An empty `power` means the
/// target is unreachable inside the bounds; that is a value, not an error.
struct SearchResult {
  std::optional<double> power;
  int evaluations = 0;

  bool feasible() const { return power.has_value(); }
};

/// Smallest p in `bounds` with log2(1 + p g / n0) >= target, by bisection.
/// The returned power always meets the target exactly (never from below).
SearchResult min_power_weak(double gain, double target, double n0, PowerBounds bounds,
                            const BisectionConfig& cfg);

/// Smallest p in `bounds` with log2(1 + p g / (interference + n0)) >= target,
/// where interference = p_weak * g_weak is held fixed.
SearchResult min_power_strong(double gain, double target, double interference, double n0,
                              PowerBounds bounds, const BisectionConfig& cfg);

struct EspaResult {
  std::optional<double> p_strong;
  std::optional<double> p_weak;
  std::size_t evaluations = 0;

  bool feasible() const { return p_strong.has_value() && p_weak.has_value(); }
};

/// Exhaustive grid search. Scans the whole grid for the weak UAV and keeps the
/// smallest power meeting its target, then scans the whole grid again for the
/// smallest strong power meeting its target with p_strong >= p_weak + min_gap.
/// Reference implementation for the bisection search; `evaluations` counts every
/// rate evaluated.
EspaResult espa_oracle(double gain_strong, double gain_weak, double target_strong,
                       double target_weak, double n0, PowerBounds bounds, double grid_step,
                       double min_gap = 0.0);

/// Absolute slack for power-gap comparisons: p_strong is built as p_weak + p_th
/// and the subtraction p_strong - p_weak does not round-trip exactly.
inline constexpr double kPowerGapSlack = 1e-12;

enum class PowerMethod { bisect, espa, fixed };

struct PairwiseOptions {
  PowerBounds bounds{};
  double n0 = 0.1;
  double ch_th = 0.1;  ///< required gain gap |h_i|^2 - |h_j|^2
  double p_th = 0.1;   ///< required power gap p_i - p_j
  BisectionConfig bisection{};
  PowerMethod method = PowerMethod::bisect;
  double espa_grid_step = 1e-3;
};

struct PowerEntry {
  UavId weak = 0;
  UavId strong = 0;
  double p_weak = 0.0;
  double p_strong = 0.0;
  bool feasible = false;
  std::size_t evaluations = 0;
};

/// Minimum feasible powers for every gap-admissible (weak, strong) candidate pair.
class PowerMatrix {
public:
  std::vector<UavId> weak_ids;   ///< lower half of the ranking, ascending gain
  std::vector<UavId> strong_ids; ///< upper half of the ranking, ascending gain
  std::vector<PowerEntry> entries;

  /// nullptr when the pair fails the gain-gap gate.
  const PowerEntry* find(UavId weak, UavId strong) const;
  std::size_t evaluations() const;
};

/// Splits `ranking` (ascending gain, even length) into weak and strong halves and
/// computes the weak UAV's minimum power first, then the strong UAV's minimum
/// power with the weak signal as interference. The strong search starts at
/// p_weak + p_th so every feasible entry keeps the NOMA power order and the SIC
/// power gap. `targets` is indexed by UavId.
/// Throws ContractError for an odd or too-short ranking.
PowerMatrix optimize_pairwise(const ChannelSnapshot& snap, std::span<const UavId> ranking,
                              std::span<const double> targets, const PairwiseOptions& opts);

} // namespace noma_uav
