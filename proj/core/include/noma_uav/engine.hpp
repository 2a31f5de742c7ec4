#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "noma_uav/channel.hpp"
#include "noma_uav/link.hpp"
#include "noma_uav/matching.hpp"
#include "noma_uav/mobility.hpp"
#include "noma_uav/power_opt.hpp"
#include "noma_uav/random.hpp"

namespace noma_uav {

enum class Scheme { proposed, greedy, nongreedy };
enum class FadingMode { per_step, frozen };
/// on_violation re-pairs only flagged UAVs; every_step re-pairs the whole
/// population at every step (reference policy for the overhead comparison).
enum class RepairPolicy { on_violation, every_step };

struct ScenarioConfig {
  std::size_t k_total = 20;
  std::size_t t_total = 300;
  double dt = 1.0;
  CellGeometry cell{};
  SpeedRange speeds{};
  EnvironmentParams env{};

  double p_min = 0.0;
  double p_max = 1.0;
  double snr_db = 10.0; ///< transmit SNR p_max / n0
  double e_fly = 0.1;

  double ch_th = 0.1;
  double p_th = 0.1;
  double tolerance_frac = 0.1;
  double drift_db = 6.0;

  double rate_tol = 1e-4;
  int max_iters = 60;
  double espa_grid_step = 1e-3;

  FadingMode fading = FadingMode::per_step;
  Scheme scheme = Scheme::proposed;
  PowerMethod power_scheme = PowerMethod::bisect;
  RepairPolicy repair_policy = RepairPolicy::on_violation;
  std::uint64_t seed = 1;

  double noise_n0() const;
  PowerProfile power_profile() const;
  PairwiseOptions pairwise_options() const;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

inline constexpr UavId kNoPartner = std::numeric_limits<UavId>::max();

/// Current pairs and powers. Vectors are indexed by UavId.
struct Allocation {
  std::vector<UavId> partner;
  std::vector<double> p_tx;
  std::vector<double> gain_at_pairing;
  std::vector<std::uint8_t> strong_role; ///< 1 for the member decoded first at pairing
  std::vector<std::uint8_t> fallback;    ///< 1 when the pair was formed outside the matching

  explicit Allocation(std::size_t k = 0);
  std::size_t size() const { return partner.size(); }
};

/// Cause bits attached to a flagged UAV.
enum RepairCause : std::uint8_t {
  kGainDrift = 1,
  kRateViolation = 2,
  kPowerGap = 4,
};

struct RepairDecision {
  std::vector<UavId> pool;            ///< ascending ids, always whole pairs
  std::vector<std::uint8_t> causes;   ///< per UAV, RepairCause bits
  std::size_t rate_violations = 0;

  bool triggered() const { return !pool.empty(); }
};

/// Flags UAVs whose gain left the drift band, whose rate fell below target, or
/// whose pair lost the power gap. Rate violations count only when there are more
/// than tolerance_frac * k_total of them. Partners of flagged UAVs join the pool.
/// Throws ContractError if some UAV has no partner.
RepairDecision needs_repair(const Allocation& alloc, const ChannelSnapshot& snap,
                            std::span<const double> rates, std::span<const double> targets,
                            const ScenarioConfig& cfg);

/// Rates of every UAV under `alloc` and the gains in `snap`. Within a pair the
/// member with the larger current gain is decoded first (ties: larger id first).
std::vector<double> pair_rates(const Allocation& alloc, const ChannelSnapshot& snap, double n0);

struct UavMetrics {
  double gain = 0.0;
  double p_tx = 0.0;
  double rate = 0.0;
  double target = 0.0;
  bool kappa = false;
  double rate_cum = 0.0;
  double energy_cum = 0.0;
  UavId partner = kNoPartner;
  std::uint8_t causes = 0;
};

struct MetricsRecord {
  std::size_t time = 0;
  std::vector<UavMetrics> uavs;
  double eta_ee = 0.0;
  std::size_t kappa_count = 0;
  std::size_t rate_violations = 0; ///< before re-pairing, against the previous allocation
  std::size_t pool_size = 0;
  std::size_t pairs_formed = 0;
  std::uint8_t causes = 0; ///< union over UAVs
  bool incomplete = false; ///< matching left UAVs unmatched and a fallback was used
};

struct RunSummary {
  double mean_eta_ee = 0.0;
  double mean_kappa_frac = 0.0;
  double total_energy = 0.0;
  std::size_t repair_count = 0;    ///< pairs formed over the run, t = 0 included
  std::size_t matching_calls = 0;  ///< steps in which a pairing procedure ran
  std::size_t power_opt_calls = 0; ///< steps in which the power search ran
  std::size_t incomplete_steps = 0;
};

struct RunResult {
  std::vector<MetricsRecord> records;
  RunSummary summary;
};

/// Aggregates computed from the records alone; repair and call counters are not
/// recoverable from them and stay zero.
RunSummary summarize(std::span<const MetricsRecord> records, std::size_t k_total);

class Simulation {
public:
  /// Validates `cfg` and places the UAVs; no pairing happens before the first step.
  explicit Simulation(const ScenarioConfig& cfg);

  /// Advances one timestep (mobility is frozen for the first call) and returns its record.
  MetricsRecord step();

  std::size_t time() const { return time_; }
  const ScenarioConfig& config() const { return cfg_; }
  const Allocation& allocation() const { return alloc_; }
  const ChannelSnapshot& last_snapshot() const { return snap_; }
  const std::vector<UavKinematics>& uavs() const { return uavs_; }
  const RunSummary& counters() const { return counters_; }

private:
  void repair_proposed(std::span<const UavId> pool, std::span<const double> targets,
                       MetricsRecord& rec);
  void pair_baseline(MetricsRecord& rec);
  void set_pair(UavId strong, UavId weak, double p_strong, double p_weak, bool fallback);

  ScenarioConfig cfg_;
  double n0_;
  std::vector<UavKinematics> uavs_;
  std::vector<Rng> mobility_rng_;
  std::vector<Rng> fading_rng_;
  std::vector<double> frozen_fading_;
  Allocation alloc_;
  ChannelSnapshot snap_;
  std::vector<double> rate_cum_;
  std::vector<double> energy_cum_;
  std::size_t time_ = 0;
  RunSummary counters_;
};

/// Runs cfg.t_total steps. Throws ConfigError before stepping if cfg is invalid.
RunResult run(const ScenarioConfig& cfg);

} // namespace noma_uav
