#include "noma_uav/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noma_uav/errors.hpp"

namespace noma_uav {

double ScenarioConfig::noise_n0() const
{
  return p_max / std::pow(10.0, snr_db / 10.0);
}

PowerProfile ScenarioConfig::power_profile() const
{
  return {p_min, p_max, noise_n0(), e_fly};
}

PairwiseOptions ScenarioConfig::pairwise_options() const
{
  PairwiseOptions o;
  o.bounds = {p_min, p_max};
  o.n0 = noise_n0();
  o.ch_th = ch_th;
  o.p_th = p_th;
  o.bisection = {rate_tol, max_iters};
  o.method = power_scheme;
  o.espa_grid_step = espa_grid_step;
  return o;
}

void ScenarioConfig::validate() const
{
  if (k_total < 2 || k_total % 2 != 0) {
    throw ConfigError("k_total: must be even and >= 2, got " + std::to_string(k_total));
  }
  if (t_total < 1) {
    throw ConfigError("t_total: must be >= 1");
  }
  if (!(dt > 0.0)) {
    throw ConfigError("dt: must be > 0");
  }
  cell.validate();
  speeds.validate();
  env.validate();
  if (!std::isfinite(snr_db)) {
    throw ConfigError("snr_db: must be finite");
  }
  power_profile().validate();
  if (!(ch_th >= 0.0)) {
    throw ConfigError("ch_th: must be >= 0");
  }
  if (!(p_th >= 0.0)) {
    throw ConfigError("p_th: must be >= 0");
  }
  if (!(tolerance_frac >= 0.0 && tolerance_frac < 1.0)) {
    throw ConfigError("tolerance_frac: must be in [0, 1)");
  }
  if (!(drift_db > 0.0)) {
    throw ConfigError("drift_db: must be > 0");
  }
  BisectionConfig{rate_tol, max_iters}.validate();
  if (!(espa_grid_step > 0.0)) {
    throw ConfigError("espa_grid_step: must be > 0");
  }
}

Allocation::Allocation(std::size_t k)
    : partner(k, kNoPartner), p_tx(k, 0.0), gain_at_pairing(k, 0.0), strong_role(k, 0),
      fallback(k, 0)
{
}

std::vector<double> pair_rates(const Allocation& alloc, const ChannelSnapshot& snap, double n0)
{
  std::vector<double> rates(alloc.size(), 0.0);
  for (UavId k = 0; k < alloc.size(); ++k) {
    const UavId m = alloc.partner[k];
    if (m == kNoPartner) {
      rates[k] = weak_rate(alloc.p_tx[k], snap.gain(k), n0);
      continue;
    }
    const double gk = snap.gain(k);
    const double gm = snap.gain(m);
    const bool first = gk > gm || (gk == gm && k > m);
    rates[k] = first ? sic_pair_rates(alloc.p_tx[k], gk, alloc.p_tx[m], gm, n0).first
                     : sic_pair_rates(alloc.p_tx[m], gm, alloc.p_tx[k], gk, n0).second;
  }
  return rates;
}

RepairDecision needs_repair(const Allocation& alloc, const ChannelSnapshot& snap,
                            std::span<const double> rates, std::span<const double> targets,
                            const ScenarioConfig& cfg)
{
  const std::size_t k_total = alloc.size();
  if (snap.size() != k_total || rates.size() != k_total || targets.size() != k_total) {
    throw ContractError("needs_repair: allocation, snapshot, rates and targets differ in size");
  }

  RepairDecision d;
  d.causes.assign(k_total, 0);
  for (UavId k = 0; k < k_total; ++k) {
    const UavId m = alloc.partner[k];
    if (m == kNoPartner) {
      throw ContractError("needs_repair: UAV " + std::to_string(k) + " has no partner");
    }
    const double drift = 10.0 * std::log10(snap.gain(k) / alloc.gain_at_pairing[k]);
    if (std::abs(drift) > cfg.drift_db) {
      d.causes[k] |= kGainDrift;
    }
    if (rates[k] < targets[k]) {
      d.causes[k] |= kRateViolation;
      ++d.rate_violations;
    }
    if (alloc.strong_role[k] != 0 && alloc.p_tx[k] - alloc.p_tx[m] < cfg.p_th - kPowerGapSlack) {
      d.causes[k] |= kPowerGap;
      d.causes[m] |= kPowerGap;
    }
  }

  const bool rate_triggered =
      static_cast<double>(d.rate_violations) > cfg.tolerance_frac * static_cast<double>(k_total);
  std::vector<bool> in_pool(k_total, false);
  for (UavId k = 0; k < k_total; ++k) {
    const bool flagged = (d.causes[k] & (kGainDrift | kPowerGap)) != 0 ||
                         (rate_triggered && (d.causes[k] & kRateViolation) != 0);
    if (flagged) {
      in_pool[k] = true;
      in_pool[alloc.partner[k]] = true;
    }
  }
  for (UavId k = 0; k < k_total; ++k) {
    if (in_pool[k]) {
      d.pool.push_back(k);
    }
  }
  return d;
}

RunSummary summarize(std::span<const MetricsRecord> records, std::size_t k_total)
{
  RunSummary s;
  if (records.empty()) {
    return s;
  }
  double eta = 0.0;
  double kappa = 0.0;
  for (const MetricsRecord& r : records) {
    eta += r.eta_ee;
    kappa += static_cast<double>(r.kappa_count) / static_cast<double>(k_total);
  }
  const auto n = static_cast<double>(records.size());
  s.mean_eta_ee = eta / n;
  s.mean_kappa_frac = kappa / n;
  for (const UavMetrics& u : records.back().uavs) {
    s.total_energy += u.energy_cum;
  }
  return s;
}

Simulation::Simulation(const ScenarioConfig& cfg) : cfg_(cfg), n0_(0.0)
{
  cfg_.validate();
  n0_ = cfg_.noise_n0();
  const std::size_t k = cfg_.k_total;
  uavs_.reserve(k);
  mobility_rng_.reserve(k);
  fading_rng_.reserve(k);
  for (UavId id = 0; id < k; ++id) {
    mobility_rng_.push_back(make_stream(cfg_.seed, id, StreamPurpose::mobility));
    fading_rng_.push_back(make_stream(cfg_.seed, id, StreamPurpose::fading));
    uavs_.push_back(spawn_uav(id, mobility_rng_.back(), cfg_.cell, cfg_.speeds));
  }
  if (cfg_.fading == FadingMode::frozen) {
    for (Rng& rng : fading_rng_) {
      frozen_fading_.push_back(sample_fading(rng));
    }
  }
  alloc_ = Allocation(k);
  rate_cum_.assign(k, 0.0);
  energy_cum_.assign(k, 0.0);
}

void Simulation::set_pair(UavId strong, UavId weak, double p_strong, double p_weak, bool fallback)
{
  alloc_.partner[strong] = weak;
  alloc_.partner[weak] = strong;
  alloc_.p_tx[strong] = p_strong;
  alloc_.p_tx[weak] = p_weak;
  alloc_.gain_at_pairing[strong] = snap_.gain(strong);
  alloc_.gain_at_pairing[weak] = snap_.gain(weak);
  alloc_.strong_role[strong] = 1;
  alloc_.strong_role[weak] = 0;
  alloc_.fallback[strong] = fallback ? 1 : 0;
  alloc_.fallback[weak] = fallback ? 1 : 0;
}

void Simulation::repair_proposed(std::span<const UavId> pool, std::span<const double> targets,
                                 MetricsRecord& rec)
{
  std::vector<UavId> ranking(pool.begin(), pool.end());
  rank_ascending(ranking, snap_);

  const PairwiseOptions opts = cfg_.pairwise_options();
  const PowerMatrix powers = optimize_pairwise(snap_, ranking, targets, opts);
  ++counters_.power_opt_calls;
  const PairEnergyTable energies = pair_energies(powers, cfg_.e_fly, cfg_.dt);
  const PreferenceLists prefs = build_preferences(snap_, powers, energies, cfg_.ch_th, cfg_.p_th);
  const PairingAssignment assignment = match(prefs, energies);
  ++counters_.matching_calls;

  const std::vector<UavId> previous = alloc_.partner;
  for (UavId k : pool) {
    alloc_.partner[k] = kNoPartner;
  }
  for (const auto& [s, w] : assignment.pairs()) {
    const PowerEntry* e = powers.find(w, s);
    set_pair(s, w, e->p_strong, e->p_weak, false);
    ++rec.pairs_formed;
  }
  if (assignment.complete) {
    return;
  }

  rec.incomplete = true;
  // Unmatched UAVs whose previous partner is also unmatched keep that pair as it was.
  std::vector<UavId> leftover;
  for (UavId k : assignment.unmatched) {
    const UavId m = previous[k];
    const bool restorable = m != kNoPartner && alloc_.partner[m] == kNoPartner &&
                            std::find(assignment.unmatched.begin(), assignment.unmatched.end(),
                                      m) != assignment.unmatched.end();
    if (alloc_.partner[k] != kNoPartner) {
      continue;
    }
    if (restorable) {
      alloc_.partner[k] = m;
      alloc_.partner[m] = k;
    } else {
      leftover.push_back(k);
    }
  }
  // The rest are paired by rank at fixed powers that keep the power gap.
  rank_ascending(leftover, snap_);
  const std::size_t half = leftover.size() / 2;
  const double p_weak = std::max(cfg_.p_min, cfg_.p_max - cfg_.p_th);
  for (std::size_t k = 0; k < half; ++k) {
    set_pair(leftover[leftover.size() - 1 - k], leftover[half - 1 - k], cfg_.p_max, p_weak, true);
    ++rec.pairs_formed;
  }
}

void Simulation::pair_baseline(MetricsRecord& rec)
{
  const PairingAssignment a = cfg_.scheme == Scheme::greedy ? greedy_pairing(snap_.ranking)
                                                            : nongreedy_pairing(snap_.ranking);
  ++counters_.matching_calls;
  for (const auto& [s, w] : a.pairs()) {
    if (cfg_.scheme == Scheme::greedy) {
      set_pair(s, w, cfg_.p_max, cfg_.p_max, false);
    } else {
      // Fractional power within the pair: the weaker channel transmits at full power
      // and the stronger one scales down by the gain ratio.
      const double p_strong = std::max(cfg_.p_min, cfg_.p_max * snap_.gain(w) / snap_.gain(s));
      set_pair(s, w, p_strong, cfg_.p_max, false);
    }
    ++rec.pairs_formed;
  }
}

MetricsRecord Simulation::step()
{
  const std::size_t k_total = cfg_.k_total;
  MetricsRecord rec;
  rec.time = time_;

  if (time_ > 0) {
    for (UavId k = 0; k < k_total; ++k) {
      uavs_[k] = advance(uavs_[k], cfg_.dt, mobility_rng_[k], cfg_.cell, cfg_.speeds);
    }
  }
  std::vector<LinkGeometry> geo;
  geo.reserve(k_total);
  for (const UavKinematics& u : uavs_) {
    geo.push_back(geometry(u, cfg_.cell));
  }
  if (cfg_.fading == FadingMode::frozen) {
    snap_ = snapshot(geo, frozen_fading_, cfg_.env, time_);
  } else {
    snap_ = snapshot(geo, std::span<Rng>(fading_rng_), cfg_.env, time_);
  }

  std::vector<double> targets(k_total);
  for (UavId k = 0; k < k_total; ++k) {
    targets[k] = target_rate(cfg_.p_max, snap_.gain(k), n0_);
  }

  std::vector<std::uint8_t> causes(k_total, 0);
  if (cfg_.scheme == Scheme::proposed) {
    std::vector<UavId> pool;
    if (time_ == 0 || cfg_.repair_policy == RepairPolicy::every_step) {
      pool.resize(k_total);
      for (UavId k = 0; k < k_total; ++k) {
        pool[k] = k;
      }
    } else {
      const std::vector<double> before = pair_rates(alloc_, snap_, n0_);
      RepairDecision d = needs_repair(alloc_, snap_, before, targets, cfg_);
      rec.rate_violations = d.rate_violations;
      causes = std::move(d.causes);
      pool = std::move(d.pool);
    }
    rec.pool_size = pool.size();
    if (!pool.empty()) {
      repair_proposed(pool, targets, rec);
    }
  } else {
    rec.pool_size = k_total;
    pair_baseline(rec);
  }
  counters_.repair_count += rec.pairs_formed;
  if (rec.incomplete) {
    ++counters_.incomplete_steps;
  }

  const std::vector<double> rates = pair_rates(alloc_, snap_, n0_);
  rec.uavs.resize(k_total);
  for (UavId k = 0; k < k_total; ++k) {
    rate_cum_[k] += rates[k] * cfg_.dt;
    energy_cum_[k] += step_energy(alloc_.p_tx[k], cfg_.e_fly, cfg_.dt);
    UavMetrics& u = rec.uavs[k];
    u.gain = snap_.gain(k);
    u.p_tx = alloc_.p_tx[k];
    u.rate = rates[k];
    u.target = targets[k];
    u.kappa = rates[k] >= targets[k];
    u.rate_cum = rate_cum_[k];
    u.energy_cum = energy_cum_[k];
    u.partner = alloc_.partner[k];
    u.causes = causes[k];
    rec.kappa_count += u.kappa ? 1 : 0;
    rec.causes |= causes[k];
  }
  rec.eta_ee = energy_efficiency(rate_cum_, energy_cum_);
  ++time_;
  return rec;
}

RunResult run(const ScenarioConfig& cfg)
{
  Simulation sim(cfg);
  RunResult out;
  out.records.reserve(cfg.t_total);
  for (std::size_t t = 0; t < cfg.t_total; ++t) {
    out.records.push_back(sim.step());
  }
  const RunSummary& c = sim.counters();
  out.summary = summarize(out.records, cfg.k_total);
  out.summary.repair_count = c.repair_count;
  out.summary.matching_calls = c.matching_calls;
  out.summary.power_opt_calls = c.power_opt_calls;
  out.summary.incomplete_steps = c.incomplete_steps;
  return out;
}

} // namespace noma_uav
