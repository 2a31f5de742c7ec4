#include "noma_uav/power_opt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noma_uav/errors.hpp"
#include "noma_uav/link.hpp"

namespace noma_uav {

namespace {

template <typename RateFn>
SearchResult bisect_min_power(RateFn rate_at, double target, PowerBounds bounds,
                              const BisectionConfig& cfg)
{
  SearchResult res;
  const auto rate = [&](double p) {
    ++res.evaluations;
    return rate_at(p);
  };

  double lo = bounds.min;
  double hi = bounds.max;
  if (rate(lo) >= target) {
    res.power = lo;
    return res;
  }
  double rate_hi = rate(hi);
  if (rate_hi < target) {
    return res;
  }
  // rate(lo) < target <= rate(hi); shrink until hi is within rate_tol of the target.
  while (res.evaluations < cfg.max_iters && rate_hi - target > cfg.rate_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    const double r = rate(mid);
    if (r < target) {
      lo = mid;
    } else {
      hi = mid;
      rate_hi = r;
    }
  }
  res.power = hi;
  return res;
}

std::vector<double> power_grid(PowerBounds bounds, double step)
{
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor((bounds.max - bounds.min) / step + 1e-9));
  grid.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) {
    grid.push_back(std::min(bounds.max, bounds.min + static_cast<double>(k) * step));
  }
  if (grid.back() < bounds.max) {
    grid.push_back(bounds.max);
  }
  return grid;
}

} // namespace

void BisectionConfig::validate() const
{
  if (!(rate_tol > 0.0)) {
    throw ConfigError("bisection: rate_tol must be > 0");
  }
  if (max_iters < 1) {
    throw ConfigError("bisection: max_iters must be >= 1");
  }
}

SearchResult min_power_weak(double gain, double target, double n0, PowerBounds bounds,
                            const BisectionConfig& cfg)
{
  return bisect_min_power([&](double p) { return weak_rate(p, gain, n0); }, target, bounds, cfg);
}

SearchResult min_power_strong(double gain, double target, double interference, double n0,
                              PowerBounds bounds, const BisectionConfig& cfg)
{
  if (!(interference >= 0.0)) {
    throw ContractError("min_power_strong: interference must be >= 0");
  }
  return bisect_min_power(
      [&](double p) { return std::log2(1.0 + (p * gain) / (interference + n0)); }, target, bounds,
      cfg);
}

EspaResult espa_oracle(double gain_strong, double gain_weak, double target_strong,
                       double target_weak, double n0, PowerBounds bounds, double grid_step,
                       double min_gap)
{
  if (!(grid_step > 0.0)) {
    throw ContractError("espa_oracle: grid_step must be > 0");
  }
  EspaResult res;
  const std::vector<double> grid = power_grid(bounds, grid_step);

  // Every grid point is evaluated on both axes. The strong requirement grows with
  // the weak UAV's interference, so the smallest feasible p_weak followed by the
  // smallest feasible p_strong also minimises the pair's total power.
  for (double p_weak : grid) {
    ++res.evaluations;
    if (!res.p_weak && weak_rate(p_weak, gain_weak, n0) >= target_weak) {
      res.p_weak = p_weak;
    }
  }
  if (!res.p_weak) {
    return res;
  }
  const double interference = *res.p_weak * gain_weak;
  const double floor = *res.p_weak + min_gap;
  for (double p_strong : grid) {
    ++res.evaluations;
    if (!res.p_strong && p_strong >= floor &&
        std::log2(1.0 + (p_strong * gain_strong) / (interference + n0)) >= target_strong) {
      res.p_strong = p_strong;
    }
  }
  if (!res.p_strong) {
    res.p_weak.reset();
  }
  return res;
}

const PowerEntry* PowerMatrix::find(UavId weak, UavId strong) const
{
  const auto it = std::find_if(entries.begin(), entries.end(), [&](const PowerEntry& e) {
    return e.weak == weak && e.strong == strong;
  });
  return it == entries.end() ? nullptr : &*it;
}

std::size_t PowerMatrix::evaluations() const
{
  std::size_t total = 0;
  for (const auto& e : entries) {
    total += e.evaluations;
  }
  return total;
}

PowerMatrix optimize_pairwise(const ChannelSnapshot& snap, std::span<const UavId> ranking,
                              std::span<const double> targets, const PairwiseOptions& opts)
{
  if (ranking.size() < 2 || ranking.size() % 2 != 0) {
    throw ContractError("optimize_pairwise: need an even number of candidates, got " +
                        std::to_string(ranking.size()));
  }
  if (targets.size() != snap.size()) {
    throw ContractError("optimize_pairwise: one target per UAV required");
  }

  const std::size_t half = ranking.size() / 2;
  PowerMatrix m;
  m.weak_ids.assign(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(half));
  m.strong_ids.assign(ranking.begin() + static_cast<std::ptrdiff_t>(half), ranking.end());

  const PowerBounds bounds = opts.bounds;
  const double n0 = opts.n0;

  for (UavId j : m.weak_ids) {
    const double g_j = snap.gain(j);

    // The weak UAV is decoded last, so its minimum power does not depend on the partner.
    SearchResult weak;
    if (opts.method == PowerMethod::bisect) {
      weak = min_power_weak(g_j, targets[j], n0, bounds, opts.bisection);
    }

    for (UavId i : m.strong_ids) {
      const double g_i = snap.gain(i);
      if (g_i - g_j < opts.ch_th) {
        continue;
      }
      PowerEntry e;
      e.weak = j;
      e.strong = i;

      switch (opts.method) {
      case PowerMethod::bisect: {
        e.evaluations = static_cast<std::size_t>(weak.evaluations);
        if (!weak.feasible()) {
          break;
        }
        e.p_weak = *weak.power;
        const PowerBounds strong_bounds{std::max(bounds.min, e.p_weak + opts.p_th), bounds.max};
        if (strong_bounds.min > strong_bounds.max) {
          break;
        }
        const SearchResult strong = min_power_strong(g_i, targets[i], e.p_weak * g_j, n0,
                                                     strong_bounds, opts.bisection);
        e.evaluations += static_cast<std::size_t>(strong.evaluations);
        if (strong.feasible()) {
          e.p_strong = *strong.power;
          e.feasible = true;
        }
        break;
      }
      case PowerMethod::espa: {
        const EspaResult r = espa_oracle(g_i, g_j, targets[i], targets[j], n0, bounds,
                                         opts.espa_grid_step, opts.p_th);
        e.evaluations = r.evaluations;
        if (r.feasible()) {
          e.p_weak = *r.p_weak;
          e.p_strong = *r.p_strong;
          e.feasible = true;
        }
        break;
      }
      case PowerMethod::fixed: {
        e.p_strong = bounds.max;
        e.p_weak = std::max(bounds.min, bounds.max - opts.p_th);
        e.evaluations = 2;
        e.feasible = weak_rate(e.p_weak, g_j, n0) >= targets[j] &&
                     std::log2(1.0 + (e.p_strong * g_i) / (e.p_weak * g_j + n0)) >= targets[i];
        break;
      }
      }

      // NOMA power order: the stronger channel must transmit strictly more.
      if (e.feasible && !(e.p_strong > e.p_weak)) {
        e.feasible = false;
      }
      m.entries.push_back(e);
    }
  }
  return m;
}

} // namespace noma_uav
