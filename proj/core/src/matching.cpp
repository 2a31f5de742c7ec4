#include "noma_uav/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "noma_uav/errors.hpp"

namespace noma_uav {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::size_t index_of(const std::vector<UavId>& ids, UavId id)
{
  const auto it = std::find(ids.begin(), ids.end(), id);
  return it == ids.end() ? kNone : static_cast<std::size_t>(it - ids.begin());
}

bool contains(const std::vector<UavId>& v, UavId id)
{
  return std::find(v.begin(), v.end(), id) != v.end();
}

PairingAssignment make_assignment(const std::vector<UavId>& strong_ids,
                                  const std::vector<UavId>& weak_ids,
                                  const std::vector<std::size_t>& weak_of_strong)
{
  PairingAssignment out;
  out.strong_ids = strong_ids;
  out.weak_ids = weak_ids;
  out.omega.assign(strong_ids.size(), std::vector<std::uint8_t>(weak_ids.size(), 0));
  std::vector<bool> weak_taken(weak_ids.size(), false);
  for (std::size_t a = 0; a < strong_ids.size(); ++a) {
    const std::size_t b = weak_of_strong[a];
    if (b == kNone) {
      out.unmatched.push_back(strong_ids[a]);
      continue;
    }
    out.omega[a][b] = 1;
    weak_taken[b] = true;
    out.matched.push_back(strong_ids[a]);
    out.matched.push_back(weak_ids[b]);
  }
  for (std::size_t b = 0; b < weak_ids.size(); ++b) {
    if (!weak_taken[b]) {
      out.unmatched.push_back(weak_ids[b]);
    }
  }
  out.complete = out.unmatched.empty();
  return out;
}

} // namespace

std::optional<double> PairEnergyTable::at(UavId strong, UavId weak) const
{
  const auto it = table_.find({strong, weak});
  if (it == table_.end()) {
    return std::nullopt;
  }
  return it->second;
}

PairEnergyTable pair_energies(const PowerMatrix& powers, double e_fly, double dt)
{
  PairEnergyTable table;
  for (const PowerEntry& e : powers.entries) {
    if (e.feasible) {
      table.set(e.strong, e.weak, (e.p_strong + e.p_weak + 2.0 * e_fly) * dt);
    }
  }
  return table;
}

const std::vector<UavId>& PreferenceLists::of_strong(UavId i) const
{
  const std::size_t a = index_of(strong_ids, i);
  if (a == kNone) {
    throw ContractError("preference lists: unknown strong UAV " + std::to_string(i));
  }
  return strong_prefs[a];
}

const std::vector<UavId>& PreferenceLists::of_weak(UavId j) const
{
  const std::size_t b = index_of(weak_ids, j);
  if (b == kNone) {
    throw ContractError("preference lists: unknown weak UAV " + std::to_string(j));
  }
  return weak_prefs[b];
}

PreferenceLists build_preferences(const ChannelSnapshot& snap, const PowerMatrix& powers,
                                  const PairEnergyTable& energies, double ch_th, double p_th)
{
  PreferenceLists prefs;
  prefs.strong_ids.assign(powers.strong_ids.rbegin(), powers.strong_ids.rend());
  prefs.weak_ids.assign(powers.weak_ids.rbegin(), powers.weak_ids.rend());
  prefs.strong_prefs.resize(prefs.strong_ids.size());
  prefs.weak_prefs.resize(prefs.weak_ids.size());

  const auto energy = [&](UavId i, UavId j) { return *energies.at(i, j); };

  for (std::size_t a = 0; a < prefs.strong_ids.size(); ++a) {
    const UavId i = prefs.strong_ids[a];
    auto& list = prefs.strong_prefs[a];
    for (UavId j : prefs.weak_ids) {
      const PowerEntry* e = powers.find(j, i);
      if (e != nullptr && e->feasible && energies.at(i, j) &&
          snap.gain(i) - snap.gain(j) >= ch_th) {
        list.push_back(j);
      }
    }
    std::sort(list.begin(), list.end(), [&](UavId x, UavId y) {
      const double ex = energy(i, x);
      const double ey = energy(i, y);
      return ex < ey || (ex == ey && x < y);
    });
  }

  for (std::size_t b = 0; b < prefs.weak_ids.size(); ++b) {
    const UavId j = prefs.weak_ids[b];
    auto& list = prefs.weak_prefs[b];
    for (UavId i : prefs.strong_ids) {
      const PowerEntry* e = powers.find(j, i);
      if (e != nullptr && e->feasible && energies.at(i, j) &&
          snap.gain(i) - snap.gain(j) >= ch_th &&
          e->p_strong - e->p_weak >= p_th - kPowerGapSlack) {
        list.push_back(i);
      }
    }
    std::sort(list.begin(), list.end(), [&](UavId x, UavId y) {
      const double ex = energy(x, j);
      const double ey = energy(y, j);
      return ex < ey || (ex == ey && x < y);
    });
  }
  return prefs;
}

std::size_t PairingAssignment::pair_count() const
{
  std::size_t n = 0;
  for (const auto& row : omega) {
    n += static_cast<std::size_t>(std::count(row.begin(), row.end(), std::uint8_t{1}));
  }
  return n;
}

std::vector<std::pair<UavId, UavId>> PairingAssignment::pairs() const
{
  std::vector<std::pair<UavId, UavId>> out;
  for (std::size_t a = 0; a < omega.size(); ++a) {
    for (std::size_t b = 0; b < omega[a].size(); ++b) {
      if (omega[a][b] != 0) {
        out.emplace_back(strong_ids[a], weak_ids[b]);
      }
    }
  }
  return out;
}

std::optional<UavId> PairingAssignment::partner_of(UavId id) const
{
  for (const auto& [s, w] : pairs()) {
    if (s == id) {
      return w;
    }
    if (w == id) {
      return s;
    }
  }
  return std::nullopt;
}

PairingAssignment match(const PreferenceLists& prefs, const PairEnergyTable& energies,
                        MatchStats* stats)
{
  const std::size_t n_strong = prefs.strong_ids.size();
  const std::size_t n_weak = prefs.weak_ids.size();
  if (n_strong != n_weak) {
    throw ContractError("match: strong and weak sides must have equal size");
  }
  MatchStats local;
  MatchStats& st = stats != nullptr ? *stats : local;

  // Lists translated to local indices once.
  std::vector<std::vector<std::size_t>> strong_list(n_strong);
  std::vector<std::vector<std::size_t>> weak_list(n_weak);
  std::vector<std::vector<bool>> strong_accepts(n_strong, std::vector<bool>(n_weak, false));
  std::vector<std::vector<bool>> weak_accepts(n_weak, std::vector<bool>(n_strong, false));
  std::vector<std::vector<double>> energy(n_strong, std::vector<double>(n_weak, 0.0));

  for (std::size_t a = 0; a < n_strong; ++a) {
    for (UavId j : prefs.strong_prefs[a]) {
      const std::size_t b = index_of(prefs.weak_ids, j);
      const auto e = energies.at(prefs.strong_ids[a], j);
      if (b == kNone || !e) {
        throw ContractError("match: preference entry without a weak UAV or energy");
      }
      strong_list[a].push_back(b);
      strong_accepts[a][b] = true;
      energy[a][b] = *e;
    }
  }
  for (std::size_t b = 0; b < n_weak; ++b) {
    for (UavId i : prefs.weak_prefs[b]) {
      const std::size_t a = index_of(prefs.strong_ids, i);
      const auto e = energies.at(i, prefs.weak_ids[b]);
      if (a == kNone || !e) {
        throw ContractError("match: preference entry without a strong UAV or energy");
      }
      weak_list[b].push_back(a);
      weak_accepts[b][a] = true;
      energy[a][b] = *e;
    }
  }
  // A pair can be formed only when it appears on both sides' lists.
  const auto admissible = [&](std::size_t a, std::size_t b) {
    return strong_accepts[a][b] && weak_accepts[b][a];
  };

  std::vector<std::size_t> weak_of(n_strong, kNone);
  std::vector<std::size_t> strong_of(n_weak, kNone);
  std::vector<std::size_t> next_choice(n_strong, 0);

  const auto engage = [&](std::size_t a, std::size_t b) {
    weak_of[a] = b;
    strong_of[b] = a;
  };

  // Round one: strong proposers, weak selectors.
  const auto strong_round = [&] {
    bool changed = false;
    std::deque<std::size_t> free_strong;
    for (std::size_t a = 0; a < n_strong; ++a) {
      if (weak_of[a] == kNone) {
        free_strong.push_back(a);
      }
    }
    while (!free_strong.empty()) {
      const std::size_t a = free_strong.front();
      free_strong.pop_front();
      while (next_choice[a] < strong_list[a].size()) {
        const std::size_t b = strong_list[a][next_choice[a]++];
        ++st.proposals;
        if (!admissible(a, b)) {
          continue;
        }
        const std::size_t current = strong_of[b];
        if (current == kNone) {
          engage(a, b);
          changed = true;
          break;
        }
        if (energy[a][b] < energy[current][b]) {
          weak_of[current] = kNone;
          free_strong.push_back(current);
          engage(a, b);
          ++st.switches;
          changed = true;
          break;
        }
      }
    }
    return changed;
  };

  // Round two: weak proposers from the current state; a switch happens only for
  // a strictly lower pair energy on both sides.
  const auto weak_round = [&] {
    bool changed = false;
    std::deque<std::size_t> proposers;
    for (std::size_t b = 0; b < n_weak; ++b) {
      proposers.push_back(b);
    }
    while (!proposers.empty()) {
      const std::size_t b = proposers.front();
      proposers.pop_front();
      for (std::size_t a : weak_list[b]) {
        const std::size_t mine = strong_of[b];
        if (mine == a) {
          break;
        }
        if (mine != kNone && !(energy[a][b] < energy[mine][b])) {
          break;
        }
        ++st.proposals;
        if (!admissible(a, b)) {
          continue;
        }
        const std::size_t theirs = weak_of[a];
        if (theirs == kNone || energy[a][b] < energy[a][theirs]) {
          if (theirs != kNone) {
            strong_of[theirs] = kNone;
            proposers.push_back(theirs);
          }
          if (mine != kNone) {
            weak_of[mine] = kNone;
          }
          engage(a, b);
          ++st.switches;
          changed = true;
          break;
        }
      }
    }
    return changed;
  };

  // Every switch strictly lowers a pair energy, so this settles quickly; the cap
  // only guards against a malformed energy table (NaN).
  const std::size_t max_passes = 4 * (n_strong + 1) * (n_weak + 1);
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    const bool r1 = strong_round();
    const bool r2 = weak_round();
    if (!r1 && !r2) {
      break;
    }
  }

  return make_assignment(prefs.strong_ids, prefs.weak_ids, weak_of);
}

bool is_stable(const PairingAssignment& assignment, const PreferenceLists& prefs,
               const PairEnergyTable& energies)
{
  for (std::size_t a = 0; a < prefs.strong_ids.size(); ++a) {
    const UavId i = prefs.strong_ids[a];
    const auto partner_i = assignment.partner_of(i);
    for (UavId j : prefs.strong_prefs[a]) {
      if (!contains(prefs.of_weak(j), i)) {
        continue;
      }
      if (partner_i && *partner_i == j) {
        continue;
      }
      const double e = *energies.at(i, j);
      const bool strong_gains = !partner_i || e < *energies.at(i, *partner_i);
      const auto partner_j = assignment.partner_of(j);
      const bool weak_gains = !partner_j || e < *energies.at(*partner_j, j);
      if (strong_gains && weak_gains) {
        return false;
      }
    }
  }
  return true;
}

namespace {

PairingAssignment rank_pairing(std::span<const UavId> ranking, bool pair_with_strongest_weak)
{
  if (ranking.size() < 2 || ranking.size() % 2 != 0) {
    throw ContractError("rank pairing: need an even number of UAVs");
  }
  const std::size_t m = ranking.size() / 2;
  std::vector<UavId> strong(ranking.rbegin(), ranking.rbegin() + static_cast<std::ptrdiff_t>(m));
  std::vector<UavId> weak(ranking.rbegin() + static_cast<std::ptrdiff_t>(m), ranking.rend());
  std::vector<std::size_t> weak_of(m);
  for (std::size_t k = 0; k < m; ++k) {
    weak_of[k] = pair_with_strongest_weak ? k : m - 1 - k;
  }
  return make_assignment(strong, weak, weak_of);
}

} // namespace

PairingAssignment greedy_pairing(std::span<const UavId> ranking)
{
  return rank_pairing(ranking, true);
}

PairingAssignment nongreedy_pairing(std::span<const UavId> ranking)
{
  return rank_pairing(ranking, false);
}

} // namespace noma_uav
