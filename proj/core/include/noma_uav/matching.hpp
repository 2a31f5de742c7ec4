#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "noma_uav/channel.hpp"
#include "noma_uav/power_opt.hpp"

namespace noma_uav {

/// Energy of a candidate (strong, weak) pair over one step at its minimum
/// feasible powers: (p_i + p_j + 2 e_fly) dt.
class PairEnergyTable {
public:
  void set(UavId strong, UavId weak, double energy) { table_[{strong, weak}] = energy; }
  std::optional<double> at(UavId strong, UavId weak) const;
  std::size_t size() const { return table_.size(); }

private:
  std::map<std::pair<UavId, UavId>, double> table_;
};

PairEnergyTable pair_energies(const PowerMatrix& powers, double e_fly, double dt);

struct PreferenceLists {
  std::vector<UavId> strong_ids; ///< proposal order: descending gain
  std::vector<UavId> weak_ids;   ///< descending gain
  /// Per strong_ids[a]: admissible weak UAVs by ascending pair energy.
  std::vector<std::vector<UavId>> strong_prefs;
  /// Per weak_ids[b]: strong UAVs passing the gain and power gaps, by ascending pair energy.
  std::vector<std::vector<UavId>> weak_prefs;

  const std::vector<UavId>& of_strong(UavId i) const;
  const std::vector<UavId>& of_weak(UavId j) const;
};

/// Builds both sides' lists from the power matrix. Only feasible entries are
/// listed; weak lists also require p_i - p_j >= p_th. Ties in energy break by id.
PreferenceLists build_preferences(const ChannelSnapshot& snap, const PowerMatrix& powers,
                                  const PairEnergyTable& energies, double ch_th, double p_th);

/// One-to-one assignment between strong (rows) and weak (columns) UAVs.
struct PairingAssignment {
  std::vector<UavId> strong_ids;
  std::vector<UavId> weak_ids;
  std::vector<std::vector<std::uint8_t>> omega; ///< omega[a][b] = 1 iff strong_ids[a] ~ weak_ids[b]
  std::vector<UavId> matched;   ///< UAVs holding a partner
  std::vector<UavId> unmatched; ///< UAVs left without one
  bool complete = false;        ///< every row and column matched

  std::size_t pair_count() const;
  /// (strong, weak) pairs in row order.
  std::vector<std::pair<UavId, UavId>> pairs() const;
  std::optional<UavId> partner_of(UavId id) const;
};

/// Counters for the proposal rounds; the benchmarks and complexity tests read them.
struct MatchStats {
  std::size_t proposals = 0;
  std::size_t switches = 0;
};

/// Two-round deferred acceptance. Round one: strong UAVs propose down their
/// lists; a weak UAV accepts an admissible proposer when free, or switches when
/// the new pair's energy is strictly lower. Round two repeats with weak UAVs
/// proposing from the round-one state. The result is incomplete (not an error)
/// when some UAV runs out of admissible partners.
PairingAssignment match(const PreferenceLists& prefs, const PairEnergyTable& energies,
                        MatchStats* stats = nullptr);

/// True iff no admissible (i, j) would both strictly lower their pair energy by
/// leaving their current partners (a free UAV prefers any admissible partner).
bool is_stable(const PairingAssignment& assignment, const PreferenceLists& prefs,
               const PairEnergyTable& energies);

/// k-th strongest of the upper half with the k-th strongest of the lower half.
/// `ranking` is ascending by gain and of even length.
PairingAssignment greedy_pairing(std::span<const UavId> ranking);

/// k-th strongest of the upper half with the k-th weakest of the lower half.
PairingAssignment nongreedy_pairing(std::span<const UavId> ranking);

} // namespace noma_uav
