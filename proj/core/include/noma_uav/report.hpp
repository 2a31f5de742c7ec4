#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noma_uav/engine.hpp"

namespace noma_uav {

inline constexpr std::string_view kTimeseriesHeader =
    "t,uav_id,gain,p_tx,rate,target,kappa,energy_cum,pair_id";
inline constexpr std::string_view kSummaryHeader =
    "scheme,seed,mean_eta_ee,mean_kappa_frac,total_energy,repair_count";
inline constexpr std::string_view kCompareHeader =
    "seed,scheme,mean_eta_ee,mean_kappa_frac,total_energy";

/// Shortest decimal string that parses back to exactly `v`; '.' separator.
std::string format_double(double v);

/// One row per (step, UAV), LF line endings. pair_id is the smaller id of the
/// UAV's pair (its own id when unpaired).
std::string timeseries_csv(std::span<const MetricsRecord> records);

std::string summary_csv(Scheme scheme, std::uint64_t seed, const RunSummary& summary);

struct CompareRow {
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::proposed;
  RunSummary summary;
};

/// Rows sorted by seed, then by scheme name.
std::string compare_csv(std::vector<CompareRow> rows);

/// Recomputes mean η_EE, mean κ fraction and total energy from a timeseries CSV.
/// Cumulative rates are rebuilt as running sums of rate * dt. Throws
/// std::runtime_error on a malformed file.
RunSummary summary_from_timeseries(std::string_view csv, double dt);

/// Writes `content` to a temporary file in the same directory, then renames it
/// over `path`. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace noma_uav
