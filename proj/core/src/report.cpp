#include "noma_uav/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <system_error>

#include "noma_uav/scenario_file.hpp"

namespace noma_uav {

std::string format_double(double v)
{
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf.data(), ptr);
}

std::string timeseries_csv(std::span<const MetricsRecord> records)
{
  std::string out(kTimeseriesHeader);
  out += '\n';
  for (const MetricsRecord& r : records) {
    for (UavId k = 0; k < r.uavs.size(); ++k) {
      const UavMetrics& u = r.uavs[k];
      const UavId pair_id = u.partner == kNoPartner ? k : std::min(k, u.partner);
      out += std::to_string(r.time);
      out += ',';
      out += std::to_string(k);
      out += ',';
      out += format_double(u.gain);
      out += ',';
      out += format_double(u.p_tx);
      out += ',';
      out += format_double(u.rate);
      out += ',';
      out += format_double(u.target);
      out += ',';
      out += u.kappa ? '1' : '0';
      out += ',';
      out += format_double(u.energy_cum);
      out += ',';
      out += std::to_string(pair_id);
      out += '\n';
    }
  }
  return out;
}

std::string summary_csv(Scheme scheme, std::uint64_t seed, const RunSummary& s)
{
  std::string out(kSummaryHeader);
  out += '\n';
  out += to_string(scheme);
  out += ',' + std::to_string(seed);
  out += ',' + format_double(s.mean_eta_ee);
  out += ',' + format_double(s.mean_kappa_frac);
  out += ',' + format_double(s.total_energy);
  out += ',' + std::to_string(s.repair_count);
  out += '\n';
  return out;
}

std::string compare_csv(std::vector<CompareRow> rows)
{
  std::sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    if (a.seed != b.seed) {
      return a.seed < b.seed;
    }
    return to_string(a.scheme) < to_string(b.scheme);
  });
  std::string out(kCompareHeader);
  out += '\n';
  for (const CompareRow& r : rows) {
    out += std::to_string(r.seed);
    out += ',';
    out += to_string(r.scheme);
    out += ',' + format_double(r.summary.mean_eta_ee);
    out += ',' + format_double(r.summary.mean_kappa_frac);
    out += ',' + format_double(r.summary.total_energy);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) {
      return out;
    }
    line = line.substr(pos + 1);
  }
}

template <typename T>
T parse_field(std::string_view text)
{
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error("timeseries: bad field '" + std::string(text) + "'");
  }
  return v;
}

} // namespace

RunSummary summary_from_timeseries(std::string_view csv, double dt)
{
  const auto eol = csv.find('\n');
  if (eol == std::string_view::npos || csv.substr(0, eol) != kTimeseriesHeader) {
    throw std::runtime_error("timeseries: missing or unexpected header");
  }
  csv.remove_prefix(eol + 1);

  struct StepTotals {
    double eta = 0.0;
    std::size_t kappa = 0;
    std::size_t uavs = 0;
    double energy = 0.0;
  };
  std::map<std::size_t, StepTotals> steps;
  std::map<std::size_t, double> rate_cum;

  while (!csv.empty()) {
    const auto end = csv.find('\n');
    const std::string_view line = csv.substr(0, end);
    csv = end == std::string_view::npos ? std::string_view{} : csv.substr(end + 1);
    if (line.empty()) {
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw std::runtime_error("timeseries: expected 9 fields");
    }
    const auto t = parse_field<std::size_t>(f[0]);
    const auto uav = parse_field<std::size_t>(f[1]);
    const double rate = parse_field<double>(f[4]);
    const auto kappa = parse_field<int>(f[6]);
    const double energy = parse_field<double>(f[7]);

    double& r = rate_cum[uav];
    r += rate * dt;
    StepTotals& s = steps[t];
    s.eta += r / energy;
    s.kappa += kappa != 0 ? 1 : 0;
    s.uavs += 1;
    s.energy += energy;
  }

  RunSummary out;
  if (steps.empty()) {
    return out;
  }
  for (const auto& [t, s] : steps) {
    out.mean_eta_ee += s.eta;
    out.mean_kappa_frac += static_cast<double>(s.kappa) / static_cast<double>(s.uavs);
  }
  const auto n = static_cast<double>(steps.size());
  out.mean_eta_ee /= n;
  out.mean_kappa_frac /= n;
  out.total_energy = steps.rbegin()->second.energy;
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" + path.string() +
                             "': " + ec.message());
  }
}

} // namespace noma_uav
