#include "noma_uav/scenario_file.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "noma_uav/errors.hpp"
#include "noma_uav/report.hpp"

namespace noma_uav {

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<std::string_view, Enum>, N>& table,
                           std::string_view text)
{
  for (const auto& [name, value] : table) {
    if (name == text) {
      return value;
    }
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, Enum>, N>& table, Enum v)
{
  for (const auto& [name, value] : table) {
    if (value == v) {
      return name;
    }
  }
  return "?";
}

constexpr std::array<std::pair<std::string_view, Scheme>, 3> kSchemes{{
    {"proposed", Scheme::proposed},
    {"greedy", Scheme::greedy},
    {"nongreedy", Scheme::nongreedy},
}};
constexpr std::array<std::pair<std::string_view, PowerMethod>, 3> kPowerMethods{{
    {"bisect", PowerMethod::bisect},
    {"espa", PowerMethod::espa},
    {"fixed", PowerMethod::fixed},
}};
constexpr std::array<std::pair<std::string_view, FadingMode>, 2> kFadingModes{{
    {"per_step", FadingMode::per_step},
    {"frozen", FadingMode::frozen},
}};
constexpr std::array<std::pair<std::string_view, RepairPolicy>, 2> kRepairPolicies{{
    {"on_violation", RepairPolicy::on_violation},
    {"every_step", RepairPolicy::every_step},
}};

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool read_double(std::string_view text, double& out)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return false;
  }
  out = v;
  return true;
}

template <typename Int>
bool read_integer(std::string_view text, Int& out)
{
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return false;
  }
  out = v;
  return true;
}

template <typename Int>
std::string int_text(Int v)
{
  return std::to_string(v);
}

struct Field {
  std::string_view key;
  std::function<bool(ScenarioConfig&, std::string_view)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define NOMA_REAL_FIELD(name, member)                                                        \
  Field                                                                                      \
  {                                                                                          \
    name, [](ScenarioConfig& c, std::string_view v) { return read_double(v, c.member); },   \
        [](const ScenarioConfig& c) { return format_double(c.member); }                      \
  }

#define NOMA_INT_FIELD(name, member)                                                         \
  Field                                                                                      \
  {                                                                                          \
    name, [](ScenarioConfig& c, std::string_view v) { return read_integer(v, c.member); },  \
        [](const ScenarioConfig& c) { return int_text(c.member); }                           \
  }

#define NOMA_ENUM_FIELD(name, member, parser, table)                                         \
  Field                                                                                      \
  {                                                                                          \
    name,                                                                                    \
        [](ScenarioConfig& c, std::string_view v) {                                          \
          const auto parsed = parser(v);                                                     \
          if (parsed) {                                                                      \
            c.member = *parsed;                                                              \
          }                                                                                  \
          return parsed.has_value();                                                         \
        },                                                                                   \
        [](const ScenarioConfig& c) { return std::string(name_of(table, c.member)); }        \
  }

const std::vector<Field>& fields()
{
  static const std::vector<Field> table{
      NOMA_INT_FIELD("k_total", k_total),
      NOMA_INT_FIELD("t_total", t_total),
      NOMA_REAL_FIELD("dt", dt),
      NOMA_REAL_FIELD("bs_x", cell.bs_xy.x),
      NOMA_REAL_FIELD("bs_y", cell.bs_xy.y),
      NOMA_REAL_FIELD("radius", cell.radius),
      NOMA_REAL_FIELD("min_horizontal", cell.min_horizontal),
      NOMA_REAL_FIELD("altitude", cell.altitude),
      NOMA_REAL_FIELD("speed_min", speeds.min),
      NOMA_REAL_FIELD("speed_max", speeds.max),
      NOMA_REAL_FIELD("zeta", env.zeta),
      NOMA_REAL_FIELD("delta", env.delta),
      NOMA_REAL_FIELD("loss_los_db", env.loss_los_db),
      NOMA_REAL_FIELD("loss_nlos_db", env.loss_nlos_db),
      NOMA_REAL_FIELD("psi", env.psi),
      NOMA_REAL_FIELD("p_min", p_min),
      NOMA_REAL_FIELD("p_max", p_max),
      NOMA_REAL_FIELD("snr_db", snr_db),
      NOMA_REAL_FIELD("e_fly", e_fly),
      NOMA_REAL_FIELD("ch_th", ch_th),
      NOMA_REAL_FIELD("p_th", p_th),
      NOMA_REAL_FIELD("tolerance_frac", tolerance_frac),
      NOMA_REAL_FIELD("drift_db", drift_db),
      NOMA_REAL_FIELD("rate_tol", rate_tol),
      NOMA_INT_FIELD("max_iters", max_iters),
      NOMA_REAL_FIELD("espa_grid_step", espa_grid_step),
      NOMA_ENUM_FIELD("fading", fading, parse_fading_mode, kFadingModes),
      NOMA_ENUM_FIELD("scheme", scheme, parse_scheme, kSchemes),
      NOMA_ENUM_FIELD("power_scheme", power_scheme, parse_power_method, kPowerMethods),
      NOMA_ENUM_FIELD("repair_policy", repair_policy, parse_repair_policy, kRepairPolicies),
      NOMA_INT_FIELD("seed", seed),
  };
  return table;
}

#undef NOMA_REAL_FIELD
#undef NOMA_INT_FIELD
#undef NOMA_ENUM_FIELD

} // namespace

std::string_view to_string(Scheme s) { return name_of(kSchemes, s); }
std::string_view to_string(PowerMethod m) { return name_of(kPowerMethods, m); }
std::string_view to_string(FadingMode f) { return name_of(kFadingModes, f); }
std::string_view to_string(RepairPolicy r) { return name_of(kRepairPolicies, r); }

std::optional<Scheme> parse_scheme(std::string_view text) { return lookup(kSchemes, text); }
std::optional<PowerMethod> parse_power_method(std::string_view text)
{
  return lookup(kPowerMethods, text);
}
std::optional<FadingMode> parse_fading_mode(std::string_view text)
{
  return lookup(kFadingModes, text);
}
std::optional<RepairPolicy> parse_repair_policy(std::string_view text)
{
  return lookup(kRepairPolicies, text);
}

ScenarioConfig parse_scenario_text(std::string_view text)
{
  ScenarioConfig cfg;
  std::set<std::string_view> seen;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const Field& f) { return f.key == key; });
    if (it == table.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
    if (!seen.insert(it->key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) +
                        "' given twice");
    }
    if (value.empty() || !it->set(cfg, value)) {
      throw ConfigError(std::string(key) + ": invalid value '" + std::string(value) + "'");
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig parse_scenario_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open scenario file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string to_scenario_text(const ScenarioConfig& cfg)
{
  std::string out;
  for (const Field& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(cfg);
    out += '\n';
  }
  return out;
}

} // namespace noma_uav
