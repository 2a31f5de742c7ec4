#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "noma_uav/engine.hpp"

namespace noma_uav {

std::string_view to_string(Scheme s);
std::string_view to_string(PowerMethod m);
std::string_view to_string(FadingMode f);
std::string_view to_string(RepairPolicy r);

std::optional<Scheme> parse_scheme(std::string_view text);
std::optional<PowerMethod> parse_power_method(std::string_view text);
std::optional<FadingMode> parse_fading_mode(std::string_view text);
std::optional<RepairPolicy> parse_repair_policy(std::string_view text);

/// Parses `key = value` lines. Blank lines and text after `#` are ignored; keys
/// not given keep their ScenarioConfig defaults. The result is validated.
/// Throws ConfigError: syntax errors and unknown or repeated keys carry the line
/// number, bad values carry the key name.
ScenarioConfig parse_scenario_text(std::string_view text);

/// Reads and parses a scenario file. A missing or unreadable file is a ConfigError.
ScenarioConfig parse_scenario_file(const std::filesystem::path& path);

/// Every key with its resolved value, one per line, in a fixed order.
/// parse_scenario_text(to_scenario_text(c)) == c for any valid c.
std::string to_scenario_text(const ScenarioConfig& cfg);

} // namespace noma_uav
