#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noma_uav::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point shared by the executable and the CLI tests.
///   run     --scenario <path> [--seed <int>] [--scheme <name>] [--power <name>] --out <dir>
///   compare --scenario <path> --seeds <n> --out <dir>
/// NOMA_UAV_SEED, when set, replaces --seed (and the first compare seed).
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, from an argument list without the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace noma_uav::app
