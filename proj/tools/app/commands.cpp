#include "commands.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "noma_uav/engine.hpp"
#include "noma_uav/errors.hpp"
#include "noma_uav/report.hpp"
#include "noma_uav/scenario_file.hpp"

namespace noma_uav::app {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSeedEnv = "NOMA_UAV_SEED";
constexpr std::size_t kMaxSeeds = 100000;

struct RunOptions {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string scheme;
  std::string power;
  std::string out_dir;
};

struct CompareOptions {
  std::string scenario;
  std::size_t seeds = 0;
  std::string power;
  std::string out_dir;
};

std::optional<std::uint64_t> seed_from_env()
{
  const char* raw = std::getenv(kSeedEnv);
  if (raw == nullptr) {
    return std::nullopt;
  }
  const std::string_view text(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(kSeedEnv) + ": not a non-negative integer: '" +
                      std::string(text) + "'");
  }
  return v;
}

void apply_overrides(ScenarioConfig& cfg, std::optional<std::uint64_t> seed,
                     const std::string& scheme, const std::string& power)
{
  if (seed) {
    cfg.seed = *seed;
  }
  if (const auto env = seed_from_env()) {
    cfg.seed = *env;
  }
  if (!scheme.empty()) {
    cfg.scheme = *parse_scheme(scheme);
  }
  if (!power.empty()) {
    cfg.power_scheme = *parse_power_method(power);
  }
  cfg.validate();
}

/// Files written by one command; removed again if the command fails part way.
class OutputSet {
public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, std::string_view content)
  {
    fs::create_directories(dir_);
    const fs::path p = dir_ / name;
    write_file_atomic(p, content);
    written_.push_back(p);
  }

  void discard() noexcept
  {
    for (const fs::path& p : written_) {
      std::error_code ignored;
      fs::remove(p, ignored);
    }
    written_.clear();
  }

  const std::vector<fs::path>& written() const { return written_; }

private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

int run_command(const RunOptions& opts, std::ostream& out)
{
  ScenarioConfig cfg = parse_scenario_file(opts.scenario);
  apply_overrides(cfg, opts.seed, opts.scheme, opts.power);

  const RunResult result = run(cfg);

  OutputSet files(opts.out_dir);
  try {
    files.write("timeseries.csv", timeseries_csv(result.records));
    files.write("summary.csv", summary_csv(cfg.scheme, cfg.seed, result.summary));
    files.write("scenario.txt", to_scenario_text(cfg));
  } catch (...) {
    files.discard();
    throw;
  }
  for (const fs::path& p : files.written()) {
    out << "wrote " << p.string() << '\n';
  }
  return kExitOk;
}

int compare_command(const CompareOptions& opts, std::ostream& out)
{
  ScenarioConfig base = parse_scenario_file(opts.scenario);
  apply_overrides(base, std::nullopt, "", opts.power);

  constexpr std::array<Scheme, 3> kSchemes{Scheme::proposed, Scheme::greedy, Scheme::nongreedy};
  const std::size_t cells = opts.seeds * kSchemes.size();
  std::vector<CompareRow> rows(cells);
  std::vector<std::exception_ptr> errors(cells);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  // Cells share only the read-only base config; each run owns its state.
  const auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells) {
        return;
      }
      try {
        ScenarioConfig cfg = base;
        cfg.seed = base.seed + i / kSchemes.size();
        cfg.scheme = kSchemes[i % kSchemes.size()];
        rows[i] = {cfg.seed, cfg.scheme, run(cfg).summary};
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(hw, cells); ++t) {
    pool.emplace_back(worker);
  }
  for (std::thread& t : pool) {
    t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }

  OutputSet files(opts.out_dir);
  try {
    files.write("compare.csv", compare_csv(rows));
    files.write("scenario.txt", to_scenario_text(base));
  } catch (...) {
    files.discard();
    throw;
  }
  for (const fs::path& p : files.written()) {
    out << "wrote " << p.string() << '\n';
  }
  return kExitOk;
}

std::vector<std::string> names_of_schemes() { return {"proposed", "greedy", "nongreedy"}; }
std::vector<std::string> names_of_power() { return {"bisect", "espa", "fixed"}; }

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Uplink NOMA UAV pairing simulator", "noma-uav"};
  app.require_subcommand(1);

  RunOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one scheme on one seed");
  run_cmd->add_option("--scenario", run_opts.scenario, "Scenario file (key = value)")
      ->required();
  run_cmd->add_option("--seed", run_opts.seed, "Run seed (overridden by NOMA_UAV_SEED)");
  run_cmd->add_option("--scheme", run_opts.scheme, "Pairing scheme")
      ->check(CLI::IsMember(names_of_schemes()));
  run_cmd->add_option("--power", run_opts.power, "Power search for the proposed scheme")
      ->check(CLI::IsMember(names_of_power()));
  run_cmd->add_option("--out", run_opts.out_dir, "Output directory")->required();

  CompareOptions cmp_opts;
  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "Run all three schemes over consecutive seeds");
  cmp_cmd->add_option("--scenario", cmp_opts.scenario, "Scenario file (key = value)")
      ->required();
  cmp_cmd->add_option("--seeds", cmp_opts.seeds, "Number of seeds, starting at the scenario seed")
      ->required()
      ->check(CLI::Range(std::size_t{1}, kMaxSeeds));
  cmp_cmd->add_option("--power", cmp_opts.power, "Power search for the proposed scheme")
      ->check(CLI::IsMember(names_of_power()));
  cmp_cmd->add_option("--out", cmp_opts.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const CLI::App* target = run_cmd->parsed()   ? run_cmd
                             : cmp_cmd->parsed() ? cmp_cmd
                                                 : &app;
    if (e.get_exit_code() == 0) {
      out << target->help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << target->help();
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed()) {
      return run_command(run_opts, out);
    }
    return compare_command(cmp_opts, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("noma-uav");
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace noma_uav::app
