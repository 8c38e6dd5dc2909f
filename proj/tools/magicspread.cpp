#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "magicspread/scenarios.hpp"

#ifndef MAGICSPREAD_VERSION
#define MAGICSPREAD_VERSION "0.1.0"
#endif

namespace ms = magicspread;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::size_t workers = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> lmax;
};

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int run(const std::string& name, const Options& opt, const std::function<ms::ScenarioOutcome(const ms::ScenarioContext&)>& fn,
        bool config_required) {
  ms::ScenarioContext ctx;
  try {
    if (!opt.config.empty()) {
      ctx.config = ms::Config::load(opt.config);
    } else if (config_required) {
      throw ms::ConfigError(name + " needs --config");
    }
    if (opt.seed) ctx.config.set("seed", std::to_string(*opt.seed));
    if (opt.lmax) ctx.config.set("Lmax", std::to_string(*opt.lmax));
  } catch (const ms::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ms::kExitConfig;
  }
  ctx.out_dir = opt.out;
  ctx.workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());

  const auto start = std::chrono::steady_clock::now();
  ms::ScenarioOutcome outcome;
  try {
    outcome = fn(ctx);
  } catch (const ms::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ms::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ms::kExitRuntime;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ms::json manifest = {{"subcommand", name},
                       {"config", ctx.config.values()},
                       {"seed", ctx.config.get_string("seed", "0")},
                       {"workers", ctx.workers},
                       {"version", MAGICSPREAD_VERSION},
                       {"wall_time_s", wall},
                       {"timestamp", utc_timestamp()},
                       {"outputs", outcome.outputs},
                       {"summary", outcome.summary},
                       {"exit_code", outcome.exit_code}};
  std::filesystem::create_directories(ctx.out_dir);
  std::ofstream(ctx.out_dir / "manifest.jsonl") << manifest.dump() << "\n";
  if (outcome.exit_code == ms::kExitStarved) std::cerr << "error: too few realizations injected magic\n";
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magic spreading in Clifford circuits with one injected T gate"};
  app.require_subcommand(1);
  Options opt;

  struct Entry {
    const char* name;
    const char* help;
    std::function<ms::ScenarioOutcome(const ms::ScenarioContext&)> fn;
    bool config_required;
  };
  const Entry entries[] = {
      {"spread", "ensemble means of W(t) and l(t), early-slope velocities", ms::run_spread, true},
      {"interplay", "W(t) for (U T U^dagger) V |psi0> in the four U/V cases", ms::run_interplay_scenario, true},
      {"channel", "capacity proxy versus erased fraction, with the global random code baseline", ms::run_channel, true},
      {"sdkif-exact", "deterministic SDKI-f trajectory with PASS/FAIL lines", ms::run_sdkif_exact, false},
      {"dist", "MLMI width histograms and l_typ(t)", ms::run_dist, true},
      {"velocities", "closed-form butterfly and entanglement velocities", ms::run_velocities, false},
      {"oracle-check", "gauge algorithms versus the dense oracle at small L", ms::run_oracle_check, false},
      {"dump-logicals", "logical representatives per time step", ms::run_dump_logicals, true},
  };
  std::map<CLI::App*, const Entry*> by_cmd;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", opt.config, "flat key=value config file");
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--workers", opt.workers, "worker threads (default: hardware concurrency)");
    sub->add_option("--seed", opt.seed, "override the config seed");
    if (std::string(e.name) == "oracle-check") sub->add_option("--Lmax", opt.lmax, "largest system size");
    by_cmd[sub] = &e;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ms::kExitConfig;
  }
  for (const auto& [sub, e] : by_cmd)
    if (sub->parsed()) return run(e->name, opt, e->fn, e->config_required);
  return ms::kExitConfig;
}
