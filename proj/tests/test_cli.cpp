#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = MAGICSPREAD_CLI;
const fs::path kConfigs = MAGICSPREAD_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("magicspread_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_cfg(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.cfg";
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Cli, SpreadWritesSchemaAndManifest) {
  const fs::path d = scratch("spread");
  ASSERT_EQ(run("spread --config " + (kConfigs / "small_spread.cfg").string() + " --out " + d.string() + " --workers 2",
                d / "log.txt"),
            0)
      << slurp(d / "log.txt");
  const std::string csv = slurp(d / "spread.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,t,mean_W,mean_l,se_W,se_l,n");
  const auto m = nlohmann::json::parse(slurp(d / "manifest.jsonl"));
  for (const char* key : {"subcommand", "config", "seed", "version", "wall_time_s", "timestamp", "outputs", "exit_code"})
    EXPECT_TRUE(m.contains(key)) << key;
  EXPECT_EQ(m["subcommand"], "spread");
  EXPECT_EQ(m["config"]["L"], "14");
}

TEST(Cli, RerunsAreByteIdentical) {
  const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
  const std::string cfg = (kConfigs / "small_spread.cfg").string();
  ASSERT_EQ(run("spread --config " + cfg + " --out " + a.string() + " --workers 1", a / "log.txt"), 0);
  ASSERT_EQ(run("spread --config " + cfg + " --out " + b.string() + " --workers 3", b / "log.txt"), 0);
  for (const char* name : {"spread.csv", "fit.csv", "checks.csv"}) EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
}

TEST(Cli, SeedOverrideChangesData) {
  const fs::path a = scratch("seed_a"), b = scratch("seed_b");
  const std::string cfg = (kConfigs / "small_spread.cfg").string();
  ASSERT_EQ(run("spread --config " + cfg + " --out " + a.string(), a / "log.txt"), 0);
  ASSERT_EQ(run("spread --config " + cfg + " --out " + b.string() + " --seed 99", b / "log.txt"), 0);
  EXPECT_NE(slurp(a / "spread.csv"), slurp(b / "spread.csv"));
  EXPECT_EQ(nlohmann::json::parse(slurp(b / "manifest.jsonl"))["seed"], "99");
}

TEST(Cli, ConfigErrorsExitTwo) {
  const fs::path d = scratch("config_errors");
  EXPECT_EQ(run("spread --out " + d.string(), d / "log.txt"), 2);
  EXPECT_EQ(run("spread --config " + (d / "missing.cfg").string(), d / "log.txt"), 2);
  EXPECT_EQ(run("spread --config " + write_cfg(d, "L = 14\nensemble = haar\n").string() + " --out " + d.string(),
                d / "log.txt"),
            2);
  EXPECT_EQ(run("spread --config " + write_cfg(d, "just words\n").string() + " --out " + d.string(), d / "log.txt"), 2);
  EXPECT_EQ(run("oracle-check --Lmax 13 --out " + d.string(), d / "log.txt"), 2);
  EXPECT_EQ(run("no-such-command", d / "log.txt"), 2);
}

TEST(Cli, StarvationExitsThree) {
  const fs::path d = scratch("starved");
  // T on |0> adds no magic, so every realization is rejected at t = 0.
  const fs::path cfg = write_cfg(d, "L = 8\ninitial = all_zero\nt_max = 0\nrealizations = 4\nmin_accepted = 2\n"
                                    "interplay_case = 2\n");
  EXPECT_EQ(run("interplay --config " + cfg.string() + " --out " + d.string(), d / "log.txt"), 3) << slurp(d / "log.txt");
}

TEST(Cli, RuntimeErrorExitsOne) {
  const fs::path d = scratch("runtime");
  // Output directory blocked by a regular file.
  const fs::path blocker = d / "blocker";
  std::ofstream(blocker) << "x";
  EXPECT_EQ(run("velocities --out " + (blocker / "sub").string(), d / "log.txt"), 1) << slurp(d / "log.txt");
}

TEST(Cli, SdkifExactPrintsPassLines) {
  const fs::path d = scratch("sdkif");
  ASSERT_EQ(run("sdkif-exact --config " + (kConfigs / "sdkif_exact.cfg").string() + " --out " + d.string(), d / "log.txt"),
            0);
  const std::string log = slurp(d / "log.txt");
  EXPECT_NE(log.find("PASS W(t) = 2t + 2"), std::string::npos) << log;
  EXPECT_EQ(log.find("FAIL"), std::string::npos) << log;
  EXPECT_TRUE(fs::exists(d / "sdkif.csv"));
}

TEST(Cli, OracleCheckSmall) {
  const fs::path d = scratch("oracle");
  const fs::path cfg = write_cfg(d, "Lmin = 2\nLmax = 5\ncircuits_per_L = 10\nregions_per_state = 5\n");
  EXPECT_EQ(run("oracle-check --config " + cfg.string() + " --out " + d.string(), d / "log.txt"), 0);
  EXPECT_NE(slurp(d / "log.txt").find("0 violations"), std::string::npos);
}

TEST(Cli, DumpLogicalsFrozenAtFullDoping) {
  const fs::path d = scratch("dump");
  const fs::path cfg = write_cfg(d, "L = 10\np = 1\nt_max = 5\n");
  ASSERT_EQ(run("dump-logicals --config " + cfg.string() + " --out " + d.string(), d / "log.txt"), 0);
  std::ifstream in(d / "logicals.jsonl");
  std::string line, first_z;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (lines == 0) first_z = j["logical_z"];
    EXPECT_EQ(j["logical_z"], first_z);
    EXPECT_EQ(j["t"], lines);
    ++lines;
  }
  EXPECT_EQ(lines, 6u);
}

TEST(Cli, ChannelAndDistRun) {
  const fs::path d = scratch("channel");
  const fs::path cfg = write_cfg(d, "L = 12\np = 0.1\nt_list = 4, 24\nf_grid = 0.25, 0.75\nn_b_samples = 50\n");
  ASSERT_EQ(run("channel --config " + cfg.string() + " --out " + d.string(), d / "log.txt"), 0) << slurp(d / "log.txt");
  const std::string csv = slurp(d / "channel.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "source,t,f,b_size,c_tilde,stderr,n_samples");
  const fs::path e = scratch("dist");
  const fs::path cfg2 = write_cfg(e, "L = 14\nt_max = 20\nrealizations = 6\nfit_window = 2:7\n");
  ASSERT_EQ(run("dist --config " + cfg2.string() + " --out " + e.string(), e / "log.txt"), 0) << slurp(e / "log.txt");
  EXPECT_TRUE(fs::exists(e / "dist.csv"));
  EXPECT_TRUE(fs::exists(e / "typ.csv"));
}
