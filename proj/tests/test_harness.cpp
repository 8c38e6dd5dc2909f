#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "magicspread/scenarios.hpp"
#include "test_util.hpp"

using namespace magicspread;

TEST(Config, ParsesCommentsAndOverrides) {
  const Config c = Config::parse("# header\nL = 30\nboundary=periodic  # trailing\n\np = 0.25\nL=34\nf_grid = 0.1, 0.2,0.3\n");
  EXPECT_EQ(c.get_uint("L"), 34u);
  EXPECT_EQ(c.get_string("boundary"), "periodic");
  EXPECT_DOUBLE_EQ(c.get_double("p"), 0.25);
  EXPECT_EQ(c.get_doubles("f_grid", {}), (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_EQ(c.get_uint("missing", 7), 7u);
  EXPECT_THROW(c.get_uint("missing"), ConfigError);
  EXPECT_THROW(Config::parse("no equals sign"), ConfigError);
  EXPECT_THROW(Config::parse("= 3"), ConfigError);
}

TEST(Config, TypeErrors) {
  const Config c = Config::parse("L = thirty\np = 0.1x\nflag = maybe\n");
  EXPECT_THROW(c.get_uint("L"), ConfigError);
  EXPECT_THROW(c.get_double("p"), ConfigError);
  EXPECT_THROW(c.get_bool("flag", false), ConfigError);
  EXPECT_THROW(Config::load("/nonexistent/file.cfg"), ConfigError);
}

TEST(SpecFromConfig, DefaultsAndOneBasedSite) {
  const CircuitSpec s = spec_from_config(Config::parse("L = 30\n"));
  EXPECT_EQ(s.L, 30u);
  EXPECT_EQ(s.t_max, 60u);
  EXPECT_EQ(s.injection_site, 14u);
  EXPECT_EQ(s.boundary, Boundary::Open);
  EXPECT_EQ(s.ensemble, Ensemble::RandomClifford);
  const CircuitSpec t = spec_from_config(Config::parse("L = 8\ninjection_site = 1\nensemble = sdki_f\n"));
  EXPECT_EQ(t.injection_site, 0u);
  EXPECT_EQ(t.ensemble, Ensemble::SdkiF);
  EXPECT_THROW(spec_from_config(Config::parse("L = 8\ninjection_site = 9\n")), ConfigError);
  EXPECT_THROW(spec_from_config(Config::parse("L = 8\nensemble = haar\n")), ConfigError);
  EXPECT_THROW(spec_from_config(Config::parse("L = 8\np = 2\n")), ConfigError);
  EXPECT_THROW(spec_from_config(Config::parse("L = 7\n")), ConfigError);
  EXPECT_THROW(spec_from_config(Config::parse("p = 0.1\n")), ConfigError);
}

TEST(FitWindow, ConfigOverrides) {
  const FitWindow d = fit_window_from_config(Config::parse(""), 64);
  EXPECT_EQ(d.value_lo, 8.0);
  EXPECT_EQ(d.value_hi, 32.0);
  EXPECT_EQ(d.t_min, 2.0);
  const FitWindow w = fit_window_from_config(Config::parse("fit_window = 4:20\nfit_t_min = 1\n"), 64);
  EXPECT_EQ(w.value_lo, 4.0);
  EXPECT_EQ(w.value_hi, 20.0);
  EXPECT_EQ(w.t_min, 1.0);
  EXPECT_EQ(fit_window_from_config(Config::parse("fit_window = :40\n"), 64).value_hi, 40.0);
  EXPECT_THROW(fit_window_from_config(Config::parse("fit_window = 40:4\n"), 64), ConfigError);
  EXPECT_THROW(fit_window_from_config(Config::parse("fit_window = 40\n"), 64), ConfigError);
}

TEST(FitEarlySlope, ExactLines) {
  std::vector<std::pair<double, double>> a, b;
  for (int t = 0; t <= 20; ++t) {
    a.emplace_back(t, 4.0 * t);
    b.emplace_back(t, 2.0 * t + 3);
  }
  const FitWindow w{-1e9, 1e9, 0};
  EXPECT_NEAR(fit_early_slope(a, w).velocity, 2.0, 1e-12);
  const FitResult fb = fit_early_slope(b, w);
  EXPECT_NEAR(fb.velocity, 1.0, 1e-12);
  EXPECT_NEAR(fb.intercept, 3.0, 1e-12);
  EXPECT_NEAR(fb.residual_rms, 0.0, 1e-12);
  EXPECT_EQ(fb.points, 21u);
}

TEST(FitEarlySlope, DefaultWindowSelectsValues) {
  std::vector<std::pair<double, double>> s;
  for (int t = 0; t <= 30; ++t) s.emplace_back(t, 2.0 * t);
  const FitResult f = fit_early_slope(s, FitWindow::default_for(64));
  EXPECT_EQ(f.t_lo, 4.0);
  EXPECT_EQ(f.t_hi, 16.0);
  EXPECT_THROW(fit_early_slope({{0, 0}, {1, 9}}, FitWindow::default_for(64)), InsufficientPoints);
}

TEST(FitEarlySlope, NoisyLine) {
  std::mt19937_64 eng(269);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::pair<double, double>> s;
  for (int t = 0; t < 100; ++t) s.emplace_back(t, 4.0 * t + noise(eng));
  EXPECT_NEAR(fit_early_slope(s, FitWindow{-1e9, 1e9, 0}).velocity, 2.0, 0.05);
}

TEST(ParallelMap, IndexOrderAndExceptions) {
  const auto v = parallel_map(100, 4, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], i * i);
  EXPECT_TRUE(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
  EXPECT_THROW(parallel_map(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                              return i;
                            }),
               std::runtime_error);
}

TEST(MeanAccumulator, MeanAndStandardError) {
  MeanAccumulator m;
  for (double v : {1.0, 2.0, 3.0, 4.0}) m.add(v);
  EXPECT_DOUBLE_EQ(m.mean(), 2.5);
  EXPECT_NEAR(m.stderr_of_mean(), std::sqrt(5.0 / 3.0 / 4.0), 1e-12);
}

TEST(Scenarios, WorkerCountDoesNotChangeOutputs) {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "magicspread_harness_test";
  fs::remove_all(base);
  std::ostringstream log;
  auto run = [&](std::size_t workers, const std::string& sub) {
    ScenarioContext ctx;
    ctx.config = Config::parse("L = 14\nt_max = 20\nrealizations = 12\np_grid = 0, 0.5\nseed = 11\nfit_window = 2:7\n");
    ctx.out_dir = base / sub;
    ctx.workers = workers;
    ctx.log = &log;
    return run_spread(ctx);
  };
  EXPECT_EQ(run(1, "a").exit_code, kExitOk);
  EXPECT_EQ(run(3, "b").exit_code, kExitOk);
  for (const char* name : {"spread.csv", "fit.csv", "checks.csv"}) {
    std::ifstream fa(base / "a" / name), fb(base / "b" / name);
    const std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, sb) << name;
  }
  fs::remove_all(base);
}

TEST(Scenarios, SdkifTrajectoryPasses) {
  const SdkifCheck chk = sdkif_trajectory(30, 5);
  EXPECT_TRUE(chk.passed());
  EXPECT_EQ(chk.t_star, 5u);
  ASSERT_EQ(chk.records.size(), 6u);
  EXPECT_EQ(chk.records[5].mlmi.size(), 3u);
  EXPECT_EQ(chk.records[5].fleom, 30u);
  for (std::size_t t = 1; t < 5; ++t) EXPECT_EQ(chk.records[t].fleom, 2 * t + 2);
}

TEST(Scenarios, LogicalSnapshotSelfChecks) {
  Rng rng(271);
  CodeState cs = inject_t(initial_state(InitialKind::BellPairs, 10, rng), 4);
  const MlmiSet m = minimal_intervals(cs);
  const json j = logical_snapshot(cs, m, 0);
  EXPECT_EQ(j["t"], 0);
  EXPECT_EQ(j["mlmi"].size(), 1u);
  cs.logical_z = PauliString::single(10, 0, 'X');  // anticommutes with Z1Z2
  EXPECT_THROW(logical_snapshot(cs, m, 0), std::logic_error);
}
