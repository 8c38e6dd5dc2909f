#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "channel.hpp"
#include "circuits.hpp"
#include "harness.hpp"
#include "lengthscales.hpp"
#include "oracle.hpp"

namespace magicspread {

using json = nlohmann::ordered_json;

/// Exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitStarved = 3;

struct ScenarioContext {
  Config config;
  std::filesystem::path out_dir = ".";
  std::size_t workers = 1;
  std::ostream* log = &std::cout;
};

struct ScenarioOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> outputs;
  json summary = json::object();
};

namespace detail {

inline std::string out_path(const ScenarioContext& ctx, const std::string& name) {
  std::filesystem::create_directories(ctx.out_dir);
  return (ctx.out_dir / name).string();
}

inline json intervals_json(const std::vector<Interval>& ivs) {
  json a = json::array();
  for (const auto& iv : ivs) a.push_back({iv.start, iv.end, iv.wraps});
  return a;
}

inline double reference_v_e(double p, Ensemble e) {
  try {
    return v_entanglement(v_butterfly(p, e));
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

inline Observables observables_from(const Config& c) {
  Observables o;
  o.wrapping = c.get_bool("wrapping", false);
  o.check_full = c.get_bool("check_full", true);
  return o;
}

/// Fit row fields; a failed fit yields "nan" entries and an error string.
inline std::vector<std::string> fit_fields(const std::vector<std::pair<double, double>>& series, const FitWindow& w,
                                           double reference, json& status) {
  try {
    const FitResult f = fit_early_slope(series, w);
    status = {{"velocity", f.velocity}, {"ratio", f.velocity / reference}, {"points", f.points}};
    return {fmt(f.slope), fmt(f.intercept), fmt(f.t_lo), fmt(f.t_hi), std::to_string(f.points), fmt(f.velocity),
            fmt(f.residual_rms), fmt(reference), fmt(f.velocity / reference)};
  } catch (const InsufficientPoints& e) {
    status = {{"error", e.what()}};
    return {"nan", "nan", "nan", "nan", "0", "nan", "nan", fmt(reference), "nan"};
  }
}

}  // namespace detail

/// Ensemble means of W(t) and l(t) per doping value, early-slope fits and invariant tallies.
inline ScenarioOutcome run_spread(const ScenarioContext& ctx) {
  const Config& c = ctx.config;
  CircuitSpec spec = spec_from_config(c);
  const std::size_t R = c.get_uint("realizations", 100);
  const auto p_grid = c.get_doubles("p_grid", {spec.p});
  const FitWindow window = fit_window_from_config(c, spec.L);
  const Observables obs = detail::observables_from(c);
  const std::size_t dump_n = c.get_uint("dump_mlmi_realizations", 0);
  if (!spec.centered_bell_pair() && spec.initial == InitialKind::BellPairs)
    *ctx.log << "warning: L = " << spec.L << " is not 2 mod 4; the central Bell pair does not straddle the middle bond\n";

  ScenarioOutcome out;
  CsvWriter series(detail::out_path(ctx, "spread.csv"), {"p", "t", "mean_W", "mean_l", "se_W", "se_l", "n"});
  CsvWriter fits(detail::out_path(ctx, "fit.csv"),
                 {"p", "observable", "slope", "intercept", "t_lo", "t_hi", "points", "velocity", "residual_rms",
                  "reference_velocity", "ratio"});
  CsvWriter checks(detail::out_path(ctx, "checks.csv"),
                   {"p", "realizations", "rejected", "full_violations", "lml_step_violations", "fleom_bound_violations"});
  std::ofstream dump;
  if (dump_n > 0) {
    dump.open(detail::out_path(ctx, "mlmi.jsonl"));
    out.outputs.push_back(detail::out_path(ctx, "mlmi.jsonl"));
  }
  json per_p = json::array();
  for (double p : p_grid) {
    spec.p = p;
    spec.validate();
    const auto results = parallel_map(R, ctx.workers, [&](std::size_t i) { return run_realization(spec, obs, i); });
    std::vector<MeanAccumulator> W(spec.t_max + 1), l(spec.t_max + 1);
    std::size_t rejected = 0, full_bad = 0, step_bad = 0, bound_bad = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& res = results[i];
      if (res.rejected) {
        ++rejected;
        continue;
      }
      const auto& recs = res.records;
      for (std::size_t k = 0; k < recs.size(); ++k) {
        const auto& r = recs[k];
        W[r.t].add(static_cast<double>(r.fleom));
        l[r.t].add(static_cast<double>(r.lml));
        if (obs.check_full && r.full_state_class != MagicClass::Full) ++full_bad;
        if (k > 0 && (r.lml > recs[k - 1].lml + 2 || recs[k - 1].lml > r.lml + 2)) ++step_bad;
        if (r.fleom > recs[0].fleom + 6 * r.t) ++bound_bad;
        if (i < dump_n)
          dump << json{{"p", p}, {"realization", i}, {"t", r.t}, {"intervals", detail::intervals_json(r.mlmi)},
                       {"lml", r.lml}, {"fleom", r.fleom}}
                      .dump()
               << "\n";
      }
    }
    std::vector<std::pair<double, double>> sw, sl;
    for (std::size_t t = 0; t <= spec.t_max; ++t) {
      if (W[t].n == 0) continue;
      series.row({fmt(p), std::to_string(t), fmt(W[t].mean()), fmt(l[t].mean()), fmt(W[t].stderr_of_mean()),
                  fmt(l[t].stderr_of_mean()), std::to_string(W[t].n)});
      sw.emplace_back(static_cast<double>(t), W[t].mean());
      sl.emplace_back(static_cast<double>(t), l[t].mean());
    }
    const double ve = detail::reference_v_e(p, spec.ensemble);
    json fw, fl;
    auto row_w = detail::fit_fields(sw, window, 2.0 * ve, fw);
    auto row_l = detail::fit_fields(sl, window, ve, fl);
    row_w.insert(row_w.begin(), {fmt(p), "W"});
    row_l.insert(row_l.begin(), {fmt(p), "l"});
    fits.row(row_w);
    fits.row(row_l);
    checks.row({fmt(p), std::to_string(R), std::to_string(rejected), std::to_string(full_bad), std::to_string(step_bad),
                std::to_string(bound_bad)});
    per_p.push_back({{"p", p},
                     {"v_E", ve},
                     {"fit_W", fw},
                     {"fit_l", fl},
                     {"rejected", rejected},
                     {"full_violations", full_bad},
                     {"lml_step_violations", step_bad},
                     {"fleom_bound_violations", bound_bad}});
  }
  out.outputs.insert(out.outputs.begin(), {series.path(), fits.path(), checks.path()});
  out.summary = {{"fit_window", {window.value_lo, window.value_hi}}, {"fit_t_min", window.t_min}, {"per_p", per_p}};
  return out;
}

/// Histograms of MLMI widths per time step and the modal width l_typ(t).
inline ScenarioOutcome run_dist(const ScenarioContext& ctx) {
  const Config& c = ctx.config;
  const CircuitSpec spec = spec_from_config(c);
  const std::size_t R = c.get_uint("realizations", 100);
  const FitWindow window = fit_window_from_config(c, spec.L);
  Observables obs = detail::observables_from(c);
  obs.lml = false;
  obs.check_full = false;
  const auto results = parallel_map(R, ctx.workers, [&](std::size_t i) { return run_realization(spec, obs, i); });
  std::vector<std::map<std::size_t, std::size_t>> hist(spec.t_max + 1);
  std::size_t rejected = 0;
  for (const auto& res : results) {
    if (res.rejected) {
      ++rejected;
      continue;
    }
    for (const auto& r : res.records)
      for (auto w : r.mlmi_widths) ++hist[r.t][w];
  }
  ScenarioOutcome out;
  CsvWriter d(detail::out_path(ctx, "dist.csv"), {"t", "width", "count"});
  CsvWriter typ(detail::out_path(ctx, "typ.csv"), {"t", "l_typ", "n_intervals"});
  std::vector<std::pair<double, double>> series;
  for (std::size_t t = 0; t <= spec.t_max; ++t) {
    if (hist[t].empty()) continue;
    std::size_t total = 0;
    for (const auto& [w, n] : hist[t]) {
      d.row({std::to_string(t), std::to_string(w), std::to_string(n)});
      total += n;
    }
    const std::size_t lt = typical_length(hist[t]);
    typ.row({std::to_string(t), std::to_string(lt), std::to_string(total)});
    series.emplace_back(static_cast<double>(t), static_cast<double>(lt));
  }
  CsvWriter fits(detail::out_path(ctx, "fit.csv"),
                 {"observable", "slope", "intercept", "t_lo", "t_hi", "points", "velocity", "residual_rms",
                  "reference_velocity", "ratio"});
  json fs;
  auto row = detail::fit_fields(series, window, detail::reference_v_e(spec.p, spec.ensemble), fs);
  row.insert(row.begin(), "l_typ");
  fits.row(row);
  out.outputs = {d.path(), typ.path(), fits.path()};
  out.summary = {{"fit", fs},
                 {"late_l_typ", series.empty() ? 0.0 : series.back().second},
                 {"rejected", rejected},
                 {"fit_window", {window.value_lo, window.value_hi}}};
  return out;
}

/// W(t) for (U_t T U_t^dagger) V_t |psi0>, post-selected on successful injection.
inline ScenarioOutcome run_interplay_scenario(const ScenarioContext& ctx) {
  const Config& c = ctx.config;
  const CircuitSpec spec = spec_from_config(c);
  const std::size_t R = c.get_uint("realizations", 100);
  const std::size_t min_accepted = c.get_uint("min_accepted", 1);
  const auto cases = c.get_uints("interplay_case", {1, 2, 3, 4});
  Observables obs = detail::observables_from(c);
  obs.check_full = false;
  ScenarioOutcome out;
  CsvWriter csv(detail::out_path(ctx, "interplay.csv"),
                {"case", "t", "mean_W", "se_W", "mean_l", "se_l", "accepted", "rejected"});
  bool starved = false;
  json starved_at = json::array();
  for (auto k : cases) {
    if (k < 1 || k > 4) throw ConfigError("interplay_case entries must be 1..4");
    const auto which = static_cast<InterplayCase>(k);
    const auto results =
        parallel_map(R, ctx.workers, [&](std::size_t i) { return run_interplay(spec, which, obs, i); });
    for (std::size_t t = 0; t <= spec.t_max; ++t) {
      MeanAccumulator W, l;
      std::size_t rej = 0;
      for (const auto& res : results) {
        if (!res[t]) {
          ++rej;
          continue;
        }
        W.add(static_cast<double>(res[t]->fleom));
        l.add(static_cast<double>(res[t]->lml));
      }
      csv.row({std::to_string(k), std::to_string(t), fmt(W.mean()), fmt(W.stderr_of_mean()), fmt(l.mean()),
               fmt(l.stderr_of_mean()), std::to_string(W.n), std::to_string(rej)});
      if (W.n < min_accepted) {
        starved = true;
        starved_at.push_back({{"case", k}, {"t", t}, {"accepted", W.n}});
      }
    }
  }
  const double vb = spec.ensemble == Ensemble::SdkiF && spec.p > 0 ? std::numeric_limits<double>::quiet_NaN()
                                                                    : v_butterfly(spec.p, spec.ensemble);
  const double ve = detail::reference_v_e(spec.p, spec.ensemble);
  out.outputs = {csv.path()};
  out.summary = {{"v_B", vb}, {"two_v_E", 2 * ve}, {"v_max", vb + 2 * ve}, {"starved", starved_at}};
  if (starved) out.exit_code = kExitStarved;
  return out;
}

/// Capacity proxy of one evolved circuit instance and of the global random code.
inline ScenarioOutcome run_channel(const ScenarioContext& ctx) {
  const Config& c = ctx.config;
  const CircuitSpec spec = spec_from_config(c);
  const auto t_list = c.get_uints("t_list", {4 * spec.L});
  const auto f_grid = c.get_doubles("f_grid", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7});
  const std::size_t n_b = c.get_uint("n_b_samples", 2000);
  const bool baseline = c.get_bool("baseline", true);
  const std::string kind_s = c.get_string("channel", "erasure");
  if (kind_s != "erasure" && kind_s != "measurement") throw ConfigError("channel must be erasure or measurement");
  const ChannelKind kind = kind_s == "erasure" ? ChannelKind::Erasure : ChannelKind::Measurement;
  const std::uint64_t realization = c.get_uint("realization", 0);
  std::vector<std::uint64_t> ts = t_list;
  std::sort(ts.begin(), ts.end());

  Rng init_rng = layer_rng(spec.seed, realization, kStreamInitial, 0);
  CodeState cs = inject_t(initial_state(spec.initial, spec.L, init_rng), spec.injection_site);
  ScenarioOutcome out;
  CsvWriter csv(detail::out_path(ctx, "channel.csv"), {"source", "t", "f", "b_size", "c_tilde", "stderr", "n_samples"});
  auto sweep = [&](const CodeState& state, std::uint64_t tag, std::uint64_t t) {
    return parallel_map(f_grid.size(), ctx.workers, [&](std::size_t fi) {
      Rng rng({spec.seed, tag, t, fi});
      return capacity_proxy(state, f_grid[fi], n_b, rng, kind);
    });
  };
  std::map<std::uint64_t, std::vector<CapacityEstimate>> circuit;
  std::size_t t_now = 0;
  for (auto t : ts) {
    for (; t_now < t;) {
      ++t_now;
      Rng rng = layer_rng(spec.seed, realization, kStreamU, t_now);
      cs.apply(brickwork_layer(spec, t_now, rng));
    }
    circuit[t] = sweep(cs, 0xC0, t);
    for (const auto& e : circuit[t])
      csv.row({"circuit", std::to_string(t), fmt(e.f), std::to_string(e.b_size), fmt(e.c_tilde), fmt(e.stderr_),
               std::to_string(e.n_samples)});
  }
  json agreement = json::array();
  if (baseline) {
    Rng grng({spec.seed, 0xB0});
    const CodeState base = global_random_code(spec.L, grng);
    const auto est = sweep(base, 0xB1, 0);
    for (const auto& e : est)
      csv.row({"global", "", fmt(e.f), std::to_string(e.b_size), fmt(e.c_tilde), fmt(e.stderr_),
               std::to_string(e.n_samples)});
    for (const auto& [t, row] : circuit) {
      double worst = 0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        const double se = std::hypot(row[i].stderr_, est[i].stderr_);
        const double d = std::abs(row[i].c_tilde - est[i].c_tilde);
        worst = std::max(worst, se > 0 ? d / se : (d > 0 ? std::numeric_limits<double>::infinity() : 0.0));
      }
      agreement.push_back({{"t", t}, {"max_sigma_deviation", worst}});
    }
  }
  out.outputs = {csv.path()};
  out.summary = {{"channel", kind_s}, {"baseline_agreement", agreement}};
  return out;
}

/// Expected FLEOM of the SDKI-f Bell-pair trajectory with inclusive widths: 2t + 2 before
/// t* = L/6, L at t*.
inline std::size_t sdkif_expected_fleom(std::size_t L, std::size_t t) {
  const std::size_t t_star = L / 6;
  return t < t_star ? 2 * t + 2 : L;
}

struct SdkifCheck {
  std::vector<TimeSeriesRecord> records;
  std::size_t t_star = 0;
  bool growth_ok = true;
  bool jump_ok = true;
  bool three_mlmi_ok = true;
  bool passed() const { return growth_ok && jump_ok && three_mlmi_ok; }
};

inline SdkifCheck sdkif_trajectory(std::size_t L, std::size_t t_max) {
  CircuitSpec spec;
  spec.L = L;
  spec.boundary = Boundary::Periodic;
  spec.ensemble = Ensemble::SdkiF;
  spec.p = 0;
  spec.initial = InitialKind::BellPairs;
  spec.injection_site = CircuitSpec::default_injection_site(L);
  spec.t_max = t_max;
  SdkifCheck chk;
  chk.t_star = L / 6;
  chk.records = run_realization(spec, Observables{}, 0).records;
  for (const auto& r : chk.records) {
    if (r.t >= 1 && r.t < chk.t_star && r.fleom != sdkif_expected_fleom(L, r.t)) chk.growth_ok = false;
    if (r.t == chk.t_star) {
      chk.jump_ok = r.fleom == L;
      chk.three_mlmi_ok = r.mlmi.size() == 3;
    }
  }
  if (t_max < chk.t_star) chk.jump_ok = chk.three_mlmi_ok = false;
  return chk;
}

inline ScenarioOutcome run_sdkif_exact(const ScenarioContext& ctx) {
  const Config& c = ctx.config;
  const std::size_t L = c.get_uint("L", 30);
  if (L < 6 || L % 2) throw ConfigError("sdkif-exact needs even L >= 6");
  const std::size_t t_max = c.get_uint("t_max", L / 6);
  const SdkifCheck chk = sdkif_trajectory(L, t_max);
  ScenarioOutcome out;
  CsvWriter csv(detail::out_path(ctx, "sdkif.csv"), {"t", "W", "expected_W", "lml", "n_mlmi", "intervals"});
  for (const auto& r : chk.records) {
    std::string ivs;
    for (const auto& iv : r.mlmi)
      ivs += (ivs.empty() ? "" : ";") + std::to_string(iv.start) + "-" + std::to_string(iv.end) + (iv.wraps ? "w" : "");
    csv.row({std::to_string(r.t), std::to_string(r.fleom),
             r.t <= chk.t_star ? std::to_string(sdkif_expected_fleom(L, r.t)) : "", std::to_string(r.lml),
             std::to_string(r.mlmi.size()), ivs});
  }
  auto line = [&](bool ok, const std::string& what) { *ctx.log << (ok ? "PASS " : "FAIL ") << what << "\n"; };
  line(chk.growth_ok, "W(t) = 2t + 2 for 1 <= t < " + std::to_string(chk.t_star));
  line(chk.jump_ok, "W(" + std::to_string(chk.t_star) + ") = " + std::to_string(L));
  line(chk.three_mlmi_ok, "three MLMIs at t = " + std::to_string(chk.t_star));
  out.outputs = {csv.path()};
  out.summary = {{"t_star", chk.t_star},
                 {"growth_ok", chk.growth_ok},
                 {"jump_ok", chk.jump_ok},
                 {"three_mlmi_ok", chk.three_mlmi_ok}};
  if (!chk.passed()) out.exit_code = kExitRuntime;
  return out;
}

/// Closed-form velocity tables.
inline ScenarioOutcome run_velocities(const ScenarioContext& ctx) {
  const Config& c = ctx.config;
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
  grid = c.get_doubles("p_grid", grid);
  ScenarioOutcome out;
  CsvWriter csv(detail::out_path(ctx, "velocities.csv"),
                {"p", "alpha_plus", "alpha_minus", "vB_random", "vE_random", "vmax_random", "vB_sdki_r", "vE_sdki_r"});
  auto& log = *ctx.log;
  log << "p        a+       a-       vB       vE       vB+2vE   vB(sdki_r) vE(sdki_r)\n";
  for (double p : grid) {
    const double vb = v_butterfly(p, Ensemble::RandomClifford), ve = v_entanglement(vb);
    const double vbr = v_butterfly(p, Ensemble::SdkiR), ver = v_entanglement(vbr);
    csv.row({fmt(p), fmt(alpha_plus(p)), fmt(alpha_minus(p)), fmt(vb), fmt(ve), fmt(vb + 2 * ve), fmt(vbr), fmt(ver)});
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8.3f %-8.4f %-8.4f %-8.4f %-8.4f %-8.4f %-10.4f %-10.4f\n", p, alpha_plus(p),
                  alpha_minus(p), vb, ve, vb + 2 * ve, vbr, ver);
    log << buf;
  }
  out.outputs = {csv.path()};
  return out;
}

/// Oracle sweep over L = Lmin..Lmax.
inline ScenarioOutcome run_oracle_check(const ScenarioContext& ctx) {
  const Config& c = ctx.config;
  const std::size_t lmin = c.get_uint("Lmin", 2), lmax = c.get_uint("Lmax", 8);
  if (lmin < 2 || lmax < lmin) throw ConfigError("oracle-check needs 2 <= Lmin <= Lmax");
  if (lmax > dense::kMaxSreQubits) throw ConfigError("oracle-check: Lmax exceeds the dense oracle cap of 12");
  const std::size_t circuits = c.get_uint("circuits_per_L", 200);
  const std::size_t regions = c.get_uint("regions_per_state", 20);
  const std::uint64_t seed = c.get_uint("seed", 0);
  const auto stats = parallel_map(lmax - lmin + 1, ctx.workers,
                                  [&](std::size_t i) { return oracle_sweep(lmin + i, circuits, regions, seed); });
  ScenarioOutcome out;
  CsvWriter csv(detail::out_path(ctx, "oracle.csv"),
                {"L", "circuits", "rejected", "regions", "mismatches", "bad_values", "trichotomy_violations",
                 "complementarity_violations", "table_mismatches", "witness_checks", "witness_failures",
                 "max_oracle_error", "min_witness_fidelity"});
  std::size_t total = 0;
  for (const auto& s : stats) {
    csv.row({std::to_string(s.L), std::to_string(s.circuits), std::to_string(s.rejected), std::to_string(s.regions),
             std::to_string(s.mismatches), std::to_string(s.bad_values), std::to_string(s.trichotomy_violations),
             std::to_string(s.complementarity_violations), std::to_string(s.table_mismatches),
             std::to_string(s.witness_checks), std::to_string(s.witness_failures), fmt(s.max_oracle_error),
             fmt(s.min_witness_fidelity)});
    total += s.violations();
    for (const auto& f : s.failures) *ctx.log << "failure: " << f << "\n";
  }
  *ctx.log << "oracle-check: " << total << " violations over L = " << lmin << ".." << lmax << "\n";
  out.outputs = {csv.path()};
  out.summary = {{"violations", total}};
  if (total) out.exit_code = kExitRuntime;
  return out;
}

/// Per-step record of Zbar(t), Ybar(t) and per-MLMI representatives of Xbar and Zbar.
inline json logical_snapshot(const CodeState& cs, const MlmiSet& m, std::size_t t) {
  auto commutes_with_group = [&](const PauliString& p) {
    for (const auto& g : cs.stabilizers)
      if (!commutes(p, g)) return false;
    return true;
  };
  auto checked = [&](const PauliString& p) {
    if (!commutes_with_group(p)) throw std::logic_error("dump-logicals: logical fails to commute with a stabilizer");
    return p.to_string();
  };
  json reps = json::array();
  for (const auto& iv : m.intervals) {
    const QubitSet a = iv.qubits(cs.n);
    const auto x = reduce_support(cs.logical_x, cs.stabilizers, a);
    const auto z = reduce_support(cs.logical_z, cs.stabilizers, a);
    if (!x || !z) throw std::logic_error("dump-logicals: MLMI without reduced logicals");
    reps.push_back({{"start", iv.start}, {"end", iv.end}, {"wraps", iv.wraps}, {"x", checked(*x)}, {"z", checked(*z)}});
  }
  return {{"t", t},
          {"logical_z", checked(cs.logical_z)},
          {"logical_y", checked(cs.logical_y())},
          {"mlmi", reps}};
}

inline ScenarioOutcome run_dump_logicals(const ScenarioContext& ctx) {
  const Config& c = ctx.config;
  const CircuitSpec spec = spec_from_config(c);
  const std::uint64_t realization = c.get_uint("realization", 0);
  const bool wrapping = c.get_bool("wrapping", false);
  Rng init_rng = layer_rng(spec.seed, realization, kStreamInitial, 0);
  CodeState cs = inject_t(initial_state(spec.initial, spec.L, init_rng), spec.injection_site);
  ScenarioOutcome out;
  const std::string path = detail::out_path(ctx, "logicals.jsonl");
  std::ofstream f(path);
  for (std::size_t t = 0; t <= spec.t_max; ++t) {
    if (t > 0) {
      Rng rng = layer_rng(spec.seed, realization, kStreamU, t);
      cs.apply(brickwork_layer(spec, t, rng));
    }
    f << logical_snapshot(cs, minimal_intervals(cs, spec.periodic(), wrapping), t).dump() << "\n";
  }
  out.outputs = {path};
  return out;
}

}  // namespace magicspread
