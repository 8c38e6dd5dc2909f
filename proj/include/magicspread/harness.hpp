#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "circuits.hpp"

namespace magicspread {

/// Malformed or missing configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration. `#` starts a comment; later keys override earlier ones.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text) {
    Config c;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
      const std::string key = trim(line.substr(0, eq));
      if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      c.values_[key] = trim(line.substr(eq + 1));
    }
    return c;
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, std::optional<std::string> fallback = std::nullopt) const {
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    if (fallback) return *fallback;
    throw ConfigError("missing config key '" + key + "'");
  }

  std::uint64_t get_uint(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError("missing config key '" + key + "'");
    }
    return to_uint(key, values_.at(key));
  }

  double get_double(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError("missing config key '" + key + "'");
    }
    return to_double(key, values_.at(key));
  }

  bool get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = values_.at(key);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
  }

  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : split(values_.at(key), ',')) out.push_back(to_double(key, item));
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
  }

  std::vector<std::uint64_t> get_uints(const std::string& key, std::vector<std::uint64_t> fallback) const {
    if (!has(key)) return fallback;
    std::vector<std::uint64_t> out;
    for (const auto& item : split(values_.at(key), ',')) out.push_back(to_uint(key, item));
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
  }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

 private:
  static std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
      throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + v + "'");
    return out;
  }

  static double to_double(const std::string& key, const std::string& v) {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
  }

  std::map<std::string, std::string> values_;
};

/// CircuitSpec from the keys L, boundary, ensemble, p, t_max, seed, initial, injection_site
/// (1-based, default L/2).
inline CircuitSpec spec_from_config(const Config& c) {
  CircuitSpec s;
  try {
    s.L = c.get_uint("L");
    s.boundary = parse_boundary(c.get_string("boundary", "open"));
    s.ensemble = parse_ensemble(c.get_string("ensemble", "random_clifford"));
    s.initial = parse_initial(c.get_string("initial", "bell_pairs"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.p = c.get_double("p", 0.0);
  s.t_max = c.get_uint("t_max", 2 * s.L);
  s.seed = c.get_uint("seed", 0);
  if (s.L < 2) throw ConfigError("L must be at least 2");
  const std::uint64_t site = c.get_uint("injection_site", s.L / 2);
  if (site < 1 || site > s.L) throw ConfigError("injection_site must lie in 1..L");
  s.injection_site = site - 1;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

/// Early-time window: value in [value_lo, value_hi] and t >= t_min.
struct FitWindow {
  double value_lo = 8;
  double value_hi = 0;
  double t_min = 2;

  static FitWindow default_for(std::size_t L) { return {8.0, static_cast<double>(L) / 2.0, 2.0}; }
};

/// Parses "lo:hi" (either side may be empty to keep the default).
inline FitWindow fit_window_from_config(const Config& c, std::size_t L) {
  FitWindow w = FitWindow::default_for(L);
  if (c.has("fit_window")) {
    const std::string v = c.get_string("fit_window");
    const auto colon = v.find(':');
    if (colon == std::string::npos) throw ConfigError("fit_window must look like lo:hi");
    Config tmp;
    const std::string lo = Config::trim(v.substr(0, colon)), hi = Config::trim(v.substr(colon + 1));
    if (!lo.empty()) tmp.set("lo", lo);
    if (!hi.empty()) tmp.set("hi", hi);
    w.value_lo = tmp.get_double("lo", w.value_lo);
    w.value_hi = tmp.get_double("hi", w.value_hi);
  }
  w.t_min = c.get_double("fit_t_min", w.t_min);
  if (!(w.value_lo <= w.value_hi)) throw ConfigError("fit_window: lo exceeds hi");
  return w;
}

class InsufficientPoints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double t_lo = 0;
  double t_hi = 0;
  std::size_t points = 0;
  double velocity = 0;  // slope / 2
  double residual_rms = 0;
};

/// Ordinary least squares of value against t over the points inside the window.
inline FitResult fit_early_slope(const std::vector<std::pair<double, double>>& series, const FitWindow& w) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, v] : series)
    if (t >= w.t_min && v >= w.value_lo && v <= w.value_hi) pts.emplace_back(t, v);
  if (pts.size() < 3) throw InsufficientPoints("fit_early_slope: fewer than 3 points in the window");
  const double n = static_cast<double>(pts.size());
  double mt = 0, mv = 0;
  for (const auto& [t, v] : pts) {
    mt += t;
    mv += v;
  }
  mt /= n;
  mv /= n;
  double stt = 0, stv = 0;
  for (const auto& [t, v] : pts) {
    stt += (t - mt) * (t - mt);
    stv += (t - mt) * (v - mv);
  }
  if (stt == 0) throw InsufficientPoints("fit_early_slope: all window points share one t");
  FitResult r;
  r.slope = stv / stt;
  r.intercept = mv - r.slope * mt;
  r.points = pts.size();
  r.t_lo = pts.front().first;
  r.t_hi = pts.front().first;
  double ss = 0;
  for (const auto& [t, v] : pts) {
    r.t_lo = std::min(r.t_lo, t);
    r.t_hi = std::max(r.t_hi, t);
    const double e = v - (r.slope * t + r.intercept);
    ss += e * e;
  }
  r.residual_rms = std::sqrt(ss / n);
  r.velocity = r.slope / 2.0;
  return r;
}

/// Runs fn(0..n-1) on `workers` threads; results come back in index order.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn&& fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using T = decltype(fn(std::size_t{0}));
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t k = 0; k < workers; ++k) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Running mean and standard error of the mean.
struct MeanAccumulator {
  double sum = 0;
  double sum_sq = 0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double stderr_of_mean() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  }
};

/// Fixed-format number for data files, so reruns are byte-identical.
inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// CSV with a header row; fields are joined verbatim.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot write '" + path + "'");
    row(header);
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
    out_ << "\n";
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace magicspread
