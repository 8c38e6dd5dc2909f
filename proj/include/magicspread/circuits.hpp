#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "codestate.hpp"
#include "lengthscales.hpp"
#include "magic.hpp"
#include "rng.hpp"
#include "tableau.hpp"

namespace magicspread {

enum class Boundary { Open, Periodic };
enum class Ensemble { RandomClifford, SdkiR, SdkiF };
enum class InitialKind { BellPairs, RandomProduct, AllZero };

inline const char* to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

inline const char* to_string(Ensemble e) {
  switch (e) {
    case Ensemble::RandomClifford:
      return "random_clifford";
    case Ensemble::SdkiR:
      return "sdki_r";
    case Ensemble::SdkiF:
      return "sdki_f";
  }
  return "?";
}

inline const char* to_string(InitialKind k) {
  switch (k) {
    case InitialKind::BellPairs:
      return "bell_pairs";
    case InitialKind::RandomProduct:
      return "random_product";
    case InitialKind::AllZero:
      return "all_zero";
  }
  return "?";
}

inline Boundary parse_boundary(const std::string& s) {
  if (s == "open" || s == "obc") return Boundary::Open;
  if (s == "periodic" || s == "pbc") return Boundary::Periodic;
  throw std::invalid_argument("unknown boundary '" + s + "'");
}

inline Ensemble parse_ensemble(const std::string& s) {
  if (s == "random_clifford" || s == "random") return Ensemble::RandomClifford;
  if (s == "sdki_r") return Ensemble::SdkiR;
  if (s == "sdki_f") return Ensemble::SdkiF;
  throw std::invalid_argument("unknown ensemble '" + s + "'");
}

inline InitialKind parse_initial(const std::string& s) {
  if (s == "bell_pairs") return InitialKind::BellPairs;
  if (s == "random_product") return InitialKind::RandomProduct;
  if (s == "all_zero") return InitialKind::AllZero;
  throw std::invalid_argument("unknown initial state '" + s + "'");
}

struct CircuitSpec {
  std::size_t L = 2;
  Boundary boundary = Boundary::Open;
  Ensemble ensemble = Ensemble::RandomClifford;
  double p = 0.0;
  std::size_t t_max = 0;
  std::uint64_t seed = 0;
  InitialKind initial = InitialKind::BellPairs;
  std::size_t injection_site = 0;  // 0-based

  bool periodic() const { return boundary == Boundary::Periodic; }

  /// Injection on qubit L/2 (1-based).
  static std::size_t default_injection_site(std::size_t L) { return L / 2 - 1; }

  void validate() const {
    if (L < 2) throw std::invalid_argument("CircuitSpec: L must be at least 2");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("CircuitSpec: p must lie in [0, 1]");
    if (injection_site >= L) throw std::invalid_argument("CircuitSpec: injection site out of range");
    if (initial == InitialKind::BellPairs && L % 2) throw std::invalid_argument("CircuitSpec: bell_pairs needs even L");
  }

  /// The central Bell pair straddles the middle bond only for L = 2 mod 4.
  bool centered_bell_pair() const { return L % 4 == 2; }
};

/// Gate for one non-identity slot.
inline CliffordGate ensemble_gate(Ensemble e, Rng& rng) {
  switch (e) {
    case Ensemble::RandomClifford:
      return sample_clifford_2q(rng);
    case Ensemble::SdkiR: {
      const CliffordGate v1 = sample_clifford_1q(rng);
      const CliffordGate v2 = sample_clifford_1q(rng);
      return gates::SDKI_f().then(CliffordGate::tensor(v1, v2));
    }
    case Ensemble::SdkiF:
      return gates::SDKI_f();
  }
  throw std::logic_error("ensemble_gate: unknown ensemble");
}

/// Site pairs of layer t >= 1 (1-based qubits): odd t pairs (2,3)(4,5)... plus the wrap pair
/// (L,1) under periodic boundaries for even L; even t pairs (1,2)(3,4)...
inline std::vector<std::array<std::size_t, 2>> layer_pairs(std::size_t L, Boundary b, std::size_t t) {
  if (t < 1) throw std::invalid_argument("layer_pairs: t must be >= 1");
  std::vector<std::array<std::size_t, 2>> out;
  const std::size_t offset = t % 2;
  for (std::size_t q = offset; q + 1 < L; q += 2) out.push_back({q, q + 1});
  if (b == Boundary::Periodic && offset == 1 && L % 2 == 0 && L > 2) out.push_back({L - 1, 0});
  return out;
}

/// One brickwork layer. Each slot draws its identity coin first, then its gate.
inline Circuit brickwork_layer(const CircuitSpec& spec, std::size_t t, Rng& rng) {
  Circuit c;
  for (const auto& pr : layer_pairs(spec.L, spec.boundary, t)) {
    const bool idle = rng.bernoulli(spec.p);
    c.push_back(GateOp{idle ? gates::identity(2) : ensemble_gate(spec.ensemble, rng), pr});
  }
  return c;
}

/// Deterministic stream for (seed, realization, stream tag, layer).
inline Rng layer_rng(std::uint64_t seed, std::uint64_t realization, std::uint64_t tag, std::uint64_t t) {
  return Rng({seed, realization, tag, t});
}

inline constexpr std::uint64_t kStreamInitial = 0x1;
inline constexpr std::uint64_t kStreamU = 0x2;
inline constexpr std::uint64_t kStreamV = 0x3;

// Identity-doped random Clifford: persistent random walk with hop asymmetry alpha+-.
inline double alpha_plus(double p) { return p + (1.0 - p) / 5.0; }
inline double alpha_minus(double p) { return p + 4.0 * (1.0 - p) / 5.0; }

inline double v_butterfly(double p, Ensemble e) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("v_butterfly: p outside [0, 1]");
  switch (e) {
    case Ensemble::RandomClifford:
      return (alpha_minus(p) - alpha_plus(p)) / (alpha_minus(p) + alpha_plus(p));
    case Ensemble::SdkiR:
      if (p == 1.0) return 0.0;
      return 1.0 / (1.0 + 8.0 * p / (3.0 * (1.0 - p)));
    case Ensemble::SdkiF:
      if (p == 0.0) return 1.0;
      throw std::domain_error("v_butterfly: no closed form for doped sdki_f");
  }
  throw std::logic_error("v_butterfly: unknown ensemble");
}

inline double v_entanglement(double vb) {
  if (!(vb >= 0.0 && vb <= 1.0)) throw std::domain_error("v_entanglement: v_b outside [0, 1)");
  if (vb == 0.0) return 0.0;
  if (vb == 1.0) return 1.0;
  const double a = std::log1p(-vb), b = std::log1p(vb);
  return (a + b) / (a - b);
}

inline StabilizerState initial_state(InitialKind kind, std::size_t L, Rng& rng) {
  switch (kind) {
    case InitialKind::AllZero:
      return StabilizerState::zero_state(L);
    case InitialKind::BellPairs: {
      if (L % 2) throw std::invalid_argument("initial_state: bell_pairs needs even L");
      std::vector<PauliString> gens;
      for (std::size_t q = 0; q < L; q += 2) {
        PauliString xx(L), zz(L);
        xx.set_letter(q, 'X');
        xx.set_letter(q + 1, 'X');
        zz.set_letter(q, 'Z');
        zz.set_letter(q + 1, 'Z');
        gens.push_back(std::move(xx));
        gens.push_back(std::move(zz));
      }
      return StabilizerState(L, std::move(gens));
    }
    case InitialKind::RandomProduct: {
      std::vector<PauliString> gens;
      static constexpr char kLetters[3] = {'X', 'Y', 'Z'};
      for (std::size_t q = 0; q < L; ++q) {
        PauliString g = PauliString::single(L, q, kLetters[rng.uniform_below(3)]);
        if (rng.coin()) g = -g;
        gens.push_back(std::move(g));
      }
      return StabilizerState(L, std::move(gens));
    }
  }
  throw std::logic_error("initial_state: unknown kind");
}

struct Observables {
  bool mlmi = true;           // MLMI set, widths and fleom
  bool lml = true;
  bool logicals = false;      // Pauli literals of Zbar, Ybar
  bool check_full = true;     // full-system class from the Pauli spectrum
  bool wrapping = false;      // admit MLMIs through the (L,1) bond under periodic boundaries
};

struct TimeSeriesRecord {
  std::size_t t = 0;
  std::size_t lml = 0;
  std::size_t fleom = 0;
  std::vector<std::size_t> mlmi_widths;
  std::vector<Interval> mlmi;
  MagicClass full_state_class = MagicClass::Full;
  std::optional<std::string> logical_z;
  std::optional<std::string> logical_y;
};

struct RealizationResult {
  bool rejected = false;
  std::vector<TimeSeriesRecord> records;
};

inline TimeSeriesRecord observe(const CodeState& cs, std::size_t t, bool periodic, const Observables& obs) {
  TimeSeriesRecord r;
  r.t = t;
  if (obs.mlmi || obs.lml) {
    const IntervalTable table(cs);
    if (obs.mlmi) {
      const MlmiSet m = minimal_intervals(cs, table, periodic, obs.wrapping);
      r.mlmi = m.intervals;
      r.mlmi_widths = m.widths();
      r.fleom = fleom(m);
    }
    if (obs.lml) r.lml = lml(table, periodic);
  }
  if (obs.check_full) r.full_state_class = pauli_spectrum_summary(cs, full_set(cs.n)).magic_class();
  if (obs.logicals) {
    r.logical_z = cs.logical_z.to_string();
    r.logical_y = cs.logical_y().to_string();
  }
  return r;
}

/// Initial state, T injection and t_max brickwork layers; records t = 0..t_max.
/// Deterministic in (spec.seed, realization).
inline RealizationResult run_realization(const CircuitSpec& spec, const Observables& obs, std::uint64_t realization) {
  spec.validate();
  RealizationResult out;
  Rng init_rng = layer_rng(spec.seed, realization, kStreamInitial, 0);
  const StabilizerState psi0 = initial_state(spec.initial, spec.L, init_rng);
  CodeState cs;
  try {
    cs = inject_t(psi0, spec.injection_site);
  } catch (const NoMagicInjected&) {
    out.rejected = true;
    return out;
  }
  out.records.push_back(observe(cs, 0, spec.periodic(), obs));
  for (std::size_t t = 1; t <= spec.t_max; ++t) {
    Rng rng = layer_rng(spec.seed, realization, kStreamU, t);
    cs.apply(brickwork_layer(spec, t, rng));
    out.records.push_back(observe(cs, t, spec.periodic(), obs));
  }
  return out;
}

/// Which of U_t (operator dressing) and V_t (state evolution) are non-trivial.
enum class InterplayCase { EntanglementOnly = 1, OperatorOnly = 2, Independent = 3, Same = 4 };

/// Per-t interplay states (U_t T U_t^dagger) V_t |psi0>; rejected entries are empty.
inline std::vector<std::optional<TimeSeriesRecord>> run_interplay(const CircuitSpec& spec, InterplayCase which,
                                                                  const Observables& obs, std::uint64_t realization) {
  spec.validate();
  Rng init_rng = layer_rng(spec.seed, realization, kStreamInitial, 0);
  StabilizerState psi = initial_state(spec.initial, spec.L, init_rng);
  PauliString zt = PauliString::single(spec.L, spec.injection_site, 'Z');
  std::vector<std::optional<TimeSeriesRecord>> out;
  for (std::size_t t = 0; t <= spec.t_max; ++t) {
    if (t > 0) {
      const bool use_u = which != InterplayCase::EntanglementOnly;
      const bool use_v = which != InterplayCase::OperatorOnly;
      Rng ru = layer_rng(spec.seed, realization, kStreamU, t);
      const Circuit u = brickwork_layer(spec, t, ru);
      Circuit v;
      if (which == InterplayCase::Same) {
        v = u;
      } else {
        Rng rv = layer_rng(spec.seed, realization, kStreamV, t);
        v = brickwork_layer(spec, t, rv);
      }
      if (use_u)
        for (const auto& op : u) op.gate.apply(zt, op.site_span());
      if (use_v) psi.apply(v);
    }
    try {
      const CodeState cs = inject_pauli(psi, zt, spec.injection_site);
      out.emplace_back(observe(cs, t, spec.periodic(), obs));
    } catch (const NoMagicInjected&) {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

}  // namespace magicspread
