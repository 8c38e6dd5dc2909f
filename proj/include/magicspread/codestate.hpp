#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gf2.hpp"
#include "pauli.hpp"
#include "tableau.hpp"

namespace magicspread {

/// The injected gate acts as a stabilizer-preserving phase: no magic was added.
class NoMagicInjected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stabilizer state with one T gate applied, stored as a [[L,1]] code.
///
/// rho = 2^-L (1 + (Zbar - Ybar)/sqrt2) prod_i (1 + g_i), with Ybar = i Xbar Zbar.
struct CodeState {
  std::size_t n = 0;
  PauliString logical_x;
  PauliString logical_z;
  std::vector<PauliString> stabilizers;
  std::size_t injection_site = 0;
  /// Coefficients of (Zbar, Ybar) in the expansion above.
  std::pair<double, double> amplitude_pair{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};

  PauliString logical_y() const {
    PauliString y = logical_x * logical_z;
    y.add_phase(1);
    return y;
  }

  /// Anticommuting Hermitian logicals commuting with independent, commuting stabilizers.
  bool is_valid() const {
    if (stabilizers.size() + 1 != n) return false;
    if (!logical_x.is_hermitian() || !logical_z.is_hermitian()) return false;
    if (commutes(logical_x, logical_z)) return false;
    for (std::size_t i = 0; i < stabilizers.size(); ++i) {
      const auto& g = stabilizers[i];
      if (!g.is_hermitian() || !commutes(g, logical_x) || !commutes(g, logical_z)) return false;
      for (std::size_t j = i + 1; j < stabilizers.size(); ++j)
        if (!commutes(g, stabilizers[j])) return false;
    }
    std::vector<PauliString> all = stabilizers;
    all.push_back(logical_x);
    all.push_back(logical_z);
    return pauli_rank(all) == n + 1;
  }

  void apply_gate(const CliffordGate& gate, std::span<const std::size_t> sites) {
    gate.check_sites(sites, n);
    gate.apply(logical_x, sites);
    gate.apply(logical_z, sites);
    for (auto& g : stabilizers) gate.apply(g, sites);
  }
  void apply_gate(const CliffordGate& gate, std::initializer_list<std::size_t> sites) {
    apply_gate(gate, std::span<const std::size_t>(sites.begin(), sites.size()));
  }
  void apply(const GateOp& op) { apply_gate(op.gate, op.site_span()); }
  void apply(const Circuit& c) {
    for (const auto& op : c) apply(op);
  }
  void apply_map(const CliffordMap& u) {
    logical_x = u.apply(logical_x);
    logical_z = u.apply(logical_z);
    for (auto& g : stabilizers) g = u.apply(g);
  }

  /// Header line, then Xbar, Zbar and the stabilizers, one literal per line.
  std::string to_text() const {
    std::ostringstream os;
    os << "n=" << n << " k=" << stabilizers.size() << " site=" << injection_site << "\n";
    os << logical_x.to_string() << "\n" << logical_z.to_string() << "\n";
    for (const auto& g : stabilizers) os << g.to_string() << "\n";
    return os.str();
  }

  static CodeState from_text(const std::string& text) {
    std::istringstream is(text);
    std::string header, line;
    std::getline(is, header);
    CodeState cs;
    std::size_t k = 0;
    if (std::sscanf(header.c_str(), "n=%zu k=%zu site=%zu", &cs.n, &k, &cs.injection_site) != 3)
      throw std::invalid_argument("CodeState::from_text: bad header");
    std::vector<PauliString> rows;
    while (rows.size() < k + 2 && std::getline(is, line))
      if (!line.empty()) rows.push_back(PauliString::parse(line));
    if (rows.size() != k + 2) throw std::invalid_argument("CodeState::from_text: row count mismatch");
    cs.logical_x = rows[0];
    cs.logical_z = rows[1];
    cs.stabilizers.assign(rows.begin() + 2, rows.end());
    return cs;
  }
};

/// Gauge-fixes a pure state against the Pauli part `zt` of a T-like gate alpha + beta zt.
///
/// The first generator anticommuting with zt becomes Zbar; later anticommuting generators are
/// multiplied by it. Xbar = zt.
inline CodeState inject_pauli(const StabilizerState& state, const PauliString& zt, std::size_t site) {
  if (!state.is_pure()) throw std::invalid_argument("inject: state is not pure");
  if (zt.n_qubits() != state.n_qubits()) throw DimensionMismatch("inject: operator width mismatch");
  const auto& gens = state.generators();
  std::size_t s1 = gens.size();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!commutes(gens[i], zt)) {
      s1 = i;
      break;
    }
  }
  if (s1 == gens.size()) throw NoMagicInjected("T gate commutes with every stabilizer");
  CodeState cs;
  cs.n = state.n_qubits();
  cs.injection_site = site;
  cs.logical_x = zt;
  cs.logical_z = gens[s1];
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i == s1) continue;
    PauliString g = gens[i];
    if (!commutes(g, zt)) g *= gens[s1];
    cs.stabilizers.push_back(std::move(g));
  }
  return cs;
}

/// T = diag(1, e^{i pi/4}) on `site` (0-based) of a pure stabilizer state.
inline CodeState inject_t(const StabilizerState& state, std::size_t site) {
  if (site >= state.n_qubits()) throw std::invalid_argument("inject_t: site out of range");
  return inject_pauli(state, PauliString::single(state.n_qubits(), site, 'Z'), site);
}

inline CodeState apply_clifford(CodeState cs, const CliffordGate& gate, std::span<const std::size_t> sites) {
  cs.apply_gate(gate, sites);
  return cs;
}

/// (U T U^dagger) V |psi0>: the T gate's Pauli part is dressed by `u`, the state by `v`.
inline CodeState build_interplay_state(const Circuit& u, const Circuit& v, StabilizerState psi0, std::size_t site) {
  const std::size_t n = psi0.n_qubits();
  PauliString zt = PauliString::single(n, site, 'Z');
  for (const auto& op : u) op.gate.apply(zt, op.site_span());
  psi0.apply(v);
  return inject_pauli(psi0, zt, site);
}

/// Pure (L+1)-qubit state with reference qubit R at index L:
/// generators Xbar X_R, Zbar Z_R and the stabilizers.
inline StabilizerState extend_with_reference(const CodeState& cs) {
  const std::size_t n = cs.n;
  auto widen = [n](const PauliString& p) {
    PauliString r(n + 1);
    for (auto q : p.x().indices()) r.x().set(q);
    for (auto q : p.z().indices()) r.z().set(q);
    r.set_letter_sign(p.letter_sign());
    return r;
  };
  std::vector<PauliString> gens;
  PauliString xr = widen(cs.logical_x);
  xr.set_letter(n, 'X');
  PauliString zr = widen(cs.logical_z);
  zr.set_letter(n, 'Z');
  gens.push_back(std::move(xr));
  gens.push_back(std::move(zr));
  for (const auto& g : cs.stabilizers) gens.push_back(widen(g));
  return StabilizerState(n + 1, std::move(gens));
}

}  // namespace magicspread
