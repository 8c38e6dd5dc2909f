#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clifford.hpp"
#include "pauli.hpp"
#include "tableau.hpp"

namespace magicspread {

/// Symplectic form restricted to the qubits of `region`.
inline unsigned symplectic_form_on(const PauliString& p, const PauliString& q, const QubitSet& region) {
  const std::size_t c = and_popcount(p.x() & region, q.z()) + and_popcount(p.z() & region, q.x());
  return static_cast<unsigned>(c & 1u);
}

/// A list of Pauli operators conjugated together by locally applied gates.
struct LocalFrame {
  std::vector<PauliString> ops;
  Circuit gates;

  void apply(const CliffordGate& g, std::size_t a) {
    GateOp op{g, {a, a}};
    for (auto& p : ops) g.apply(p, op.site_span());
    gates.push_back(std::move(op));
  }
  void apply(const CliffordGate& g, std::size_t a, std::size_t b) {
    GateOp op{g, {a, b}};
    for (auto& p : ops) g.apply(p, op.site_span());
    gates.push_back(std::move(op));
  }

  /// Rotates ops[idx] to Z on site t (no-op for I or Z).
  void rotate_to_z(std::size_t idx, std::size_t t) {
    switch (ops[idx].letter(t)) {
      case 'X':
        apply(gates::H(), t);
        break;
      case 'Y':
        apply(gates::S_dag(), t);
        apply(gates::H(), t);
        break;
      default:
        break;
    }
  }

  /// Maps the part of ops[idx] on `allowed` to a single Z_q and returns q (lowest support site).
  std::size_t collapse_to_z(std::size_t idx, const QubitSet& allowed) {
    const auto sites = (ops[idx].support() & allowed).indices();
    if (sites.empty()) throw std::logic_error("LocalFrame: operator has no support on the allowed sites");
    for (auto t : sites) rotate_to_z(idx, t);
    const std::size_t q = sites.front();
    for (std::size_t k = 1; k < sites.size(); ++k) apply(gates::CNOT(), sites[k], q);
    return q;
  }

  /// Maps (ops[p], ops[q]) with anticommuting parts on `allowed` to (+-Z_s, +-X_s); returns s.
  std::size_t map_pair(std::size_t p, std::size_t q, const QubitSet& allowed) {
    const std::size_t s = collapse_to_z(p, allowed);
    for (auto t : (ops[q].support() & allowed).indices()) {
      if (t == s) continue;
      rotate_to_z(q, t);
      apply(gates::CZ(), s, t);
    }
    if (ops[q].letter(s) == 'Y') apply(gates::S(), s);
    if (ops[q].letter(s) != 'X' || ops[p].letter(s) != 'Z')
      throw std::logic_error("LocalFrame: pair is not symplectic on the allowed sites");
    return s;
  }
};

/// Local Clifford normal form of a commuting generator set across the cut (A, B).
///
/// In the transformed frame every row is one of: half of a cross pair (X_a X_b, Z_a Z_b),
/// a single X on A, a single X on B, or a cross row X_a X_b without partner. Every row is
/// also kept in the original frame as a product of the input generators.
struct BipartiteNormalForm {
  enum class Kind { PairX, PairZ, SingleA, SingleB, Cross };

  QubitSet region;
  Circuit gates;                          // C = C_A (x) C_B, gates applied in order
  std::vector<PauliString> original;      // row in the input frame
  std::vector<PauliString> rows;          // C row C^dagger
  std::vector<Kind> kinds;
  std::vector<std::pair<std::size_t, std::size_t>> sites;  // (a, b) or (q, q)
  std::vector<PauliString> passengers;    // C p C^dagger for each passenger
  QubitSet free_qubits;                   // qubits touched by no row

  std::size_t count(Kind k) const {
    std::size_t c = 0;
    for (auto kk : kinds) c += (kk == k);
    return c;
  }
};

namespace detail {

/// Forward elimination of rows[begin, end) over the symplectic columns of `qubits`.
/// Pivot rows move to the front of the range; their columns (qubit, z-half?) go to `pivots`.
inline std::size_t eliminate_on(std::vector<PauliString>& rows, std::size_t begin, std::size_t end,
                                const QubitSet& qubits,
                                std::vector<std::pair<std::size_t, bool>>* pivots = nullptr) {
  std::size_t next = begin;
  for (auto q : qubits.indices()) {
    for (bool zhalf : {false, true}) {
      auto bit = [&](const PauliString& p) { return zhalf ? p.z_at(q) : p.x_at(q); };
      std::size_t piv = end;
      for (std::size_t i = next; i < end; ++i) {
        if (bit(rows[i])) {
          piv = i;
          break;
        }
      }
      if (piv == end) continue;
      std::swap(rows[piv], rows[next]);
      for (std::size_t i = next + 1; i < end; ++i)
        if (bit(rows[i])) rows[i] *= rows[next];
      if (pivots) pivots->push_back({q, zhalf});
      ++next;
    }
  }
  return next - begin;
}

}  // namespace detail

/// Builds the bipartite normal form of `gens` (independent and commuting) for cut (region, rest).
inline BipartiteNormalForm bipartite_normal_form(const std::vector<PauliString>& gens, const QubitSet& region,
                                                 const std::vector<PauliString>& passengers = {}) {
  using Kind = BipartiteNormalForm::Kind;
  const std::size_t n = region.size();
  const QubitSet comp = ~region;
  for (const auto& g : gens) g.check_dim(PauliString(n));

  // Row reduction: A pivots first, then the B-only rows, then split the A-pivot rows.
  std::vector<PauliString> rows = gens;
  const std::size_t k = rows.size();
  const std::size_t r1 = detail::eliminate_on(rows, 0, k, region);
  std::vector<std::pair<std::size_t, bool>> b_pivots;
  const std::size_t r0 = detail::eliminate_on(rows, r1, k, comp, &b_pivots);
  if (r1 + r0 != k) throw std::invalid_argument("bipartite_normal_form: generators are dependent");
  // Forward echelon: clearing pivot columns in order never reintroduces earlier ones.
  auto reduce_by_b = [&](PauliString& p) {
    for (std::size_t j = 0; j < b_pivots.size(); ++j) {
      const auto [q, zhalf] = b_pivots[j];
      if (zhalf ? p.z_at(q) : p.x_at(q)) p *= rows[r1 + j];
    }
  };
  for (std::size_t i = 0; i < r1; ++i) reduce_by_b(rows[i]);
  const std::size_t rh = detail::eliminate_on(rows, 0, r1, comp);
  // rows[0, rh): mixed rows H; rows[rh, r1): supported on A; rows[r1, k): supported on B.
  std::vector<PauliString> h(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(rh));
  std::vector<PauliString> ga(rows.begin() + static_cast<std::ptrdiff_t>(rh), rows.begin() + static_cast<std::ptrdiff_t>(r1));
  std::vector<PauliString> gb(rows.begin() + static_cast<std::ptrdiff_t>(r1), rows.end());
  for (const auto& g : ga)
    if (!g.supported_in(region)) throw std::logic_error("bipartite_normal_form: A row leaks into B");
  for (const auto& g : gb)
    if (!g.supported_in(comp)) throw std::logic_error("bipartite_normal_form: B row leaks into A");

  // Symplectic Gram-Schmidt of H under the form restricted to A.
  std::vector<std::pair<PauliString, PauliString>> pairs;
  std::vector<PauliString> iso;
  while (!h.empty()) {
    PauliString a = h.front();
    h.erase(h.begin());
    std::size_t j = h.size();
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (symplectic_form_on(a, h[i], region)) {
        j = i;
        break;
      }
    }
    if (j == h.size()) {
      iso.push_back(std::move(a));
      continue;
    }
    PauliString b = h[j];
    h.erase(h.begin() + static_cast<std::ptrdiff_t>(j));
    for (auto& r : h) {
      const unsigned wa = symplectic_form_on(r, a, region), wb = symplectic_form_on(r, b, region);
      if (wb) r *= a;
      if (wa) r *= b;
    }
    pairs.emplace_back(std::move(a), std::move(b));
  }

  BipartiteNormalForm nf;
  nf.region = region;
  // Frame layout: pair rows (e0, f0, e1, f1, ...), A rows, B rows, cross rows, passengers.
  LocalFrame frame;
  for (const auto& [e, f] : pairs) {
    frame.ops.push_back(e);
    frame.ops.push_back(f);
    nf.kinds.push_back(Kind::PairX);
    nf.kinds.push_back(Kind::PairZ);
  }
  const std::size_t ia = frame.ops.size();
  for (const auto& g : ga) {
    frame.ops.push_back(g);
    nf.kinds.push_back(Kind::SingleA);
  }
  const std::size_t ib = frame.ops.size();
  for (const auto& g : gb) {
    frame.ops.push_back(g);
    nf.kinds.push_back(Kind::SingleB);
  }
  const std::size_t ic = frame.ops.size();
  for (const auto& g : iso) {
    frame.ops.push_back(g);
    nf.kinds.push_back(Kind::Cross);
  }
  const std::size_t ip = frame.ops.size();
  nf.original = frame.ops;
  for (const auto& p : passengers) frame.ops.push_back(p);
  nf.sites.assign(ip, {0, 0});

  auto synthesize_side = [&](const QubitSet& side, std::size_t single_begin, std::size_t single_end, bool is_a) {
    QubitSet unused = side;
    for (std::size_t pk = 0; pk < pairs.size(); ++pk) {
      const std::size_t e = 2 * pk, f = 2 * pk + 1;
      const std::size_t s = frame.map_pair(e, f, unused);
      frame.apply(gates::H(), s);
      unused.set(s, false);
      (is_a ? nf.sites[e].first : nf.sites[e].second) = s;
      (is_a ? nf.sites[f].first : nf.sites[f].second) = s;
    }
    std::vector<std::size_t> iso_rows;
    for (std::size_t i = single_begin; i < single_end; ++i) iso_rows.push_back(i);
    for (std::size_t i = ic; i < ip; ++i) iso_rows.push_back(i);
    std::vector<std::size_t> targets;
    for (auto idx : iso_rows) {
      const std::size_t s = frame.collapse_to_z(idx, unused);
      for (auto t : targets)
        if (frame.ops[idx].z_at(t)) frame.apply(gates::CNOT(), t, s);
      targets.push_back(s);
      unused.set(s, false);
      if (idx >= ic) {
        (is_a ? nf.sites[idx].first : nf.sites[idx].second) = s;
      } else {
        nf.sites[idx] = {s, s};
      }
    }
    for (auto t : targets) frame.apply(gates::H(), t);
    return unused;
  };
  const QubitSet free_a = synthesize_side(region, ia, ib, true);
  const QubitSet free_b = synthesize_side(comp, ib, ic, false);

  nf.free_qubits = free_a | free_b;
  nf.gates = std::move(frame.gates);
  nf.rows.assign(frame.ops.begin(), frame.ops.begin() + static_cast<std::ptrdiff_t>(ip));
  nf.passengers.assign(frame.ops.begin() + static_cast<std::ptrdiff_t>(ip), frame.ops.end());

  // Shape check of the transformed rows.
  for (std::size_t i = 0; i < ip; ++i) {
    const auto& r = nf.rows[i];
    const auto [a, b] = nf.sites[i];
    PauliString want(n);
    switch (nf.kinds[i]) {
      case Kind::PairX:
      case Kind::Cross:
        want.set_letter(a, 'X');
        want.set_letter(b, 'X');
        break;
      case Kind::PairZ:
        want.set_letter(a, 'Z');
        want.set_letter(b, 'Z');
        break;
      case Kind::SingleA:
      case Kind::SingleB:
        want.set_letter(a, 'X');
        break;
    }
    if (!r.same_letters(want)) throw std::logic_error("bipartite_normal_form: row not in normal form");
  }
  return nf;
}

}  // namespace magicspread
