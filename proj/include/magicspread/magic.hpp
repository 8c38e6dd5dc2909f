#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "codestate.hpp"
#include "gf2.hpp"
#include "normal_form.hpp"
#include "pauli.hpp"
#include "tableau.hpp"

namespace magicspread {

/// Normalized 2-SRE of a subsystem of a single-T state takes one of three values.
enum class MagicClass { Zero, Half, Full };

inline double magic_value(MagicClass c) {
  switch (c) {
    case MagicClass::Full: return std::log2(4.0 / 3.0);
    case MagicClass::Half: return std::log2(6.0 / 5.0);
    default: return 0.0;
  }
}

inline const char* to_string(MagicClass c) {
  switch (c) {
    case MagicClass::Full: return "full";
    case MagicClass::Half: return "half";
    default: return "zero";
  }
}

/// Row of the reducibility table, named by roman numeral.
enum class TableCase { I, II, III, IV, V };

inline const char* to_string(TableCase c) {
  switch (c) {
    case TableCase::I: return "i";
    case TableCase::II: return "ii";
    case TableCase::III: return "iii";
    case TableCase::IV: return "iv";
    default: return "v";
  }
}

/// Whether Zbar and Ybar can be multiplied by stabilizers into A or into its complement B.
struct ReducibilityFlags {
  bool z_a = false;
  bool z_b = false;
  bool y_a = false;
  bool y_b = false;

  friend bool operator==(const ReducibilityFlags&, const ReducibilityFlags&) = default;
};

/// Table lookup; throws std::logic_error for flag patterns that cannot occur.
inline TableCase table_case(const ReducibilityFlags& f) {
  const int key = (f.z_a << 3) | (f.z_b << 2) | (f.y_a << 1) | static_cast<int>(f.y_b);
  switch (key) {
    case 0b1010: return TableCase::I;
    case 0b0101: return TableCase::II;
    case 0b0000: return TableCase::III;
    case 0b1100: return TableCase::IV;
    case 0b0011: return TableCase::V;
    default: throw std::logic_error("reducibility flags match no table row");
  }
}

inline MagicClass class_of(TableCase c) {
  switch (c) {
    case TableCase::I: return MagicClass::Full;
    case TableCase::IV:
    case TableCase::V: return MagicClass::Half;
    default: return MagicClass::Zero;
  }
}

inline ReducibilityFlags reducibility_flags(const CodeState& cs, const QubitSet& region) {
  if (region.size() != cs.n) throw DimensionMismatch("region size mismatch");
  const QubitSet comp = ~region;
  const PauliString y = cs.logical_y();
  ReducibilityFlags f;
  f.z_a = reducible(cs.logical_z, cs.stabilizers, region);
  f.z_b = reducible(cs.logical_z, cs.stabilizers, comp);
  f.y_a = reducible(y, cs.stabilizers, region);
  f.y_b = reducible(y, cs.stabilizers, comp);
  return f;
}

/// Subsystem magic from the reducibility of Zbar and Ybar alone.
inline MagicClass subsystem_magic_alg1(const CodeState& cs, const QubitSet& region) {
  return class_of(table_case(reducibility_flags(cs, region)));
}

/// Logicals reducible to A and to B, in the order (X, Y, Z).
struct LogicalReducibility {
  std::array<bool, 3> to_a{};
  std::array<bool, 3> to_b{};
};

inline LogicalReducibility logical_reducibility(const CodeState& cs, const QubitSet& region) {
  const QubitSet comp = ~region;
  const std::array<PauliString, 3> ls{cs.logical_x, cs.logical_y(), cs.logical_z};
  LogicalReducibility r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.to_a[i] = reducible(ls[i], cs.stabilizers, region);
    r.to_b[i] = reducible(ls[i], cs.stabilizers, comp);
  }
  return r;
}

/// Exactly one of: all three logicals reducible to A and none to B; the mirror image; or one
/// logical reducible to both sides with the other two reducible to neither.
inline bool trichotomy_holds(const LogicalReducibility& r) {
  const int na = r.to_a[0] + r.to_a[1] + r.to_a[2];
  const int nb = r.to_b[0] + r.to_b[1] + r.to_b[2];
  if (na == 3 && nb == 0) return true;
  if (na == 0 && nb == 3) return true;
  if (na == 1 && nb == 1) {
    for (std::size_t i = 0; i < 3; ++i)
      if (r.to_a[i] && r.to_b[i]) return true;
  }
  return false;
}

/// True if some logical can be reduced to `region`, so acting there can destroy the magic.
inline bool destroyable(const CodeState& cs, const QubitSet& region) {
  const auto r = logical_reducibility(cs, region);
  return r.to_a[0] || r.to_a[1] || r.to_a[2];
}

/// Operator (1 + beta sigma) prod (1 + g_i) with beta != 1 on the logical generator.
struct PseudoStabilizer {
  PauliString logical;
  std::vector<PauliString> stabilizers;
  double beta = std::sqrt(2.0);
};

/// Terminal shape of the logical generator after the extended normal form.
enum class Alg2Outcome { I, II, III, IV };

inline const char* to_string(Alg2Outcome o) {
  switch (o) {
    case Alg2Outcome::I: return "i";
    case Alg2Outcome::II: return "ii";
    case Alg2Outcome::III: return "iii";
    default: return "iv";
  }
}

struct Alg2Result {
  Alg2Outcome outcome = Alg2Outcome::I;
  bool contributes = false;
  PauliString logical_generator;  // final form in the normal frame
};

/// Brings the pseudostabilizer to normal form across (region, rest).
///
/// The stabilizers are normalized on their own with the logical carried along as a passenger,
/// then stabilizer rows are multiplied into the logical; the logical is never multiplied into
/// a stabilizer row.
inline Alg2Result classify_pseudostabilizer_alg2(const PseudoStabilizer& ps, const QubitSet& region) {
  using Kind = BipartiteNormalForm::Kind;
  for (const auto& g : ps.stabilizers)
    if (!commutes(g, ps.logical)) throw std::invalid_argument("pseudostabilizer: logical must commute with stabilizers");
  const BipartiteNormalForm nf = bipartite_normal_form(ps.stabilizers, region, {ps.logical});
  PauliString lg = nf.passengers.front();
  std::optional<std::size_t> cross;
  for (std::size_t i = 0; i < nf.rows.size(); ++i) {
    const auto [a, b] = nf.sites[i];
    switch (nf.kinds[i]) {
      case Kind::PairX:
        if (lg.x_at(a)) lg *= nf.rows[i];
        break;
      case Kind::PairZ:
        if (lg.z_at(a)) lg *= nf.rows[i];
        break;
      case Kind::SingleA:
      case Kind::SingleB:
        if (lg.x_at(a)) lg *= nf.rows[i];
        break;
      case Kind::Cross:
        cross = i;
        break;
    }
  }
  Alg2Result res;
  if (cross) {
    const auto [a, b] = nf.sites[*cross];
    if (!lg.supported_in(qubit_set(lg.n_qubits(), {a, b})))
      throw std::logic_error("alg2: logical generator not reduced");
    if (lg.z_at(a) || lg.z_at(b)) {
      res.outcome = Alg2Outcome::I;
    } else {
      if (lg.x_at(a) && lg.x_at(b)) throw std::logic_error("alg2: logical generator equals a stabilizer");
      // Prefer the representative on A: X_a or X_b related by the cross row.
      if (lg.x_at(b)) lg *= nf.rows[*cross];
      res.outcome = Alg2Outcome::IV;
      res.contributes = true;
    }
  } else {
    const auto sup = lg.support().indices();
    if (sup.size() != 1 || !nf.free_qubits.get(sup.front()))
      throw std::logic_error("alg2: logical generator is not on the free qubit");
    const bool in_a = region.get(sup.front());
    res.outcome = in_a ? Alg2Outcome::II : Alg2Outcome::III;
    res.contributes = in_a;
  }
  res.logical_generator = std::move(lg);
  return res;
}

/// Combines the contributions of rho^(Z) and rho^(-Y): two halves make a full unit.
inline MagicClass subsystem_magic_alg2(const CodeState& cs, const QubitSet& region) {
  const PseudoStabilizer pz{cs.logical_z, cs.stabilizers};
  const PseudoStabilizer py{-cs.logical_y(), cs.stabilizers};
  const int c = classify_pseudostabilizer_alg2(pz, region).contributes +
                classify_pseudostabilizer_alg2(py, region).contributes;
  return c == 2 ? MagicClass::Full : (c == 1 ? MagicClass::Half : MagicClass::Zero);
}

/// Two-level Pauli spectrum of rho_A: xi_P = Tr(rho_A P)^2 / 2^|A|.
///
/// 2^dim(G_A) regular entries equal 2^-|A| and omega * 2^dim(G_A) magical entries equal
/// 2^-|A|-1.
struct PauliSpectrumSummary {
  std::size_t region_size = 0;
  std::size_t stabilizer_dim = 0;  // dim of the stabilizer subgroup supported on A
  unsigned omega = 0;

  double n_regular() const { return std::ldexp(1.0, static_cast<int>(stabilizer_dim)); }
  double n_magical() const { return omega * n_regular(); }
  double regular_value() const { return std::ldexp(1.0, -static_cast<int>(region_size)); }
  double magical_value() const { return std::ldexp(1.0, -static_cast<int>(region_size) - 1); }

  MagicClass magic_class() const {
    return omega == 2 ? MagicClass::Full : (omega == 1 ? MagicClass::Half : MagicClass::Zero);
  }
};

/// -log2(2^|A| sum xi^2 / sum xi), the normalized 2-SRE of the two-level spectrum.
inline double sre2_from_spectrum(const PauliSpectrumSummary& s) {
  if (s.omega > 2) throw std::invalid_argument("sre2_from_spectrum: omega must be 0, 1 or 2");
  // The common 2^dim factor cancels; work with unit counts.
  const double r = s.regular_value(), m = s.magical_value();
  const double sum_sq = r * r + s.omega * m * m;
  const double sum = r + s.omega * m;
  return -std::log2(std::ldexp(sum_sq, static_cast<int>(s.region_size)) / sum);
}

inline std::size_t subgroup_dim_on(const std::vector<PauliString>& gens, const QubitSet& region) {
  if (gens.empty()) return 0;
  const std::size_t n = region.size();
  const BitVector cols = symplectic_columns(~region);
  BinaryMatrix m(2 * n);
  for (const auto& g : gens) m.push_back(BinaryMatrix::symplectic_vector(g) & cols);
  return gens.size() - rank_gf2(m);
}

inline PauliSpectrumSummary pauli_spectrum_summary(const CodeState& cs, const QubitSet& region) {
  PauliSpectrumSummary s;
  s.region_size = region.popcount();
  s.stabilizer_dim = subgroup_dim_on(cs.stabilizers, region);
  s.omega = static_cast<unsigned>(reducible(cs.logical_z, cs.stabilizers, region)) +
            static_cast<unsigned>(reducible(cs.logical_y(), cs.stabilizers, region));
  return s;
}

/// Stabilizer generators split into those living on A, on B, and straddling the cut.
struct BmgDecomposition {
  std::vector<PauliString> a_list;
  std::vector<PauliString> b_list;
  std::vector<PauliString> h_list;
  ReducibilityFlags flags;
  TableCase case_id = TableCase::II;
  PauliSpectrumSummary spectrum;
  BipartiteNormalForm normal_form;

  MagicClass magic_class() const { return class_of(case_id); }
};

/// Bipartite magic gauge: local normal form of the stabilizers, generators mapped back to the
/// input frame, then logical reducibility checked against the new generators.
inline BmgDecomposition compute_bmg_alg3(const CodeState& cs, const QubitSet& region) {
  using Kind = BipartiteNormalForm::Kind;
  BmgDecomposition d;
  d.normal_form = bipartite_normal_form(cs.stabilizers, region);
  const auto& nf = d.normal_form;
  for (std::size_t i = 0; i < nf.original.size(); ++i) {
    switch (nf.kinds[i]) {
      case Kind::SingleA: d.a_list.push_back(nf.original[i]); break;
      case Kind::SingleB: d.b_list.push_back(nf.original[i]); break;
      default: d.h_list.push_back(nf.original[i]); break;
    }
  }
  if (d.a_list.size() + d.b_list.size() + d.h_list.size() != cs.stabilizers.size())
    throw std::logic_error("alg3: generator count changed");
  std::vector<PauliString> gauge = d.a_list;
  gauge.insert(gauge.end(), d.b_list.begin(), d.b_list.end());
  gauge.insert(gauge.end(), d.h_list.begin(), d.h_list.end());
  const QubitSet comp = ~region;
  const PauliString y = cs.logical_y();
  d.flags.z_a = reducible(cs.logical_z, gauge, region);
  d.flags.z_b = reducible(cs.logical_z, gauge, comp);
  d.flags.y_a = reducible(y, gauge, region);
  d.flags.y_b = reducible(y, gauge, comp);
  d.case_id = table_case(d.flags);
  d.spectrum.region_size = region.popcount();
  d.spectrum.stabilizer_dim = d.a_list.size();
  d.spectrum.omega = static_cast<unsigned>(d.flags.z_a) + static_cast<unsigned>(d.flags.y_a);
  return d;
}

/// Magic cannot be moved onto one qubit of the region with local Cliffords.
class NotExtractable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtractionWitness {
  Circuit circuit;        // gates acting inside the region only
  std::size_t qubit = 0;  // region qubit left in the T state
};

/// Local Clifford circuit on `region` leaving |T> = (|0> + e^{i pi/4}|1>)/sqrt2 on one region
/// qubit and a stabilizer state elsewhere.
inline ExtractionWitness extraction_witness(const CodeState& cs, const QubitSet& region) {
  auto xa = reduce_support(cs.logical_x, cs.stabilizers, region);
  auto za = reduce_support(cs.logical_z, cs.stabilizers, region);
  if (!xa || !za) throw NotExtractable("region does not hold a full unit of magic");
  LocalFrame frame;
  frame.ops = {*xa, *za};
  const std::size_t s = frame.map_pair(0, 1, region);
  // Xbar -> +Z_s and Zbar -> +X_s; then Ybar = -Y_s and rho_s = (1 + (X + Y)/sqrt2)/2.
  if (frame.ops[0].is_negative()) frame.apply(gates::X(), s);
  if (frame.ops[1].is_negative()) frame.apply(gates::Z(), s);
  return {std::move(frame.gates), s};
}

}  // namespace magicspread
