#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "dense.hpp"
#include "lengthscales.hpp"
#include "magic.hpp"

namespace magicspread {

/// Tallies of one randomized sweep comparing the gauge algorithms with the dense oracle.
struct OracleStats {
  std::size_t L = 0;
  std::size_t circuits = 0;
  std::size_t rejected = 0;  // draws where T injected no magic
  std::size_t regions = 0;
  std::size_t mismatches = 0;
  std::size_t bad_values = 0;
  std::size_t trichotomy_violations = 0;
  std::size_t complementarity_violations = 0;
  std::size_t table_mismatches = 0;
  std::size_t witness_checks = 0;
  std::size_t witness_failures = 0;
  double max_oracle_error = 0;
  double min_witness_fidelity = 1;
  std::vector<std::string> failures;  // first few failure descriptions

  std::size_t violations() const {
    return mismatches + bad_values + trichotomy_violations + complementarity_violations + table_mismatches +
           witness_failures;
  }
};

inline constexpr double kOracleTolerance = 1e-9;

inline bool allowed_magic_value(double v) {
  for (auto c : {MagicClass::Zero, MagicClass::Half, MagicClass::Full})
    if (std::abs(v - magic_value(c)) <= kOracleTolerance) return true;
  return false;
}

/// Full(A) iff the complement is case (ii); case (iv)/(v) is shared by both sides.
inline bool complementarity_holds(const CodeState& cs, const QubitSet& region) {
  const TableCase a = table_case(reducibility_flags(cs, region));
  const TableCase b = table_case(reducibility_flags(cs, ~region));
  if ((class_of(a) == MagicClass::Full) != (b == TableCase::II)) return false;
  const bool half_a = a == TableCase::IV || a == TableCase::V;
  const bool half_b = b == TableCase::IV || b == TableCase::V;
  return half_a == half_b;
}

/// Random doped circuit: random ensemble, doping, boundary and product initial state,
/// depth in [0, 3L], injection site uniform.
struct RandomDopedCircuit {
  CircuitSpec spec;
  std::size_t depth = 0;
  StabilizerState state;  // before the T gate
};

inline RandomDopedCircuit random_doped_circuit(std::size_t L, Rng& rng) {
  RandomDopedCircuit c;
  static constexpr Ensemble kEnsembles[3] = {Ensemble::RandomClifford, Ensemble::SdkiR, Ensemble::SdkiF};
  static constexpr double kDoping[3] = {0.0, 0.3, 0.6};
  c.spec.L = L;
  c.spec.ensemble = kEnsembles[rng.uniform_below(3)];
  c.spec.p = kDoping[rng.uniform_below(3)];
  c.spec.boundary = rng.coin() ? Boundary::Periodic : Boundary::Open;
  c.spec.initial = (L % 2 == 0 && rng.coin()) ? InitialKind::BellPairs : InitialKind::RandomProduct;
  c.spec.injection_site = static_cast<std::size_t>(rng.uniform_below(L));
  c.depth = static_cast<std::size_t>(rng.uniform_below(3 * L + 1));
  c.state = initial_state(c.spec.initial, L, rng);
  for (std::size_t t = 1; t <= c.depth; ++t) c.state.apply(brickwork_layer(c.spec, t, rng));
  return c;
}

/// Every ring-contiguous interval (as distinct sets) plus up to `n_random` random
/// non-contiguous regions.
inline std::vector<std::pair<QubitSet, bool>> oracle_regions(std::size_t L, std::size_t n_random, Rng& rng) {
  std::vector<std::pair<QubitSet, bool>> out;
  for (std::size_t w = 1; w < L; ++w)
    for (std::size_t s = 0; s < L; ++s) out.emplace_back(Interval::on_ring(s, w, L).qubits(L), true);
  out.emplace_back(full_set(L), true);
  auto contiguous_on_ring = [L](const QubitSet& a) {
    std::size_t runs = 0;
    for (std::size_t q = 0; q < L; ++q)
      if (a.get(q) && !a.get((q + L - 1) % L)) ++runs;
    return runs <= 1;
  };
  if (L >= 4) {
    std::size_t found = 0, tries = 0;
    while (found < n_random && tries < 100 * n_random) {
      ++tries;
      QubitSet a(L);
      for (std::size_t q = 0; q < L; ++q) a.set(q, rng.coin());
      if (a.none() || contiguous_on_ring(a)) continue;
      out.emplace_back(std::move(a), false);
      ++found;
    }
  }
  return out;
}

/// One state of the sweep: all checks over all regions.
inline void oracle_check_state(const CodeState& cs, const dense::Statevector& psi, std::size_t n_random, Rng& rng,
                               OracleStats& st) {
  const std::size_t L = cs.n;
  const IntervalTable table(cs);
  auto fail = [&](const std::string& what, const QubitSet& a) {
    if (st.failures.size() < 8) {
      std::string s = what + " L=" + std::to_string(L) + " region=";
      for (auto q : a.indices()) s += std::to_string(q + 1) + ";";
      st.failures.push_back(s + "\n" + cs.to_text());
    }
  };
  for (const auto& [region, contiguous] : oracle_regions(L, n_random, rng)) {
    ++st.regions;
    const MagicClass c1 = subsystem_magic_alg1(cs, region);
    const MagicClass c2 = subsystem_magic_alg2(cs, region);
    const BmgDecomposition bmg = compute_bmg_alg3(cs, region);
    const double d = dense::sre2(psi, region);
    const double s3 = sre2_from_spectrum(bmg.spectrum);
    const double err = std::max(std::abs(d - magic_value(c1)), std::abs(d - s3));
    st.max_oracle_error = std::max(st.max_oracle_error, err);
    if (c1 != c2 || c1 != bmg.magic_class() || err > kOracleTolerance) {
      ++st.mismatches;
      fail("class mismatch", region);
    }
    if (!allowed_magic_value(d)) {
      ++st.bad_values;
      fail("value outside {0, log2(6/5), log2(4/3)}", region);
    }
    if (!trichotomy_holds(logical_reducibility(cs, region))) {
      ++st.trichotomy_violations;
      fail("trichotomy", region);
    }
    if (!complementarity_holds(cs, region)) {
      ++st.complementarity_violations;
      fail("complementarity", region);
    }
    if (!contiguous) continue;
    const auto idx = region.indices();
    // Ring-contiguous: recover the start as the member whose left neighbour is absent.
    std::size_t s0 = idx.front();
    if (idx.size() < L)
      for (auto q : idx)
        if (!region.get((q + L - 1) % L)) s0 = q;
    if (table.full(s0, idx.size()) != (c1 == MagicClass::Full)) {
      ++st.table_mismatches;
      fail("interval table", region);
    }
    if (c1 != MagicClass::Full) continue;
    ++st.witness_checks;
    const ExtractionWitness w = extraction_witness(cs, region);
    dense::Statevector out = psi;
    dense::apply_circuit(out, w.circuit);
    const double fid = region.get(w.qubit) ? dense::t_state_fidelity(out, w.qubit) : 0.0;
    st.min_witness_fidelity = std::min(st.min_witness_fidelity, fid);
    bool local = true;
    for (const auto& op : w.circuit)
      for (auto q : op.site_span()) local = local && region.get(q);
    if (fid < 1.0 - kOracleTolerance || !local) {
      ++st.witness_failures;
      fail("extraction witness", region);
    }
  }
}

/// `circuits` successfully doped random circuits at size L.
inline OracleStats oracle_sweep(std::size_t L, std::size_t circuits, std::size_t n_random, std::uint64_t seed) {
  OracleStats st;
  st.L = L;
  std::uint64_t draw = 0;
  while (st.circuits < circuits) {
    Rng rng({seed, L, draw++});
    const RandomDopedCircuit rc = random_doped_circuit(L, rng);
    CodeState cs;
    try {
      cs = inject_t(rc.state, rc.spec.injection_site);
    } catch (const NoMagicInjected&) {
      ++st.rejected;
      continue;
    }
    ++st.circuits;
    dense::Statevector psi = dense::from_stabilizers(rc.state);
    dense::apply_t(psi, rc.spec.injection_site);
    oracle_check_state(cs, psi, n_random, rng, st);
  }
  return st;
}

}  // namespace magicspread
