#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace magicspread;
using testutil::qs;

TEST(DenseOracle, TStateHasOneUnit) {
  dense::Statevector psi = dense::from_stabilizers(StabilizerState::from_strings({"+X"}));
  dense::apply_t(psi, 0);
  EXPECT_NEAR(dense::sre2(psi, qs(1, {1})), std::log2(4.0 / 3.0), 1e-12);
  EXPECT_NEAR(dense::t_state_fidelity(psi, 0), 1.0, 1e-12);
}

TEST(DenseOracle, StabilizerStatesHaveNoMagic) {
  Rng rng(151);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng.uniform_below(6);
    const dense::Statevector psi = dense::from_stabilizers(testutil::random_stabilizer_state(n, rng));
    EXPECT_NEAR(dense::norm(psi), 1.0, 1e-12);
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
      QubitSet a(n);
      for (std::size_t q = 0; q < n; ++q) a.set(q, (m >> q) & 1u);
      EXPECT_NEAR(dense::sre2(psi, a), 0.0, 1e-12);
    }
  }
}

TEST(DenseOracle, AllRegionsAtL4MatchAlg1) {
  Rng rng(157);
  std::size_t states = 0;
  while (states < 40) {
    const RandomDopedCircuit rc = random_doped_circuit(4, rng);
    CodeState cs;
    try {
      cs = inject_t(rc.state, rc.spec.injection_site);
    } catch (const NoMagicInjected&) {
      continue;
    }
    ++states;
    dense::Statevector psi = dense::from_stabilizers(rc.state);
    dense::apply_t(psi, rc.spec.injection_site);
    for (std::uint32_t m = 0; m < 16; ++m) {
      QubitSet a(4);
      for (std::size_t q = 0; q < 4; ++q) a.set(q, (m >> q) & 1u);
      const double v = dense::sre2(psi, a);
      EXPECT_TRUE(allowed_magic_value(v)) << v;
      EXPECT_NEAR(v, magic_value(subsystem_magic_alg1(cs, a)), 1e-9);
    }
  }
}

TEST(DenseOracle, SpectrumIsSortedAndNormalized) {
  Rng rng(163);
  const dense::Statevector psi = dense::from_stabilizers(testutil::random_stabilizer_state(4, rng));
  const auto spec = dense::pauli_spectrum(psi, full_set(4));
  ASSERT_EQ(spec.size(), 256u);
  EXPECT_TRUE(std::is_sorted(spec.rbegin(), spec.rend()));
  double sum = 0;
  for (double v : spec) sum += v;
  // Pure state: sum_P Tr(rho P)^2 / 2^n = 1.
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(DenseOracle, SizeCapEnforced) {
  dense::Statevector psi(std::size_t{1} << 13, 0.0);
  psi[0] = 1;
  EXPECT_THROW(dense::sre2(psi, full_set(13)), dense::OracleSizeExceeded);
  EXPECT_THROW(dense::from_stabilizers(StabilizerState::zero_state(17)), dense::OracleSizeExceeded);
}

TEST(DenseOracle, GateUnitariesAreUnitary) {
  Rng rng(167);
  for (int k = 0; k < 50; ++k) {
    const dense::Matrix u = dense::gate_unitary(sample_clifford_2q(rng));
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        dense::cplx s = 0;
        for (std::size_t k2 = 0; k2 < 4; ++k2) s += u[r][k2] * std::conj(u[c][k2]);
        EXPECT_NEAR(std::abs(s - dense::cplx(r == c ? 1.0 : 0.0)), 0.0, 1e-12);
      }
  }
}
