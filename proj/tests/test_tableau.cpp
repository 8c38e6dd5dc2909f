#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace magicspread;
using testutil::P;
using testutil::qs;

TEST(ApplyGate, Examples) {
  StabilizerState s = StabilizerState::from_strings({"+Z"});
  s.apply_gate(gates::H(), {0});
  EXPECT_EQ(s.generators()[0], P("+X"));

  StabilizerState t = StabilizerState::from_strings({"+XI"});
  t.apply_gate(gates::CZ(), {0, 1});
  EXPECT_EQ(t.generators()[0], P("+XZ"));

  StabilizerState u = StabilizerState::from_strings({"+ZI"});
  u.apply_gate(gates::SDKI_f(), {0, 1});
  EXPECT_EQ(u.generators()[0], P("+XZ"));
}

TEST(ApplyGate, BadSitesRejected) {
  StabilizerState s = StabilizerState::zero_state(3);
  EXPECT_THROW(s.apply_gate(gates::CZ(), {1, 1}), std::invalid_argument);
  EXPECT_THROW(s.apply_gate(gates::CZ(), {1, 3}), std::invalid_argument);
}

TEST(ApplyGate, ReversedSitesSwapRoles) {
  StabilizerState s = StabilizerState::from_strings({"+ZII", "+IZI", "+IIZ"});
  s.apply_gate(gates::H(), {2});
  s.apply_gate(gates::CNOT(), {2, 0});  // control qubit 3, target qubit 1
  EXPECT_EQ(s.group_sign(P("+XIX")), 1);
}

TEST(ApplyGate, PreservesValidity) {
  Rng rng(61);
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = 2 + rng.uniform_below(7);
    StabilizerState s = StabilizerState::zero_state(n);
    s.apply_map(sample_clifford(n, rng));
    const std::size_t a = rng.uniform_below(n);
    std::size_t b = rng.uniform_below(n - 1);
    if (b >= a) ++b;
    s.apply_gate(sample_clifford_2q(rng), {a, b});
    ASSERT_TRUE(s.is_valid());
    ASSERT_TRUE(s.is_pure());
  }
}

TEST(ApplyGate, MatchesDenseEvolution) {
  Rng rng(67);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + rng.uniform_below(5);
    StabilizerState s = testutil::random_stabilizer_state(n, rng);
    dense::Statevector psi = dense::from_stabilizers(s);
    for (int g = 0; g < 10; ++g) {
      const std::size_t a = rng.uniform_below(n);
      std::size_t b = rng.uniform_below(n - 1);
      if (b >= a) ++b;
      GateOp op{sample_clifford_2q(rng), {a, b}};
      s.apply(op);
      dense::apply_gate(psi, op);
    }
    for (const auto& g : s.generators()) EXPECT_NEAR(std::real(dense::expectation(psi, g)), 1.0, 1e-10);
  }
}

TEST(Entropy, Examples) {
  const StabilizerState bell = StabilizerState::from_strings({"+XX", "+ZZ"});
  EXPECT_EQ(bell.entropy(qs(2, {1})), 1u);
  EXPECT_EQ(StabilizerState::zero_state(2).entropy(qs(2, {1})), 0u);
  const StabilizerState ghz = StabilizerState::from_strings({"+XXX", "+ZZI", "+IZZ"});
  EXPECT_EQ(ghz.entropy(qs(3, {1, 2})), 1u);
  EXPECT_EQ(ghz.entropy(qs(3, {2})), 1u);
}

TEST(Entropy, ComplementSymmetricForPureStates) {
  Rng rng(71);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + rng.uniform_below(9);
    const StabilizerState s = testutil::random_stabilizer_state(n, rng);
    for (std::uint32_t m = 1; m + 1 < (1u << n); ++m) {
      QubitSet a(n);
      for (std::size_t q = 0; q < n; ++q) a.set(q, (m >> q) & 1u);
      ASSERT_EQ(s.entropy(a), s.entropy(~a));
    }
  }
}

TEST(Entropy, AgreesWithDenseRenyi) {
  Rng rng(73);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 2 + rng.uniform_below(7);
    const StabilizerState s = testutil::random_stabilizer_state(n, rng, 2);
    const dense::Statevector psi = dense::from_stabilizers(s);
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
      QubitSet a(n);
      for (std::size_t q = 0; q < n; ++q) a.set(q, (m >> q) & 1u);
      EXPECT_NEAR(dense::renyi2(psi, a), static_cast<double>(s.entropy(a)), 1e-9);
    }
  }
}

TEST(Entropy, MixedStatesUseGeneratorCount) {
  // One generator on two qubits: maximally mixed except for ZZ.
  const StabilizerState s = StabilizerState::from_strings({"+ZZ"});
  EXPECT_EQ(s.entropy(qs(2, {1})), 1u);
  EXPECT_EQ(s.entropy(full_set(2)), 1u);
}

TEST(Entropy, HalfCutGrowthTracksEntanglementVelocity) {
  constexpr std::size_t L = 64, T = L / 4, kReal = 400;
  for (double p : {0.0, 0.3}) {
    CircuitSpec spec;
    spec.L = L;
    spec.p = p;
    QubitSet half(L);
    for (std::size_t q = 0; q < L / 2; ++q) half.set(q);
    std::vector<double> mean(T + 1, 0.0);
    for (std::size_t r = 0; r < kReal; ++r) {
      Rng ir({7, r});
      StabilizerState st = initial_state(spec.initial, L, ir);
      mean[0] += static_cast<double>(st.entropy(half)) / kReal;
      for (std::size_t t = 1; t <= T; ++t) {
        Rng lr({8, r, t});
        st.apply(brickwork_layer(spec, t, lr));
        mean[t] += static_cast<double>(st.entropy(half)) / kReal;
      }
    }
    std::vector<std::pair<double, double>> series;
    for (std::size_t t = 0; t <= T; ++t) series.emplace_back(static_cast<double>(t), mean[t]);
    const FitResult fit = fit_early_slope(series, FitWindow{-1e300, 1e300, 2});
    const double ve = v_entanglement(v_butterfly(p, Ensemble::RandomClifford));
    EXPECT_NEAR(fit.slope / ve, 1.0, 0.10) << "p=" << p << " slope=" << fit.slope << " v_E=" << ve;
  }
}

TEST(Measure, Examples) {
  Rng rng(79);
  StabilizerState z = StabilizerState::zero_state(1);
  EXPECT_EQ(z.measure(P("+Z"), rng), 1);
  EXPECT_EQ(z, StabilizerState::zero_state(1));
  EXPECT_EQ(z.measure(P("-Z"), rng), -1);

  int plus = 0;
  for (int k = 0; k < 2000; ++k) {
    auto [out, post] = measure_pauli(StabilizerState::zero_state(1), P("+X"), rng);
    plus += out > 0;
    EXPECT_EQ(post.generators()[0], out > 0 ? P("+X") : P("-X"));
  }
  EXPECT_NEAR(plus, 1000, 5 * std::sqrt(500.0));

  const StabilizerState bell = StabilizerState::from_strings({"+XX", "+ZZ"});
  auto [out, post] = measure_pauli(bell, P("+ZZ"), rng);
  EXPECT_EQ(out, 1);
  EXPECT_EQ(post, bell);
  EXPECT_THROW(z.measure(P("+iZ"), rng), std::invalid_argument);
}

TEST(Measure, PostStateIsValidAndContainsOutcome) {
  Rng rng(83);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + rng.uniform_below(6);
    StabilizerState s = testutil::random_stabilizer_state(n, rng);
    const PauliString p = testutil::random_pauli(n, rng);
    if (p.is_identity()) continue;
    const int out = s.measure(p, rng);
    EXPECT_TRUE(s.is_valid());
    EXPECT_TRUE(s.is_pure());
    EXPECT_EQ(s.group_sign(p), out);
  }
}

TEST(TableauText, RoundTrips) {
  Rng rng(89);
  for (int k = 0; k < 50; ++k) {
    const StabilizerState s = testutil::random_stabilizer_state(1 + rng.uniform_below(10), rng);
    const std::string text = s.to_text();
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "n=" + std::to_string(s.n_qubits()) + " k=" + std::to_string(s.generator_count()));
    EXPECT_EQ(StabilizerState::from_text(text), s);
  }
  EXPECT_THROW(StabilizerState::from_text("garbage\n"), std::invalid_argument);
  EXPECT_THROW(StabilizerState::from_text("n=2 k=2\n+ZZ\n"), std::invalid_argument);
}
