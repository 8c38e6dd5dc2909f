#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "test_util.hpp"

using namespace magicspread;
using testutil::P;

namespace {

// Every (X1, X2, Z1, Z2) image tuple of nonzero two-qubit Paulis obeying the canonical
// commutation relations, times 16 sign choices, enumerated from scratch.
std::set<std::uint32_t> enumerate_two_qubit_cliffords() {
  std::vector<PauliString> nonzero;
  for (unsigned idx = 1; idx < 16; ++idx) {
    PauliString p(2);
    p.x().set(0, idx & 1u);
    p.x().set(1, idx & 2u);
    p.z().set(0, idx & 4u);
    p.z().set(1, idx & 8u);
    p.set_letter_sign(0);
    nonzero.push_back(p);
  }
  std::set<std::uint32_t> keys;
  for (const auto& x1 : nonzero)
    for (const auto& x2 : nonzero)
      for (const auto& z1 : nonzero)
        for (const auto& z2 : nonzero) {
          if (symplectic_form(x1, x2) || symplectic_form(z1, z2) || symplectic_form(x1, z2) ||
              symplectic_form(x2, z1) || !symplectic_form(x1, z1) || !symplectic_form(x2, z2))
            continue;
          for (unsigned signs = 0; signs < 16; ++signs) {
            auto sg = [&](PauliString p, unsigned bit) {
              p.set_letter_sign((signs >> bit) & 1u ? 2u : 0u);
              return p;
            };
            const CliffordGate g(CliffordMap({sg(x1, 0), sg(x2, 1)}, {sg(z1, 2), sg(z2, 3)}));
            keys.insert(g.key());
          }
        }
  return keys;
}

// U P U^dagger via 4x4 matrices, compared with the table image.
void expect_conjugation_matches_dense(const CliffordGate& g) {
  const dense::Matrix u = dense::gate_unitary(g);
  const std::size_t k = g.arity(), d = std::size_t{1} << k;
  for (unsigned idx = 0; idx < (1u << (2 * k)); ++idx) {
    PauliString p(k);
    for (std::size_t q = 0; q < k; ++q) {
      p.x().set(q, (idx >> q) & 1u);
      p.z().set(q, (idx >> (k + q)) & 1u);
    }
    p.set_letter_sign(0);
    const PauliString img = g.map().apply(p);
    for (std::size_t col = 0; col < d; ++col) {
      dense::Statevector e(d);
      e[col] = 1;
      // lhs = U P e, rhs = img U e
      dense::Statevector pe = dense::apply_pauli(p, e), lhs(d), ue(d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          lhs[r] += u[r][c] * pe[c];
          ue[r] += u[r][c] * e[c];
        }
      const dense::Statevector rhs = dense::apply_pauli(img, ue);
      for (std::size_t r = 0; r < d; ++r) EXPECT_NEAR(std::abs(lhs[r] - rhs[r]), 0.0, 1e-12);
    }
  }
}

}  // namespace

TEST(CliffordGate, NamedGateImages) {
  EXPECT_EQ(gates::H().map().x_image(0), P("+Z"));
  EXPECT_EQ(gates::S().map().x_image(0), P("+Y"));
  EXPECT_EQ(gates::CZ().map().x_image(0), P("+XZ"));
  EXPECT_EQ(gates::CNOT().map().z_image(1), P("+ZZ"));
  EXPECT_EQ(gates::SWAP().map().x_image(0), P("+IX"));
  EXPECT_THROW(CliffordGate::from_images({"+X"}, {"+X"}), std::invalid_argument);
}

TEST(CliffordGate, SdkifIsCzHadamardCz) {
  // Hand composition: Z I -> CZ -> Z I -> HH -> X I -> CZ -> X Z.
  EXPECT_EQ(gates::SDKI_f().map().apply(P("+ZI")), P("+XZ"));
  EXPECT_EQ(gates::SDKI_f().map().apply(P("+IZ")), P("+ZX"));
}

TEST(CliffordGate, TablesAgreeWithUnitaries) {
  for (const auto& g : {gates::H(), gates::S(), gates::S_dag(), gates::X(), gates::Y(), gates::Z()})
    expect_conjugation_matches_dense(g);
  for (const auto& g : {gates::CNOT(), gates::CZ(), gates::SWAP(), gates::SDKI_f()}) expect_conjugation_matches_dense(g);
  Rng rng(41);
  for (int k = 0; k < 30; ++k) expect_conjugation_matches_dense(sample_clifford_2q(rng));
}

TEST(CliffordGate, ThenComposesLeftToRight) {
  const CliffordGate hs = gates::H().then(gates::S());
  // X -> Z under H, Z -> Z under S.
  EXPECT_EQ(hs.map().x_image(0), P("+Z"));
  EXPECT_EQ(hs.map().z_image(0), P("+Y"));
  EXPECT_EQ(gates::H().then(gates::H()), gates::identity());
}

TEST(CliffordGroup, SizesMatchIndependentEnumeration) {
  EXPECT_EQ(clifford_group(1).size(), 24u);
  const auto& two = clifford_group(2);
  ASSERT_EQ(two.size(), 11520u);
  const std::set<std::uint32_t> expected = enumerate_two_qubit_cliffords();
  EXPECT_EQ(expected.size(), 11520u);
  std::set<std::uint32_t> got;
  for (const auto& g : two) got.insert(g.key());
  EXPECT_EQ(got, expected);
}

TEST(SampleClifford2q, GoldenFirstDraw) {
  Rng rng(20240101);
  const CliffordGate g = sample_clifford_2q(rng);
  EXPECT_EQ(g.key(), 6369013u);
  EXPECT_EQ(g.map().x_image(0), P("+XZ"));
  EXPECT_EQ(g.map().z_image(0), P("-XY"));
  EXPECT_EQ(g.map().x_image(1), P("-XI"));
  EXPECT_EQ(g.map().z_image(1), P("+YX"));
}

TEST(SampleClifford2q, ImageOfXIUniformOverFifteenPaulis) {
  // Unsigned images: 15 non-identity two-qubit strings, each with probability 1/15.
  // Signed: 30 classes, each 1/30.
  constexpr std::size_t kDraws = 1000000;
  Rng rng(43);
  std::array<std::size_t, 16> unsigned_counts{};
  std::array<std::size_t, 32> signed_counts{};
  for (std::size_t k = 0; k < kDraws; ++k) {
    const CliffordGate g = sample_clifford_2q(rng);
    const auto& e = g.entry(1);
    const unsigned idx = e.x | (e.z << 2);
    ++unsigned_counts[idx];
    const unsigned neg = ((e.phase + 4u - static_cast<unsigned>(__builtin_popcount(e.x & e.z))) & 3u) == 2u;
    ++signed_counts[2 * idx + neg];
  }
  EXPECT_EQ(unsigned_counts[0], 0u);
  const double p = 1.0 / 15.0, mean = kDraws * p, sigma = std::sqrt(kDraws * p * (1 - p));
  for (unsigned idx = 1; idx < 16; ++idx) EXPECT_NEAR(unsigned_counts[idx], mean, 5 * sigma) << idx;
  const double ps = 1.0 / 30.0, ms = kDraws * ps, ss = std::sqrt(kDraws * ps * (1 - ps));
  for (unsigned idx = 2; idx < 32; ++idx) EXPECT_NEAR(signed_counts[idx], ms, 5 * ss) << idx;
  double chi2 = 0;
  for (unsigned idx = 1; idx < 16; ++idx) chi2 += std::pow(unsigned_counts[idx] - mean, 2) / mean;
  EXPECT_LT(chi2, 36.1);  // 99.9% quantile of chi-square with 14 dof
}

TEST(SampleClifford2q, ClosedUnderComposition) {
  Rng rng(47);
  for (int k = 0; k < 1000; ++k) {
    const CliffordGate a = sample_clifford_2q(rng), b = sample_clifford_2q(rng);
    const CliffordGate c = a.then(b);
    EXPECT_TRUE(c.map().is_valid());
    EXPECT_TRUE(std::binary_search(clifford_group(2).begin(), clifford_group(2).end(), c,
                                   [](const CliffordGate& x, const CliffordGate& y) { return x.key() < y.key(); }));
  }
}

TEST(SampleClifford, GlobalMapsAreValidAndVaried) {
  Rng rng(53);
  std::set<std::string> seen;
  for (int k = 0; k < 50; ++k) {
    const CliffordMap u = sample_clifford(7, rng);
    EXPECT_TRUE(u.is_valid());
    seen.insert(u.x_image(0).to_string());
  }
  EXPECT_GT(seen.size(), 40u);
}

TEST(SampleClifford, TwoQubitMapsAreUniformOverGroup) {
  // The generic sampler at n = 2 should also hit every class about equally often.
  Rng rng(59);
  constexpr std::size_t kDraws = 230400;  // 20 per element
  std::map<std::uint32_t, std::size_t> counts;
  for (std::size_t k = 0; k < kDraws; ++k) ++counts[CliffordGate(sample_clifford(2, rng)).key()];
  EXPECT_EQ(counts.size(), 11520u);
  double chi2 = 0;
  for (const auto& [key, c] : counts) chi2 += std::pow(c - 20.0, 2) / 20.0;
  // dof 11519: mean 11519, sd ~151.8; allow 5 sd.
  EXPECT_LT(chi2, 11519 + 5 * 151.8);
}
