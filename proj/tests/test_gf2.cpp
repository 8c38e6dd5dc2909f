#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace magicspread;
using testutil::P;
using testutil::qs;

namespace {

BinaryMatrix rows_of(std::size_t cols, const std::vector<std::vector<std::size_t>>& rows) {
  BinaryMatrix m(cols);
  for (const auto& r : rows) m.push_back(BitVector::from_range(cols, r));
  return m;
}

// Largest independent subset by trying all subsets (span size doubling test).
std::size_t brute_rank(const BinaryMatrix& m) {
  const std::size_t r = m.row_count();
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << r); ++s) {
    const std::size_t k = static_cast<std::size_t>(__builtin_popcount(s));
    if (k <= best) continue;
    bool independent = true;
    for (std::uint32_t c = s; c && independent; c = (c - 1) & s) {
      BitVector acc(m.col_count());
      for (std::size_t i = 0; i < r; ++i)
        if ((c >> i) & 1u) acc ^= m.row(i);
      independent = acc.any();
    }
    if (independent) best = k;
  }
  return best;
}

}  // namespace

TEST(RankGf2, Examples) {
  BinaryMatrix id(5);
  for (std::size_t i = 0; i < 5; ++i) id.push_back(BitVector::from_indices(5, {i}));
  EXPECT_EQ(rank_gf2(id), 5u);
  EXPECT_EQ(rank_gf2(BinaryMatrix(4, 6)), 0u);
  EXPECT_EQ(rank_gf2(rows_of(6, {{1, 3}, {1, 3}})), 1u);
}

TEST(RankGf2, InputUnmodified) {
  const BinaryMatrix m = rows_of(4, {{0, 1}, {1, 2}, {0, 2}});
  const BinaryMatrix copy = m;
  EXPECT_EQ(rank_gf2(m), 2u);
  for (std::size_t i = 0; i < m.row_count(); ++i) EXPECT_EQ(m.row(i), copy.row(i));
}

TEST(RankGf2, MatchesExhaustiveSearch) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng.uniform_below(12), cols = 1 + rng.uniform_below(10);
    BinaryMatrix m(cols);
    for (std::size_t i = 0; i < rows; ++i) {
      BitVector v(cols);
      // Sparse rows make dependencies common.
      for (std::size_t c = 0; c < cols; ++c) v.set(c, rng.uniform_below(3) == 0);
      m.push_back(v);
    }
    EXPECT_EQ(rank_gf2(m), brute_rank(m));
  }
}

TEST(SolveInSpan, Examples) {
  const BinaryMatrix b = rows_of(6, {{0, 2}, {1, 4}, {2, 3}, {5}});
  BitVector target = b.row(0);
  target ^= b.row(2);
  const auto mask = solve_in_span(target, b);
  ASSERT_TRUE(mask);
  EXPECT_EQ(mask->indices(), (std::vector<std::size_t>{0, 2}));

  const auto zero = solve_in_span(BitVector(6), b);
  ASSERT_TRUE(zero);
  EXPECT_TRUE(zero->none());

  EXPECT_FALSE(solve_in_span(BitVector::from_indices(6, {0}), b));
  EXPECT_THROW(solve_in_span(BitVector(5), b), DimensionMismatch);
}

TEST(SolveInSpan, RandomCombinationsRecovered) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.uniform_below(10), cols = 12;
    BinaryMatrix m(cols);
    for (std::size_t i = 0; i < rows; ++i) {
      BitVector v(cols);
      for (std::size_t c = 0; c < cols; ++c) v.set(c, rng.coin());
      m.push_back(v);
    }
    BitVector target(cols);
    for (std::size_t i = 0; i < rows; ++i)
      if (rng.coin()) target ^= m.row(i);
    const auto mask = solve_in_span(target, m);
    ASSERT_TRUE(mask);
    BitVector acc(cols);
    for (auto i : mask->indices()) acc ^= m.row(i);
    EXPECT_EQ(acc, target);
  }
}

TEST(ReduceSupport, Examples) {
  const auto r1 = reduce_support(P("XX"), std::vector{P("IX")}, qs(2, {1}));
  ASSERT_TRUE(r1);
  EXPECT_EQ(*r1, P("+XI"));

  EXPECT_FALSE(reduce_support(P("XX"), std::vector{P("ZZ")}, qs(2, {1})));

  const auto r3 = reduce_support(P("ZI"), std::vector{P("ZZ")}, qs(2, {2}));
  ASSERT_TRUE(r3);
  EXPECT_EQ(*r3, P("+IZ"));

  EXPECT_THROW(reduce_support(P("XX"), std::vector{P("X")}, qs(2, {1})), DimensionMismatch);
}

TEST(ReduceSupport, FullRegionReturnsInput) {
  Rng rng(29);
  for (int k = 0; k < 200; ++k) {
    const PauliString p = testutil::random_pauli(6, rng);
    std::vector<PauliString> gens;
    for (int g = 0; g < 4; ++g) gens.push_back(testutil::random_pauli(6, rng));
    const auto r = reduce_support(p, gens, full_set(6));
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, p);
  }
}

TEST(ReduceSupport, ResultIsInCosetAndRegion) {
  Rng rng(31);
  std::size_t found = 0;
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 5;
    const PauliString p = testutil::random_pauli(n, rng);
    std::vector<PauliString> gens;
    const std::size_t ng = 1 + rng.uniform_below(6);
    for (std::size_t g = 0; g < ng; ++g) gens.push_back(testutil::random_pauli(n, rng));
    QubitSet region(n);
    for (std::size_t q = 0; q < n; ++q) region.set(q, rng.coin());
    const auto r = reduce_support(p, gens, region);
    // Brute force over all 2^ng combinations decides existence independently.
    bool exists = false;
    for (std::uint32_t c = 0; c < (1u << ng) && !exists; ++c) {
      PauliString q = p;
      for (std::size_t g = 0; g < ng; ++g)
        if ((c >> g) & 1u) q *= gens[g];
      exists = q.supported_in(region);
    }
    EXPECT_EQ(r.has_value(), exists);
    if (!r) continue;
    ++found;
    EXPECT_TRUE(r->supported_in(region));
    const auto mask = solve_in_span(BinaryMatrix::symplectic_vector(*r * p), BinaryMatrix::from_paulis(gens, n));
    EXPECT_TRUE(mask);
  }
  EXPECT_GT(found, 100u);
}

TEST(PauliRank, CountsIndependentStrings) {
  const std::vector<PauliString> ps{P("XX"), P("ZZ"), P("YY")};
  EXPECT_EQ(pauli_rank(ps), 2u);
}
