#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bitvector.hpp"
#include "pauli.hpp"

namespace magicspread {

/// Rows of equal-width bit vectors. Pauli rows use the symplectic layout (x-half, then z-half).
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(std::size_t cols) : cols_(cols) {}
  BinaryMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  static BinaryMatrix from_paulis(std::span<const PauliString> ps, std::size_t n_qubits) {
    BinaryMatrix m(2 * n_qubits);
    for (const auto& p : ps) m.push_back(symplectic_vector(p));
    return m;
  }

  /// 2n-bit vector with x in [0,n) and z in [n,2n).
  static BitVector symplectic_vector(const PauliString& p) {
    const std::size_t n = p.n_qubits();
    BitVector v(2 * n);
    for (auto q : p.x().indices()) v.set(q);
    for (auto q : p.z().indices()) v.set(n + q);
    return v;
  }

  void push_back(BitVector row) {
    if (row.size() != cols_) throw DimensionMismatch("BinaryMatrix: row width mismatch");
    rows_.push_back(std::move(row));
  }

  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return cols_; }
  const BitVector& row(std::size_t i) const { return rows_[i]; }
  BitVector& row(std::size_t i) { return rows_[i]; }
  const std::vector<BitVector>& rows() const { return rows_; }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Reduced row echelon form with combination tracking.
///
/// Columns are scanned left to right; the pivot for a column is the lowest-index row not yet
/// used. `combo[i]` records which input rows XOR to `rows[i]`.
struct Echelon {
  std::vector<BitVector> rows;
  std::vector<BitVector> combo;
  std::vector<std::size_t> pivot_cols;  // pivot column of rows[0..rank)
  std::size_t rank = 0;

  /// Reduces `target` by the pivot rows; returns the residual and accumulates the mask used.
  BitVector reduce(BitVector target, BitVector* mask) const {
    for (std::size_t i = 0; i < rank; ++i) {
      if (target.get(pivot_cols[i])) {
        target ^= rows[i];
        if (mask) *mask ^= combo[i];
      }
    }
    return target;
  }
};

/// Gaussian elimination restricted to the columns set in `col_mask` (all columns if empty).
inline Echelon echelon_form(const BinaryMatrix& m, const BitVector* col_mask = nullptr) {
  Echelon e;
  const std::size_t r = m.row_count();
  e.rows.reserve(r);
  e.combo.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    e.rows.push_back(col_mask ? (m.row(i) & *col_mask) : m.row(i));
    BitVector c(r);
    c.set(i);
    e.combo.push_back(std::move(c));
  }
  std::size_t next = 0;
  for (std::size_t col = 0; col < m.col_count() && next < r; ++col) {
    if (col_mask && !col_mask->get(col)) continue;
    std::size_t piv = r;
    for (std::size_t i = next; i < r; ++i) {
      if (e.rows[i].get(col)) {
        piv = i;
        break;
      }
    }
    if (piv == r) continue;
    if (piv != next) {
      std::swap(e.rows[piv], e.rows[next]);
      std::swap(e.combo[piv], e.combo[next]);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (i != next && e.rows[i].get(col)) {
        e.rows[i] ^= e.rows[next];
        e.combo[i] ^= e.combo[next];
      }
    }
    e.pivot_cols.push_back(col);
    ++next;
  }
  e.rank = next;
  return e;
}

/// In-place echelon variant: rewrites `m` into reduced row echelon form and returns its rank.
inline std::size_t row_reduce_inplace(BinaryMatrix& m) {
  Echelon e = echelon_form(m);
  for (std::size_t i = 0; i < m.row_count(); ++i) m.row(i) = std::move(e.rows[i]);
  return e.rank;
}

inline std::size_t rank_gf2(const BinaryMatrix& m) {
  // Rank only: skip combination tracking.
  std::vector<BitVector> rows = m.rows();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.col_count() && rank < rows.size(); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t i = rank; i < rows.size(); ++i) {
      if (rows[i].get(col)) {
        piv = i;
        break;
      }
    }
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i)
      if (rows[i].get(col)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

/// Mask c over basis rows with XOR of the selected rows equal to `target`, if one exists.
inline std::optional<BitVector> solve_in_span(const BitVector& target, const BinaryMatrix& basis) {
  if (target.size() != basis.col_count()) throw DimensionMismatch("solve_in_span: width mismatch");
  const Echelon e = echelon_form(basis);
  BitVector mask(basis.row_count());
  if (e.reduce(target, &mask).any()) return std::nullopt;
  return mask;
}

/// Symplectic column mask selecting the x and z columns of qubits in `qubits`.
inline BitVector symplectic_columns(const QubitSet& qubits) {
  const std::size_t n = qubits.size();
  BitVector cols(2 * n);
  for (auto q : qubits.indices()) {
    cols.set(q);
    cols.set(n + q);
  }
  return cols;
}

/// Product p * g_{i1} * g_{i2} * ... over the set bits of `mask`, in increasing index order.
inline PauliString apply_combination(PauliString p, std::span<const PauliString> gens, const BitVector& mask) {
  for (auto i : mask.indices()) p *= gens[i];
  return p;
}

/// p' = p * g with g in <gens> and support(p') inside `region`, or nothing if no such g exists.
/// Also returns the combination mask when `mask_out` is given.
inline std::optional<PauliString> reduce_support(const PauliString& p, std::span<const PauliString> gens,
                                                 const QubitSet& region, BitVector* mask_out = nullptr) {
  const std::size_t n = p.n_qubits();
  if (region.size() != n) throw DimensionMismatch("reduce_support: region size mismatch");
  for (const auto& g : gens) p.check_dim(g);
  const BitVector cols = symplectic_columns(~region);
  const BinaryMatrix m = BinaryMatrix::from_paulis(gens, n);
  const Echelon e = echelon_form(m, &cols);
  BitVector mask(gens.size());
  if (e.reduce(BinaryMatrix::symplectic_vector(p) & cols, &mask).any()) return std::nullopt;
  if (mask_out) *mask_out = mask;
  return apply_combination(p, gens, mask);
}

inline std::optional<PauliString> reduce_support(const PauliString& p, const std::vector<PauliString>& gens,
                                                 const QubitSet& region, BitVector* mask_out = nullptr) {
  return reduce_support(p, std::span<const PauliString>(gens), region, mask_out);
}

/// True if p * g is supported in `region` for some g in <gens>.
inline bool reducible(const PauliString& p, std::span<const PauliString> gens, const QubitSet& region) {
  return reduce_support(p, gens, region).has_value();
}

/// Rank of a list of Pauli strings as symplectic vectors.
inline std::size_t pauli_rank(std::span<const PauliString> ps) {
  if (ps.empty()) return 0;
  return rank_gf2(BinaryMatrix::from_paulis(ps, ps.front().n_qubits()));
}

}  // namespace magicspread
