#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "codestate.hpp"
#include "magic.hpp"

namespace magicspread {

/// No contiguous interval carries the full magic; signals a corrupted CodeState.
class NoMagic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contiguous qubit interval with 1-based inclusive endpoints. A wrapping interval covers
/// start..L followed by 1..end.
struct Interval {
  std::size_t start = 1;
  std::size_t end = 1;
  bool wraps = false;

  std::size_t width(std::size_t L) const { return wraps ? L - start + 1 + end : end - start + 1; }

  bool is_valid(std::size_t L) const {
    if (start < 1 || end < 1 || start > L || end > L) return false;
    return wraps ? end + 1 < start : start <= end;
  }

  QubitSet qubits(std::size_t L) const {
    if (!is_valid(L)) throw std::invalid_argument("Interval: invalid for L=" + std::to_string(L));
    QubitSet s(L);
    if (wraps) {
      for (std::size_t q = start; q <= L; ++q) s.set(q - 1);
      for (std::size_t q = 1; q <= end; ++q) s.set(q - 1);
    } else {
      for (std::size_t q = start; q <= end; ++q) s.set(q - 1);
    }
    return s;
  }

  /// Interval of `w` sites starting at 0-based `s0` on a ring of L sites.
  static Interval on_ring(std::size_t s0, std::size_t w, std::size_t L) {
    if (w == 0 || w > L || s0 >= L) throw std::invalid_argument("Interval::on_ring: bad arguments");
    if (w == L) return {1, L, false};
    const std::size_t e0 = (s0 + w - 1) % L;
    return {s0 + 1, e0 + 1, e0 < s0};
  }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline bool extractable(const CodeState& cs, const Interval& iv) {
  return subsystem_magic_alg1(cs, iv.qubits(cs.n)) == MagicClass::Full;
}

/// dim V_[s,e] for every 0-based window s <= e, with V the span of `gens`; stored at s*n+e.
///
/// A basis with distinct lowest pivot columns (site-major order) gives V_[s,n) as the span of
/// rows whose lowest site is >= s. Re-echelonized by highest pivot, the rows supported up to
/// site e are exactly those with pivot site <= e.
inline std::vector<std::uint16_t> interval_dimensions(const std::vector<PauliString>& gens, std::size_t n) {
  const std::size_t cols = 2 * n;
  auto left_vec = [&](const PauliString& p) {
    BitVector v(cols);
    for (auto q : p.x().indices()) v.set(2 * q);
    for (auto q : p.z().indices()) v.set(2 * q + 1);
    return v;
  };
  std::vector<std::optional<BitVector>> left(cols);
  std::vector<std::vector<std::size_t>> by_site(n);
  for (const auto& g : gens) {
    BitVector v = left_vec(g);
    while (v.any()) {
      const std::size_t c = v.first_set();
      if (left[c]) {
        v ^= *left[c];
        continue;
      }
      left[c] = std::move(v);
      by_site[c / 2].push_back(c);
      break;
    }
  }
  auto mirrored = [&](const BitVector& v) {
    BitVector r(cols);
    for (auto c : v.indices()) r.set(2 * (n - 1 - c / 2) + (c & 1u));
    return r;
  };
  std::vector<std::optional<BitVector>> right(cols);
  std::vector<std::uint16_t> per_site(n, 0);
  std::vector<std::uint16_t> dims(n * n, 0);
  for (std::size_t s = n; s-- > 0;) {
    for (auto c : by_site[s]) {
      BitVector v = mirrored(*left[c]);
      while (v.any()) {
        const std::size_t rc = v.first_set();
        if (right[rc]) {
          v ^= *right[rc];
          continue;
        }
        right[rc] = std::move(v);
        ++per_site[n - 1 - rc / 2];
        break;
      }
    }
    std::uint16_t cum = 0;
    for (std::size_t e = 0; e < n; ++e) {
      cum = static_cast<std::uint16_t>(cum + per_site[e]);
      if (e >= s) dims[s * n + e] = cum;
    }
  }
  return dims;
}

/// Per-window logical rank r(A) = dim C_A - dim G_A with C = <G, Xbar, Zbar>.
/// A carries the full magic iff r(A) = 2, and r(A) + r(complement) = 2.
class IntervalTable {
 public:
  explicit IntervalTable(const CodeState& cs) : n_(cs.n), r_(cs.n * cs.n, 0) {
    std::vector<PauliString> c = cs.stabilizers;
    c.push_back(cs.logical_x);
    c.push_back(cs.logical_z);
    const auto dc = interval_dimensions(c, n_);
    const auto dg = interval_dimensions(cs.stabilizers, n_);
    for (std::size_t i = 0; i < r_.size(); ++i) r_[i] = static_cast<std::uint8_t>(dc[i] - dg[i]);
  }

  std::size_t size() const { return n_; }

  /// r on the 0-based window [s, e].
  unsigned rank_difference(std::size_t s, std::size_t e) const { return r_[s * n_ + e]; }

  /// Full-class test of `w` sites starting at 0-based `s0`, wrapping around the ring.
  bool full(std::size_t s0, std::size_t w) const {
    if (w >= n_) return true;
    if (s0 + w <= n_) return r_[s0 * n_ + s0 + w - 1] == 2;
    // Wrapping window: its complement [s0 + w - n, s0 - 1] is contiguous.
    return r_[(s0 + w - n_) * n_ + s0 - 1] == 0;
  }

  bool full(const Interval& iv) const {
    if (!iv.is_valid(n_)) throw std::invalid_argument("IntervalTable: invalid interval");
    return full(iv.start - 1, iv.width(n_));
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> r_;
};

/// Minimal linear magic intervals of one state.
struct MlmiSet {
  std::vector<Interval> intervals;
  std::size_t L = 0;
  std::size_t injection_site = 0;
  bool periodic = false;

  std::vector<std::size_t> widths() const {
    std::vector<std::size_t> w;
    for (const auto& iv : intervals) w.push_back(iv.width(L));
    return w;
  }
};

/// Throws std::logic_error unless the set is non-empty, containment-free and pairwise overlapping.
inline void check_mlmi_invariants(const MlmiSet& m) {
  if (m.intervals.empty()) throw std::logic_error("MLMI set is empty");
  std::vector<QubitSet> sets;
  for (const auto& iv : m.intervals) sets.push_back(iv.qubits(m.L));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i].is_subset_of(sets[j]) || sets[j].is_subset_of(sets[i]))
        throw std::logic_error("MLMI set: one interval contains another");
      if ((sets[i] & sets[j]).none()) throw std::logic_error("MLMI set: disjoint intervals");
    }
}

/// Minimal Full-class intervals. Only non-wrapping intervals are candidates unless `wrapping`
/// is set, which under periodic boundaries also admits intervals through the (L,1) bond.
inline MlmiSet minimal_intervals(const CodeState& cs, const IntervalTable& table, bool periodic,
                                 bool wrapping = false) {
  const std::size_t L = cs.n;
  if (table.rank_difference(0, L - 1) != 2)
    throw NoMagic("minimal_intervals: full system does not carry the magic");
  // Smallest Full window per left endpoint; monotone in the width.
  std::vector<Interval> cands;
  for (std::size_t s = 0; s < L; ++s) {
    const std::size_t wmax = periodic && wrapping ? L : L - s;
    std::size_t w = 1;
    while (w < wmax && !table.full(s, w)) ++w;
    if (!table.full(s, w)) continue;
    cands.push_back(Interval::on_ring(s, w, L));
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<QubitSet> sets;
  for (const auto& iv : cands) sets.push_back(iv.qubits(L));
  MlmiSet out;
  out.L = L;
  out.injection_site = cs.injection_site;
  out.periodic = periodic;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < cands.size() && minimal; ++j)
      if (j != i && sets[j].is_subset_of(sets[i])) minimal = false;
    if (minimal) out.intervals.push_back(cands[i]);
  }
  check_mlmi_invariants(out);
  return out;
}

inline MlmiSet minimal_intervals(const CodeState& cs, bool periodic = false, bool wrapping = false) {
  return minimal_intervals(cs, IntervalTable(cs), periodic, wrapping);
}

/// Window of even width w centered on the bond between qubits L/2 and L/2+1 (1-based).
/// Open boundaries clamp and push the free end outward; periodic ones wrap.
inline Interval centered_interval(std::size_t L, std::size_t w, bool periodic) {
  if (w >= L) return {1, L, false};
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(L / 2);
  std::ptrdiff_t lo = half - static_cast<std::ptrdiff_t>(w / 2) + 1;
  std::ptrdiff_t hi = lo + static_cast<std::ptrdiff_t>(w) - 1;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(L);
  if (periodic) {
    const std::size_t s0 = static_cast<std::size_t>(((lo - 1) % n + n) % n);
    return Interval::on_ring(s0, w, L);
  }
  if (lo < 1) {
    hi += 1 - lo;
    lo = 1;
  }
  if (hi > n) {
    lo -= hi - n;
    hi = n;
  }
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), false};
}

/// Linear magic length: smallest even centered width carrying the full magic.
inline std::size_t lml(const IntervalTable& table, bool periodic) {
  const std::size_t L = table.size();
  for (std::size_t w = 2; w < L; w += 2)
    if (table.full(centered_interval(L, w, periodic))) return w;
  return L;
}

inline std::size_t lml(const CodeState& cs, bool periodic = false) { return lml(IntervalTable(cs), periodic); }

/// Full linear extent: span of the union under open boundaries, L minus the largest
/// uncovered circular gap under periodic ones.
inline std::size_t fleom(const MlmiSet& m) {
  if (m.intervals.empty()) throw std::invalid_argument("fleom: empty MLMI set");
  QubitSet cover(m.L);
  for (const auto& iv : m.intervals) cover |= iv.qubits(m.L);
  const auto idx = cover.indices();
  if (!m.periodic) return idx.back() - idx.front() + 1;
  std::size_t gap = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::size_t next = i + 1 < idx.size() ? idx[i + 1] : idx.front() + m.L;
    gap = std::max(gap, next - idx[i] - 1);
  }
  return m.L - gap;
}

/// Modal width of a histogram {width: count}; ties go to the smaller width.
inline std::size_t typical_length(const std::map<std::size_t, std::size_t>& histogram) {
  std::size_t best = 0, best_count = 0;
  bool any = false;
  for (const auto& [w, c] : histogram) {
    if (c > best_count) {
      best = w;
      best_count = c;
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("typical_length: empty histogram");
  return best;
}

}  // namespace magicspread
