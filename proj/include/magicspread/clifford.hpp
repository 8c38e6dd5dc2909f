#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pauli.hpp"
#include "rng.hpp"

namespace magicspread {

/// Clifford unitary on n qubits given by the conjugated images of every X_q and Z_q.
class CliffordMap {
 public:
  CliffordMap() = default;
  explicit CliffordMap(std::size_t n) : x_img_(), z_img_() {
    for (std::size_t q = 0; q < n; ++q) {
      x_img_.push_back(PauliString::single(n, q, 'X'));
      z_img_.push_back(PauliString::single(n, q, 'Z'));
    }
  }
  CliffordMap(std::vector<PauliString> x_images, std::vector<PauliString> z_images)
      : x_img_(std::move(x_images)), z_img_(std::move(z_images)) {
    if (x_img_.size() != z_img_.size()) throw DimensionMismatch("CliffordMap: image count mismatch");
    for (const auto& p : x_img_)
      if (p.n_qubits() != x_img_.size()) throw DimensionMismatch("CliffordMap: image width mismatch");
    for (const auto& p : z_img_)
      if (p.n_qubits() != x_img_.size()) throw DimensionMismatch("CliffordMap: image width mismatch");
  }

  std::size_t n_qubits() const { return x_img_.size(); }
  const PauliString& x_image(std::size_t q) const { return x_img_[q]; }
  const PauliString& z_image(std::size_t q) const { return z_img_[q]; }

  /// U p U^dagger.
  PauliString apply(const PauliString& p) const {
    const std::size_t n = n_qubits();
    if (p.n_qubits() != n) throw DimensionMismatch("CliffordMap: operand width mismatch");
    PauliString r(n);
    r.set_phase(p.phase());
    for (auto q : p.x().indices()) r *= x_img_[q];
    for (auto q : p.z().indices()) r *= z_img_[q];
    return r;
  }

  /// Circuit that applies *this first and `next` afterwards.
  CliffordMap then(const CliffordMap& next) const {
    std::vector<PauliString> xs, zs;
    for (std::size_t q = 0; q < n_qubits(); ++q) {
      xs.push_back(next.apply(x_img_[q]));
      zs.push_back(next.apply(z_img_[q]));
    }
    return {std::move(xs), std::move(zs)};
  }

  /// Images are Hermitian and obey the canonical commutation relations.
  bool is_valid() const {
    const std::size_t n = n_qubits();
    for (std::size_t i = 0; i < n; ++i) {
      if (!x_img_[i].is_hermitian() || !z_img_[i].is_hermitian()) return false;
      for (std::size_t j = 0; j < n; ++j) {
        if (symplectic_form(x_img_[i], x_img_[j]) != 0) return false;
        if (symplectic_form(z_img_[i], z_img_[j]) != 0) return false;
        if (symplectic_form(x_img_[i], z_img_[j]) != (i == j ? 1u : 0u)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const CliffordMap& a, const CliffordMap& b) {
    return a.x_img_ == b.x_img_ && a.z_img_ == b.z_img_;
  }

 private:
  std::vector<PauliString> x_img_;
  std::vector<PauliString> z_img_;
};

/// One- or two-qubit Clifford gate stored as a lookup table over local Pauli patterns.
///
/// Entry index is xbits | (zbits << arity); each entry holds the image bits and the phase
/// exponent picked up by the phase-free local string X^x Z^z.
class CliffordGate {
 public:
  struct Entry {
    std::uint8_t x = 0;
    std::uint8_t z = 0;
    std::uint8_t phase = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  CliffordGate() : CliffordGate(CliffordMap(1)) {}

  explicit CliffordGate(const CliffordMap& m) {
    const std::size_t k = m.n_qubits();
    if (k < 1 || k > 2) throw std::invalid_argument("CliffordGate: arity must be 1 or 2");
    if (!m.is_valid()) throw std::invalid_argument("CliffordGate: images violate the symplectic condition");
    arity_ = k;
    for (unsigned idx = 0; idx < (1u << (2 * k)); ++idx) {
      PauliString p(k);
      for (std::size_t q = 0; q < k; ++q) {
        p.x().set(q, (idx >> q) & 1u);
        p.z().set(q, (idx >> (k + q)) & 1u);
      }
      const PauliString img = m.apply(p);
      Entry e;
      for (std::size_t q = 0; q < k; ++q) {
        e.x |= static_cast<std::uint8_t>(img.x_at(q) << q);
        e.z |= static_cast<std::uint8_t>(img.z_at(q) << q);
      }
      e.phase = static_cast<std::uint8_t>(img.phase());
      table_[idx] = e;
    }
  }

  static CliffordGate from_images(std::initializer_list<const char*> x_images,
                                  std::initializer_list<const char*> z_images) {
    std::vector<PauliString> xs, zs;
    for (auto s : x_images) xs.push_back(PauliString::parse(s));
    for (auto s : z_images) zs.push_back(PauliString::parse(s));
    return CliffordGate(CliffordMap(std::move(xs), std::move(zs)));
  }

  std::size_t arity() const { return arity_; }
  const Entry& entry(unsigned idx) const { return table_[idx]; }

  /// Image of the local string at table index `idx`, as an arity-qubit Pauli.
  PauliString image(unsigned idx) const {
    PauliString r(arity_);
    const Entry& e = table_[idx];
    for (std::size_t q = 0; q < arity_; ++q) {
      r.x().set(q, (e.x >> q) & 1u);
      r.z().set(q, (e.z >> q) & 1u);
    }
    r.set_phase(e.phase);
    return r;
  }

  CliffordMap map() const {
    std::vector<PauliString> xs, zs;
    for (std::size_t q = 0; q < arity_; ++q) {
      xs.push_back(image(1u << q));
      zs.push_back(image(1u << (arity_ + q)));
    }
    return {std::move(xs), std::move(zs)};
  }

  /// Packed images of the generators; identifies the gate uniquely.
  std::uint32_t key() const {
    std::uint32_t k = 0;
    for (std::size_t g = 0; g < 2 * arity_; ++g) {
      const Entry& e = table_[1u << g];
      k = (k << 6) | (static_cast<std::uint32_t>(e.x) << 4) | (static_cast<std::uint32_t>(e.z) << 2) | e.phase;
    }
    return k;
  }

  /// Conjugates p in place by the gate acting on `sites` (0-based, distinct, in range).
  void apply(PauliString& p, std::span<const std::size_t> sites) const {
    unsigned idx = 0;
    for (std::size_t q = 0; q < arity_; ++q) {
      idx |= static_cast<unsigned>(p.x_at(sites[q])) << q;
      idx |= static_cast<unsigned>(p.z_at(sites[q])) << (arity_ + q);
    }
    if (idx == 0) return;
    const Entry& e = table_[idx];
    for (std::size_t q = 0; q < arity_; ++q) {
      p.x().set(sites[q], (e.x >> q) & 1u);
      p.z().set(sites[q], (e.z >> q) & 1u);
    }
    p.add_phase(e.phase);
  }

  void check_sites(std::span<const std::size_t> sites, std::size_t n) const {
    if (sites.size() != arity_) throw std::invalid_argument("CliffordGate: site count does not match arity");
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (sites[i] >= n) throw std::invalid_argument("CliffordGate: site out of range");
      for (std::size_t j = 0; j < i; ++j)
        if (sites[i] == sites[j]) throw std::invalid_argument("CliffordGate: repeated site");
    }
  }

  /// Gate that applies *this first and `next` afterwards on the same sites.
  CliffordGate then(const CliffordGate& next) const {
    if (next.arity_ != arity_) throw DimensionMismatch("CliffordGate::then: arity mismatch");
    CliffordGate r = *this;
    for (unsigned idx = 0; idx < (1u << (2 * arity_)); ++idx) {
      const Entry& e = table_[idx];
      const Entry& f = next.table_[static_cast<unsigned>(e.x) | (static_cast<unsigned>(e.z) << arity_)];
      r.table_[idx] = Entry{f.x, f.z, static_cast<std::uint8_t>((e.phase + f.phase) & 3u)};
    }
    return r;
  }

  /// Two-qubit gate a (x) b.
  static CliffordGate tensor(const CliffordGate& a, const CliffordGate& b) {
    if (a.arity() != 1 || b.arity() != 1) throw std::invalid_argument("CliffordGate::tensor: needs 1-qubit gates");
    auto widen = [](const PauliString& p, std::size_t q) {
      PauliString r(2);
      r.x().set(q, p.x_at(0));
      r.z().set(q, p.z_at(0));
      r.set_phase(p.phase());
      return r;
    };
    return CliffordGate(CliffordMap({widen(a.image(1), 0), widen(b.image(1), 1)},
                                    {widen(a.image(2), 0), widen(b.image(2), 1)}));
  }

  friend bool operator==(const CliffordGate& a, const CliffordGate& b) {
    return a.arity_ == b.arity_ && a.table_ == b.table_;
  }

 private:
  std::size_t arity_ = 1;
  std::array<Entry, 16> table_{};
};

namespace gates {

inline CliffordGate identity(std::size_t arity = 1) { return CliffordGate(CliffordMap(arity)); }
inline CliffordGate H() { return CliffordGate::from_images({"+Z"}, {"+X"}); }
inline CliffordGate S() { return CliffordGate::from_images({"+Y"}, {"+Z"}); }
inline CliffordGate S_dag() { return CliffordGate::from_images({"-Y"}, {"+Z"}); }
inline CliffordGate X() { return CliffordGate::from_images({"+X"}, {"-Z"}); }
inline CliffordGate Y() { return CliffordGate::from_images({"-X"}, {"-Z"}); }
inline CliffordGate Z() { return CliffordGate::from_images({"-X"}, {"+Z"}); }
/// Control on the first site, target on the second.
inline CliffordGate CNOT() { return CliffordGate::from_images({"+XX", "+IX"}, {"+ZI", "+ZZ"}); }
inline CliffordGate CZ() { return CliffordGate::from_images({"+XZ", "+ZX"}, {"+ZI", "+IZ"}); }
inline CliffordGate SWAP() { return CliffordGate::from_images({"+IX", "+XI"}, {"+IZ", "+ZI"}); }

/// CZ (H x H) CZ.
inline CliffordGate SDKI_f() {
  const CliffordGate hh = CliffordGate::tensor(H(), H());
  return CZ().then(hh).then(CZ());
}

}  // namespace gates

/// Symplectic Gram-Schmidt over the full symplectic form.
///
/// Returns pairs (e, f) with w(e, f) = 1 spanning a symplectic subspace, plus the leftover
/// isotropic vectors. Phases are ignored.
inline std::pair<std::vector<std::pair<PauliString, PauliString>>, std::vector<PauliString>>
symplectic_gram_schmidt(std::vector<PauliString> vs) {
  std::vector<std::pair<PauliString, PauliString>> pairs;
  std::vector<PauliString> iso;
  while (!vs.empty()) {
    PauliString a = vs.front();
    vs.erase(vs.begin());
    if (a.is_identity()) continue;
    std::size_t j = vs.size();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (symplectic_form(a, vs[i])) {
        j = i;
        break;
      }
    }
    if (j == vs.size()) {
      iso.push_back(a);
      continue;
    }
    PauliString b = vs[j];
    vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(j));
    for (auto& r : vs) {
      const unsigned wa = symplectic_form(r, a), wb = symplectic_form(r, b);
      if (wb) r *= a;
      if (wa) r *= b;
    }
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return {std::move(pairs), std::move(iso)};
}

/// Uniformly random Clifford on n qubits (modulo global phase).
///
/// Builds a symplectic basis one pair at a time: X_k maps to a uniform nonzero vector u of the
/// remaining symplectic subspace, Z_k to a uniform v there with w(u, v) = 1, and the subspace
/// shrinks to the complement of span{u, v}. Each image gets an independent uniform sign.
inline CliffordMap sample_clifford(std::size_t n, Rng& rng) {
  std::vector<std::pair<PauliString, PauliString>> basis;
  for (std::size_t q = 0; q < n; ++q)
    basis.emplace_back(PauliString::single(n, q, 'X'), PauliString::single(n, q, 'Z'));

  auto random_member = [&](bool allow_zero) {
    PauliString v(n);
    for (;;) {
      v = PauliString(n);
      bool any = false;
      for (const auto& [e, f] : basis) {
        if (rng.coin()) {
          v *= e;
          any = true;
        }
        if (rng.coin()) {
          v *= f;
          any = true;
        }
      }
      if (any || allow_zero) return v;
    }
  };
  auto hermitian_random_sign = [&](PauliString p) {
    p.set_letter_sign(rng.coin() ? 2u : 0u);
    return p;
  };

  std::vector<PauliString> xs, zs;
  for (std::size_t k = 0; k < n; ++k) {
    PauliString u = random_member(false);
    PauliString v(n);
    do {
      v = random_member(true);
    } while (symplectic_form(u, v) == 0);
    std::vector<PauliString> rest;
    for (const auto& [e, f] : basis) {
      for (const PauliString* w : {&e, &f}) {
        PauliString r = *w;
        const unsigned wu = symplectic_form(r, u), wv = symplectic_form(r, v);
        if (wv) r *= u;
        if (wu) r *= v;
        rest.push_back(std::move(r));
      }
    }
    basis = symplectic_gram_schmidt(std::move(rest)).first;
    xs.push_back(hermitian_random_sign(u));
    zs.push_back(hermitian_random_sign(v));
  }
  return {std::move(xs), std::move(zs)};
}

/// All 24 single-qubit or 11520 two-qubit Cliffords modulo phase, sorted by key().
///
/// Built by closing the generating set {H, S, CNOT, Pauli X, Pauli Z} under composition.
inline const std::vector<CliffordGate>& clifford_group(std::size_t arity) {
  auto build = [](std::size_t k) {
    std::vector<CliffordGate> gens;
    if (k == 1) {
      gens = {gates::H(), gates::S(), gates::X(), gates::Z()};
    } else {
      const auto id = gates::identity();
      gens = {CliffordGate::tensor(gates::H(), id), CliffordGate::tensor(id, gates::H()),
              CliffordGate::tensor(gates::S(), id), CliffordGate::tensor(id, gates::S()),
              CliffordGate::tensor(gates::X(), id), CliffordGate::tensor(id, gates::X()),
              CliffordGate::tensor(gates::Z(), id), CliffordGate::tensor(id, gates::Z()),
              gates::CNOT()};
    }
    std::vector<CliffordGate> found{gates::identity(k)};
    std::unordered_set<std::uint32_t> seen{found.front().key()};
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (const auto& g : gens) {
        CliffordGate c = found[i].then(g);
        if (seen.insert(c.key()).second) found.push_back(c);
      }
    }
    std::sort(found.begin(), found.end(),
              [](const CliffordGate& a, const CliffordGate& b) { return a.key() < b.key(); });
    return found;
  };
  if (arity == 1) {
    static const std::vector<CliffordGate> one = build(1);
    return one;
  }
  if (arity == 2) {
    static const std::vector<CliffordGate> two = build(2);
    return two;
  }
  throw std::invalid_argument("clifford_group: arity must be 1 or 2");
}

/// Uniform draw from the tabulated group: one uniform_below() call per gate.
inline CliffordGate sample_clifford_1q(Rng& rng) {
  const auto& g = clifford_group(1);
  return g[rng.uniform_below(g.size())];
}
inline CliffordGate sample_clifford_2q(Rng& rng) {
  const auto& g = clifford_group(2);
  return g[rng.uniform_below(g.size())];
}

}  // namespace magicspread
