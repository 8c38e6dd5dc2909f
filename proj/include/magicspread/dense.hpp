#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "clifford.hpp"
#include "codestate.hpp"
#include "pauli.hpp"
#include "tableau.hpp"

/// Brute-force statevector oracle for small systems. Qubit q is bit q of the basis index.
namespace magicspread::dense {

using cplx = std::complex<double>;
using Statevector = std::vector<cplx>;
using Matrix = std::vector<std::vector<cplx>>;

class OracleSizeExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxStateQubits = 16;
inline constexpr std::size_t kMaxSreQubits = 12;

inline void check_size(std::size_t n, std::size_t cap) {
  if (n > cap) throw OracleSizeExceeded("dense oracle: " + std::to_string(n) + " qubits exceed the cap of " +
                                        std::to_string(cap));
}

inline std::uint64_t low_mask(const BitVector& v) {
  return v.size() == 0 ? 0 : v.words()[0];
}

inline cplx i_pow(unsigned k) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[k & 3u];
}

/// P |psi>.
inline Statevector apply_pauli(const PauliString& p, const Statevector& psi) {
  const std::uint64_t x = low_mask(p.x()), z = low_mask(p.z());
  const cplx ph = i_pow(p.phase());
  Statevector out(psi.size());
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    const double s = (std::popcount(z & b) & 1) ? -1.0 : 1.0;
    out[b ^ x] = ph * s * psi[b];
  }
  return out;
}

inline cplx inner(const Statevector& a, const Statevector& b) {
  cplx s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(const Statevector& a) { return std::sqrt(std::real(inner(a, a))); }

inline cplx expectation(const Statevector& psi, const PauliString& p) { return inner(psi, apply_pauli(p, psi)); }

/// Applies op to basis states |0>, |1>, ... and returns the first image of maximal-bound norm,
/// normalized. op is a rank-one multiple of a projector scaled so that some image has norm
/// at least `floor`.
template <typename Op>
Statevector project_from_basis(std::size_t n, Op&& op, double floor) {
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t b = 0; b < dim; ++b) {
    Statevector e(dim);
    e[b] = 1;
    Statevector v = op(e);
    const double nv = norm(v);
    if (nv >= floor * (1 - 1e-9)) {
      for (auto& c : v) c /= nv;
      return v;
    }
  }
  throw std::logic_error("dense: projection vanished on every basis state");
}

/// Multiplies v by (1 + g) for every g.
inline Statevector apply_projectors(const std::vector<PauliString>& gens, Statevector v) {
  for (const auto& g : gens) {
    Statevector gv = apply_pauli(g, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += gv[i];
  }
  return v;
}

/// Statevector of a pure stabilizer state, up to global phase.
inline Statevector from_stabilizers(const StabilizerState& s) {
  if (!s.is_pure()) throw std::invalid_argument("dense: state is not pure");
  const std::size_t n = s.n_qubits();
  check_size(n, kMaxStateQubits);
  // prod (1 + g) = 2^n |psi><psi|; some basis state has |<psi|b>|^2 >= 2^-n.
  return project_from_basis(
      n, [&](const Statevector& e) { return apply_projectors(s.generators(), e); },
      std::ldexp(1.0, static_cast<int>(n)) * std::ldexp(1.0, -static_cast<int>(n) / 2) *
          (n % 2 ? std::sqrt(0.5) : 1.0));
}

/// Statevector of the doped state rho = 2^-L (1 + (Zbar - Ybar)/sqrt2) prod (1 + g).
inline Statevector from_code_state(const CodeState& cs) {
  const std::size_t n = cs.n;
  check_size(n, kMaxStateQubits);
  const PauliString y = cs.logical_y();
  auto op = [&](const Statevector& e) {
    Statevector v = apply_projectors(cs.stabilizers, e);
    const Statevector zv = apply_pauli(cs.logical_z, v);
    const Statevector yv = apply_pauli(y, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += (zv[i] - yv[i]) / std::numbers::sqrt2;
    return v;
  };
  return project_from_basis(n, op, std::ldexp(1.0, static_cast<int>(n)) * std::pow(2.0, -0.5 * static_cast<double>(n)));
}

/// T = diag(1, e^{i pi/4}) on qubit q.
inline void apply_t(Statevector& psi, std::size_t q) {
  const cplx w = std::polar(1.0, std::numbers::pi / 4);
  for (std::size_t b = 0; b < psi.size(); ++b)
    if ((b >> q) & 1u) psi[b] *= w;
}

/// Unitary of a Clifford gate, up to global phase, reconstructed from its image table.
inline Matrix gate_unitary(const CliffordGate& g) {
  const std::size_t k = g.arity();
  const std::size_t dim = std::size_t{1} << k;
  std::vector<PauliString> z_imgs, x_imgs;
  for (std::size_t q = 0; q < k; ++q) {
    x_imgs.push_back(g.image(1u << q));
    z_imgs.push_back(g.image(1u << (k + q)));
  }
  const Statevector u0 = project_from_basis(
      k, [&](const Statevector& e) { return apply_projectors(z_imgs, e); },
      std::ldexp(1.0, static_cast<int>(k)) * std::pow(2.0, -0.5 * static_cast<double>(k)));
  Matrix u(dim, std::vector<cplx>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    Statevector col = u0;
    for (std::size_t q = 0; q < k; ++q)
      if ((b >> q) & 1u) col = apply_pauli(x_imgs[q], col);
    for (std::size_t r = 0; r < dim; ++r) u[r][b] = col[r];
  }
  return u;
}

/// Applies a k-qubit matrix to `sites` (local bit j is sites[j]).
inline void apply_matrix(Statevector& psi, const Matrix& u, std::span<const std::size_t> sites) {
  const std::size_t k = sites.size();
  const std::size_t dim = std::size_t{1} << k;
  std::uint64_t mask = 0;
  for (auto s : sites) mask |= std::uint64_t{1} << s;
  std::vector<cplx> in(dim), out(dim);
  std::vector<std::uint64_t> idx(dim);
  for (std::uint64_t base = 0; base < psi.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < dim; ++l) {
      std::uint64_t i = base;
      for (std::size_t j = 0; j < k; ++j)
        if ((l >> j) & 1u) i |= std::uint64_t{1} << sites[j];
      idx[l] = i;
      in[l] = psi[i];
    }
    for (std::size_t r = 0; r < dim; ++r) {
      cplx s = 0;
      for (std::size_t c = 0; c < dim; ++c) s += u[r][c] * in[c];
      out[r] = s;
    }
    for (std::size_t l = 0; l < dim; ++l) psi[idx[l]] = out[l];
  }
}

inline void apply_gate(Statevector& psi, const GateOp& op) { apply_matrix(psi, gate_unitary(op.gate), op.site_span()); }

inline void apply_circuit(Statevector& psi, const Circuit& c) {
  for (const auto& op : c) apply_gate(psi, op);
}

/// rho_A with local bit j standing for the j-th smallest qubit of `region`.
inline Matrix reduced_density_matrix(const Statevector& psi, const QubitSet& region) {
  const auto a = region.indices();
  const auto bq = (~region).indices();
  const std::size_t da = std::size_t{1} << a.size();
  const std::size_t db = std::size_t{1} << bq.size();
  auto spread = [](std::size_t bits, const std::vector<std::size_t>& qs) {
    std::uint64_t i = 0;
    for (std::size_t j = 0; j < qs.size(); ++j)
      if ((bits >> j) & 1u) i |= std::uint64_t{1} << qs[j];
    return i;
  };
  std::vector<std::uint64_t> ia(da), ib(db);
  for (std::size_t j = 0; j < da; ++j) ia[j] = spread(j, a);
  for (std::size_t j = 0; j < db; ++j) ib[j] = spread(j, bq);
  Matrix rho(da, std::vector<cplx>(da));
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t c = 0; c < da; ++c) {
      cplx s = 0;
      for (std::size_t e = 0; e < db; ++e) s += psi[ia[r] | ib[e]] * std::conj(psi[ia[c] | ib[e]]);
      rho[r][c] = s;
    }
  return rho;
}

/// |Tr(rho P)| for every Pauli P on the region, indexed by x | (z << |A|).
inline std::vector<double> pauli_trace_magnitudes(const Matrix& rho) {
  const std::size_t m = rho.size();
  std::size_t k = 0;
  while ((std::size_t{1} << k) < m) ++k;
  std::vector<double> out(m * m);
  std::vector<cplx> f(m);
  for (std::size_t x = 0; x < m; ++x) {
    // Tr(rho X^x Z^z) = sum_b (-1)^{z.b} rho[b][b^x]: a Walsh-Hadamard transform over b.
    for (std::size_t b = 0; b < m; ++b) f[b] = rho[b][b ^ x];
    for (std::size_t len = 1; len < m; len <<= 1)
      for (std::size_t i = 0; i < m; i += 2 * len)
        for (std::size_t j = i; j < i + len; ++j) {
          const cplx u = f[j], v = f[j + len];
          f[j] = u + v;
          f[j + len] = u - v;
        }
    for (std::size_t z = 0; z < m; ++z) out[x | (z << k)] = std::abs(f[z]);
  }
  return out;
}

/// Normalized Pauli spectrum xi_P = Tr(rho_A P)^2 / 2^|A|, sorted in decreasing order.
inline std::vector<double> pauli_spectrum(const Statevector& psi, const QubitSet& region) {
  const Matrix rho = reduced_density_matrix(psi, region);
  auto mags = pauli_trace_magnitudes(rho);
  const double inv = 1.0 / static_cast<double>(rho.size());
  for (auto& v : mags) v = v * v * inv;
  std::sort(mags.begin(), mags.end(), std::greater<>());
  return mags;
}

/// -log2(sum Tr(rho_A P)^4 / sum Tr(rho_A P)^2) over all Paulis P on the region.
inline double sre2(const Statevector& psi, const QubitSet& region) {
  check_size(region.size(), kMaxSreQubits);
  if (region.none()) return 0.0;
  const auto mags = pauli_trace_magnitudes(reduced_density_matrix(psi, region));
  double s2 = 0, s4 = 0;
  for (double v : mags) {
    const double v2 = v * v;
    s2 += v2;
    s4 += v2 * v2;
  }
  return -std::log2(s4 / s2);
}

/// Renyi-2 entropy in bits.
inline double renyi2(const Statevector& psi, const QubitSet& region) {
  const Matrix rho = reduced_density_matrix(psi, region);
  double p = 0;
  for (const auto& row : rho)
    for (const auto& v : row) p += std::norm(v);
  return -std::log2(p);
}

/// <T|rho_q|T> for |T> = (|0> + e^{i pi/4}|1>)/sqrt2 on qubit q.
inline double t_state_fidelity(const Statevector& psi, std::size_t q) {
  const std::size_t n = static_cast<std::size_t>(std::countr_zero(psi.size()));
  const Matrix rho = reduced_density_matrix(psi, qubit_set(n, {q}));
  const cplx t0 = 1.0 / std::numbers::sqrt2;
  const cplx t1 = std::polar(1.0 / std::numbers::sqrt2, std::numbers::pi / 4);
  const cplx t[2] = {t0, t1};
  cplx f = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) f += std::conj(t[r]) * rho[r][c] * t[c];
  return std::real(f);
}

}  // namespace magicspread::dense
