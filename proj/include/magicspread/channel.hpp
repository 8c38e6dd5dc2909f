#pragma once

#include <cfenv>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "clifford.hpp"
#include "codestate.hpp"
#include "rng.hpp"
#include "tableau.hpp"

namespace magicspread {

struct ErasureResult {
  QubitSet erased;
  int coherent_info = 0;
  bool preserved = false;
};

/// Widens an L-qubit set to the L+1 qubits of the extended state (R excluded).
inline QubitSet widen_set(const QubitSet& s) {
  QubitSet w(s.size() + 1);
  for (auto q : s.indices()) w.set(q);
  return w;
}

inline ErasureResult coherent_info_of(const StabilizerState& ext, const QubitSet& b_set) {
  const std::size_t L = ext.n_qubits() - 1;
  if (b_set.size() != L) throw DimensionMismatch("coherent info: erased set must range over the L code qubits");
  QubitSet a = ~widen_set(b_set);
  a.set(L, false);
  QubitSet ar = a;
  ar.set(L);
  ErasureResult r;
  r.erased = b_set;
  r.coherent_info = static_cast<int>(ext.entropy(a)) - static_cast<int>(ext.entropy(ar));
  r.preserved = r.coherent_info == 1;
  return r;
}

/// I_c = S(A) - S(AR) after tracing out B from the pure extended state.
inline ErasureResult erase_and_coherent_info(const StabilizerState& ext, const QubitSet& b_set) {
  return coherent_info_of(ext, b_set);
}

/// Variant channel: measure Z on every qubit of B instead of erasing it.
inline ErasureResult measure_and_coherent_info(StabilizerState ext, const QubitSet& b_set, Rng& rng) {
  const std::size_t n = ext.n_qubits();
  for (auto q : b_set.indices()) ext.measure(PauliString::single(n, q, 'Z'), rng);
  return coherent_info_of(ext, b_set);
}

/// round(f L) with ties to even.
inline std::size_t erasure_size(double f, std::size_t L) {
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("erasure fraction outside [0, 1]");
  const int old = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double k = std::nearbyint(f * static_cast<double>(L));
  std::fesetround(old);
  return static_cast<std::size_t>(k);
}

/// Uniform k-subset of {0..L-1} by a partial Fisher-Yates shuffle.
inline QubitSet random_subset(std::size_t L, std::size_t k, Rng& rng) {
  std::vector<std::size_t> perm(L);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  QubitSet s(L);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(L - i));
    std::swap(perm[i], perm[j]);
    s.set(perm[i]);
  }
  return s;
}

enum class ChannelKind { Erasure, Measurement };

struct CapacityEstimate {
  double f = 0;
  std::size_t b_size = 0;
  std::size_t n_samples = 0;
  std::size_t preserved = 0;
  double c_tilde = 0;
  double stderr_ = 0;  // binomial standard error of c_tilde
};

/// Fraction of random erasures of round(f L) qubits after which the logical qubit survives.
inline CapacityEstimate capacity_proxy(const CodeState& cs, double f, std::size_t n_samples, Rng& rng,
                                       ChannelKind kind = ChannelKind::Erasure) {
  if (n_samples < 1) throw std::invalid_argument("capacity_proxy: need at least one sample");
  const StabilizerState ext = extend_with_reference(cs);
  CapacityEstimate e;
  e.f = f;
  e.b_size = erasure_size(f, cs.n);
  e.n_samples = n_samples;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const QubitSet b = random_subset(cs.n, e.b_size, rng);
    const ErasureResult r =
        kind == ChannelKind::Erasure ? erase_and_coherent_info(ext, b) : measure_and_coherent_info(ext, b, rng);
    e.preserved += r.preserved;
  }
  const double n = static_cast<double>(n_samples);
  e.c_tilde = static_cast<double>(e.preserved) / n;
  e.stderr_ = std::sqrt(e.c_tilde * (1.0 - e.c_tilde) / n);
  return e;
}

/// T on |+>|0...0>, then a uniformly random global Clifford.
inline CodeState global_random_code(std::size_t L, Rng& rng) {
  if (L < 2) throw std::invalid_argument("global_random_code: L must be at least 2");
  std::vector<PauliString> gens{PauliString::single(L, 0, 'X')};
  for (std::size_t q = 1; q < L; ++q) gens.push_back(PauliString::single(L, q, 'Z'));
  CodeState cs = inject_t(StabilizerState(L, std::move(gens)), 0);
  cs.apply_map(sample_clifford(L, rng));
  return cs;
}

}  // namespace magicspread
