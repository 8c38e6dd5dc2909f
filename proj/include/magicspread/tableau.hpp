#pragma once

#include <array>
#include <cstddef>
#include <cstdio>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clifford.hpp"
#include "gf2.hpp"
#include "pauli.hpp"
#include "rng.hpp"

namespace magicspread {

/// A gate placed on concrete sites. Unused trailing sites are ignored for 1-qubit gates.
struct GateOp {
  CliffordGate gate;
  std::array<std::size_t, 2> sites{};

  std::span<const std::size_t> site_span() const { return {sites.data(), gate.arity()}; }
};

/// Gate sequence applied left to right.
using Circuit = std::vector<GateOp>;

/// Stabilizer group given by independent, commuting, Hermitian generators.
/// Pure when there are n generators.
class StabilizerState {
 public:
  StabilizerState() = default;
  explicit StabilizerState(std::size_t n) : n_(n) {}
  StabilizerState(std::size_t n, std::vector<PauliString> gens) : n_(n), gens_(std::move(gens)) {
    for (const auto& g : gens_)
      if (g.n_qubits() != n_) throw DimensionMismatch("StabilizerState: generator width mismatch");
  }

  static StabilizerState from_strings(std::initializer_list<const char*> gens) {
    std::vector<PauliString> ps;
    for (auto s : gens) ps.push_back(PauliString::parse(s));
    const std::size_t n = ps.empty() ? 0 : ps.front().n_qubits();
    return StabilizerState(n, std::move(ps));
  }

  /// |0...0>.
  static StabilizerState zero_state(std::size_t n) {
    std::vector<PauliString> ps;
    for (std::size_t q = 0; q < n; ++q) ps.push_back(PauliString::single(n, q, 'Z'));
    return StabilizerState(n, std::move(ps));
  }

  std::size_t n_qubits() const { return n_; }
  std::size_t generator_count() const { return gens_.size(); }
  const std::vector<PauliString>& generators() const { return gens_; }
  std::vector<PauliString>& generators() { return gens_; }
  bool is_pure() const { return gens_.size() == n_; }

  /// Hermitian, pairwise commuting and independent generators.
  bool is_valid() const {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (!gens_[i].is_hermitian()) return false;
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (!commutes(gens_[i], gens_[j])) return false;
    }
    return pauli_rank(gens_) == gens_.size();
  }

  void apply_gate(const CliffordGate& gate, std::span<const std::size_t> sites) {
    gate.check_sites(sites, n_);
    for (auto& g : gens_) gate.apply(g, sites);
  }
  void apply_gate(const CliffordGate& gate, std::initializer_list<std::size_t> sites) {
    apply_gate(gate, std::span<const std::size_t>(sites.begin(), sites.size()));
  }
  void apply(const GateOp& op) { apply_gate(op.gate, op.site_span()); }
  void apply(const Circuit& c) {
    for (const auto& op : c) apply(op);
  }

  /// Conjugates every generator by a global Clifford.
  void apply_map(const CliffordMap& u) {
    for (auto& g : gens_) g = u.apply(g);
  }

  /// Von Neumann entropy of `region` in bits: |A| - dim{g in group : supp(g) in A}.
  std::size_t entropy(const QubitSet& region) const {
    if (region.size() != n_) throw DimensionMismatch("entropy: region size mismatch");
    const QubitSet comp = ~region;
    BinaryMatrix m(2 * n_);
    for (const auto& g : gens_) {
      BitVector v(2 * n_);
      for (auto q : (g.x() & comp).indices()) v.set(q);
      for (auto q : (g.z() & comp).indices()) v.set(n_ + q);
      m.push_back(std::move(v));
    }
    const std::size_t dim_a = gens_.size() - rank_gf2(m);
    return region.popcount() - dim_a;
  }

  /// Sign of p in the group if +-p is a group element; 0 if p lies outside +-group.
  int group_sign(const PauliString& p) const {
    BinaryMatrix m = BinaryMatrix::from_paulis(gens_, n_);
    auto mask = solve_in_span(BinaryMatrix::symplectic_vector(p), m);
    if (!mask) return 0;
    PauliString prod(n_);
    for (auto i : mask->indices()) prod *= gens_[i];
    // prod and p carry the same letters.
    return prod.letter_sign() == p.letter_sign() ? 1 : -1;
  }

  /// Projective measurement of Hermitian p. Randomness is drawn only from `rng`.
  int measure(const PauliString& p, Rng& rng) {
    if (!p.is_hermitian()) throw std::invalid_argument("measure: operator is not Hermitian");
    std::size_t first = gens_.size();
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (!commutes(gens_[i], p)) {
        if (first == gens_.size()) {
          first = i;
        } else {
          gens_[i] *= gens_[first];
        }
      }
    }
    if (first == gens_.size()) {
      if (const int s = group_sign(p); s != 0) return s;
    }
    const int outcome = rng.coin() ? -1 : 1;
    PauliString signed_p = outcome < 0 ? -p : p;
    if (first != gens_.size()) {
      gens_[first] = std::move(signed_p);
    } else {
      gens_.push_back(std::move(signed_p));
    }
    return outcome;
  }

  /// "n=<L> k=<count>" followed by one signed Pauli literal per line.
  std::string to_text() const {
    std::ostringstream os;
    os << "n=" << n_ << " k=" << gens_.size() << "\n";
    for (const auto& g : gens_) os << g.to_string() << "\n";
    return os.str();
  }

  static StabilizerState from_text(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    std::getline(is, header);
    std::size_t n = 0, k = 0;
    if (std::sscanf(header.c_str(), "n=%zu k=%zu", &n, &k) != 2)
      throw std::invalid_argument("StabilizerState::from_text: bad header");
    std::vector<PauliString> gens;
    std::string line;
    while (gens.size() < k && std::getline(is, line)) {
      if (line.empty()) continue;
      gens.push_back(PauliString::parse(line));
    }
    if (gens.size() != k) throw std::invalid_argument("StabilizerState::from_text: generator count mismatch");
    return StabilizerState(n, std::move(gens));
  }

  friend bool operator==(const StabilizerState& a, const StabilizerState& b) {
    return a.n_ == b.n_ && a.gens_ == b.gens_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> gens_;
};

inline StabilizerState apply_gate(StabilizerState s, const CliffordGate& gate, std::span<const std::size_t> sites) {
  s.apply_gate(gate, sites);
  return s;
}

inline std::size_t entropy(const StabilizerState& s, const QubitSet& region) { return s.entropy(region); }

inline std::pair<int, StabilizerState> measure_pauli(StabilizerState s, const PauliString& p, Rng& rng) {
  const int out = s.measure(p, rng);
  return {out, std::move(s)};
}

}  // namespace magicspread
