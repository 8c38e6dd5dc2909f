#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bitvector.hpp"

namespace magicspread {

/// Raised when two operands act on registers of different size.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pauli string i^phase * X^x Z^z, with the X factor to the left of the Z factor on each qubit.
///
/// Qubits are 0-based in the API. The textual form "+XIZY" lists qubit 0 first and uses
/// Y = i X Z per qubit, so the printed sign is relative to the letter product.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : x_(n), z_(n) {}
  PauliString(BitVector x, BitVector z, unsigned phase = 0) : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3u) {
    if (x_.size() != z_.size()) throw DimensionMismatch("PauliString: x/z length mismatch");
  }

  static PauliString identity(std::size_t n) { return PauliString(n); }

  /// Hermitian single-site operator; `letter` is one of I, X, Y, Z.
  static PauliString single(std::size_t n, std::size_t q, char letter) {
    PauliString p(n);
    p.set_letter(q, letter);
    return p;
  }

  /// Parses "+XIZY", "-ZZ", "+iXY", "-iY" or an unsigned "XZ". Letters may be upper or lower case.
  static PauliString parse(std::string_view s) {
    unsigned sign = 0;  // exponent of i in front of the letter product
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = 2;
      ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
      sign += 1;
      ++pos;
    }
    const std::size_t n = s.size() - pos;
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) {
      const char c = s[pos + q];
      switch (c) {
        case 'I': case 'i': case '_': break;
        case 'X': case 'x': p.x_.set(q); break;
        case 'Z': case 'z': p.z_.set(q); break;
        case 'Y': case 'y': p.x_.set(q); p.z_.set(q); break;
        default: throw std::invalid_argument(std::string("PauliString: bad letter '") + c + "'");
      }
    }
    p.phase_ = (sign + static_cast<unsigned>(p.y_count())) & 3u;
    return p;
  }

  std::size_t n_qubits() const { return x_.size(); }
  const BitVector& x() const { return x_; }
  const BitVector& z() const { return z_; }
  BitVector& x() { return x_; }
  BitVector& z() { return z_; }
  unsigned phase() const { return phase_; }
  void set_phase(unsigned ph) { phase_ = ph & 3u; }
  void add_phase(unsigned ph) { phase_ = (phase_ + ph) & 3u; }

  bool x_at(std::size_t q) const { return x_.get(q); }
  bool z_at(std::size_t q) const { return z_.get(q); }

  char letter(std::size_t q) const {
    const bool xb = x_.get(q), zb = z_.get(q);
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }

  /// Overwrites the letter at q, keeping the letter-relative sign unchanged.
  void set_letter(std::size_t q, char letter) {
    const unsigned rel = letter_sign();
    x_.set(q, letter == 'X' || letter == 'Y');
    z_.set(q, letter == 'Z' || letter == 'Y');
    phase_ = (rel + static_cast<unsigned>(y_count())) & 3u;
  }

  std::size_t y_count() const { return and_popcount(x_, z_); }

  /// Exponent of i multiplying the product of letters.
  unsigned letter_sign() const { return (phase_ + 4u - static_cast<unsigned>(y_count() & 3u)) & 3u; }
  void set_letter_sign(unsigned s) { phase_ = (s + static_cast<unsigned>(y_count())) & 3u; }

  bool is_hermitian() const { return (letter_sign() & 1u) == 0; }
  /// True for a Hermitian string with sign -1.
  bool is_negative() const { return letter_sign() == 2; }
  bool is_identity() const { return x_.none() && z_.none(); }

  QubitSet support() const { return x_ | z_; }
  std::size_t weight() const { return support().popcount(); }

  /// Support contained in `region`.
  bool supported_in(const QubitSet& region) const {
    return x_.is_subset_of(region) && z_.is_subset_of(region);
  }

  /// Same Pauli letters, ignoring the phase.
  bool same_letters(const PauliString& o) const { return x_ == o.x_ && z_ == o.z_; }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

  std::string to_string() const {
    std::string out;
    switch (letter_sign()) {
      case 0: out = "+"; break;
      case 1: out = "+i"; break;
      case 2: out = "-"; break;
      default: out = "-i"; break;
    }
    for (std::size_t q = 0; q < n_qubits(); ++q) out.push_back(letter(q));
    return out;
  }

  /// In-place right multiplication: *this = *this * o.
  PauliString& operator*=(const PauliString& o) {
    check_dim(o);
    phase_ = (phase_ + o.phase_ + 2u * static_cast<unsigned>(and_popcount(z_, o.x_) & 1u)) & 3u;
    x_ ^= o.x_;
    z_ ^= o.z_;
    return *this;
  }
  friend PauliString operator*(PauliString a, const PauliString& b) { return a *= b; }

  PauliString operator-() const {
    PauliString r = *this;
    r.add_phase(2);
    return r;
  }

  /// Restriction to `region` with the letter-relative sign kept.
  PauliString restricted(const QubitSet& region) const {
    PauliString r(x_ & region, z_ & region);
    r.set_letter_sign(letter_sign());
    return r;
  }

  void check_dim(const PauliString& o) const {
    if (o.n_qubits() != n_qubits()) throw DimensionMismatch("PauliString: qubit count mismatch");
  }

 private:
  BitVector x_;
  BitVector z_;
  unsigned phase_ = 0;
};

/// Symplectic form x_p.z_q + z_p.x_q mod 2.
inline unsigned symplectic_form(const PauliString& p, const PauliString& q) {
  p.check_dim(q);
  return static_cast<unsigned>((and_popcount(p.x(), q.z()) + and_popcount(p.z(), q.x())) & 1u);
}

inline bool commutes(const PauliString& p, const PauliString& q) { return symplectic_form(p, q) == 0; }

inline PauliString multiply(const PauliString& p, const PauliString& q) { return p * q; }

}  // namespace magicspread
