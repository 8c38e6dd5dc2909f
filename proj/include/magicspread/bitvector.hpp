#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace magicspread {

/// Fixed-length bit vector packed into 64-bit words. Bits past size() are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_(word_count(n), 0) {}

  static constexpr std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

  static BitVector from_indices(std::size_t n, std::initializer_list<std::size_t> idx) {
    BitVector v(n);
    for (auto i : idx) v.set(i);
    return v;
  }
  template <typename Range>
  static BitVector from_range(std::size_t n, const Range& idx) {
    BitVector v(n);
    for (auto i : idx) v.set(static_cast<std::size_t>(i));
    return v;
  }

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit, or size() if none.
  std::size_t first_set() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return n_;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  BitVector& operator^=(const BitVector& o) {
    check(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }
  BitVector& operator&=(const BitVector& o) {
    check(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  BitVector& operator|=(const BitVector& o) {
    check(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

  /// Complement within the first size() bits.
  BitVector operator~() const {
    BitVector r(n_);
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = ~words_[k];
    r.trim();
    return r;
  }

  /// Number of positions where both vectors are set.
  friend std::size_t and_popcount(const BitVector& a, const BitVector& b) {
    a.check(b);
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(a.words_[k] & b.words_[k]));
    return c;
  }

  bool is_subset_of(const BitVector& o) const {
    check(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  void check(const BitVector& o) const {
    if (o.n_ != n_) throw std::invalid_argument("BitVector: length mismatch");
  }
  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A set of qubit indices over an n-qubit register, stored as a bit mask.
using QubitSet = BitVector;

inline QubitSet qubit_set(std::size_t n, std::initializer_list<std::size_t> idx) {
  return BitVector::from_indices(n, idx);
}

inline QubitSet full_set(std::size_t n) { return ~QubitSet(n); }

}  // namespace magicspread
