#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace magicspread {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Hashes a key tuple, e.g. (master seed, realization, layer), into a stream seed.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto k : key) h = splitmix64(h ^ splitmix64(k));
  return h;
}

/// Deterministic random stream. The helpers avoid std distributions, whose output differs
/// between standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}
  Rng(std::initializer_list<std::uint64_t> key) : eng_(derive_seed(key)) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n + 1) % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v > limit);
    return v % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }
  bool coin() { return (eng_() >> 63) != 0; }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace magicspread
