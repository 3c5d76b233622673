#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "tenrank/rational.hpp"

namespace tenrank {

/// Deterministic random source. All distribution mappings are written out by
/// hand so that identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * unit() - 1.0; }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  /// Random rational with numerator in [-max_num, max_num] and denominator in
  /// [1, max_den].
  Rational rational(std::int64_t max_num, std::int64_t max_den) {
    return Rational(int_in(-max_num, max_num), int_in(1, max_den));
  }

  Complex complex_unit_box() { return {symmetric(), symmetric()}; }

  /// Mixes a base seed with a purpose label and index, so independent sampling
  /// tasks never share a stream.
  static std::uint64_t derive(std::uint64_t seed, std::string_view label,
                              std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    // splitmix64 finalizer
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tenrank
