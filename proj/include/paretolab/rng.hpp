#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace paretolab {

/// SplitMix64 finalizer. Used for seeding and for labeled stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// n-th output of the SplitMix64 sequence started at `key`. Counter-based:
/// any element can be produced without generating the ones before it.
constexpr std::uint64_t splitmix_at(std::uint64_t key, std::uint64_t n) noexcept {
  return mix64(key + (n + 1) * kGoldenGamma);
}

/// Derive an independent stream key from a root seed and a path of labels,
/// e.g. derive_stream(seed, {kTables, i, j}).
std::uint64_t derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

inline double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// xoshiro256** (Blackman & Vigna), seeded through SplitMix64. Satisfies
/// UniformRandomBitGenerator so it can drive <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return to_unit((*this)()); }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Standard normal via Box-Muller; no cached second variate.
  double normal() noexcept;

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace paretolab
