#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "neumaps/errors.hpp"

namespace neumaps {

/// SplitMix64 generator (Steele, Lea & Flood; public-domain reference
/// constants). Chosen over std::mt19937 because the output stream is fixed by
/// these constants alone, so seeded selections are reproducible bit-for-bit
/// across platforms and reimplementations in other languages.
///
/// Derived draws are pinned too:
///  - below(b): rejection sampling on next() % b (reject while
///    next() < (2^64 - b) % b), which is unbiased;
///  - unit(): (next() >> 11) * 2^-53, uniform in [0, 1);
///  - normal(): Box-Muller on two unit() draws, cos branch first.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Unbiased uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    require(bound > 0, errc::index_out_of_range, "below() needs a positive bound");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; caches the sin branch.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = unit();
    while (u1 <= 0.0) u1 = unit();
    const double u2 = unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Uniform sample of m distinct values from {0, ..., n-1}, returned sorted.
/// Partial Fisher-Yates over an index pool, swap target drawn with below();
/// the same (n, m, seed) triple always yields the same subset.
inline std::vector<long> sample_without_replacement(long n, long m, std::uint64_t seed) {
  require(n >= 0 && m >= 0 && m <= n, errc::index_out_of_range, "invalid sample size");
  std::vector<long> pool(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  SplitMix64 rng(seed);
  for (long i = 0; i < m; ++i) {
    const long j = i + static_cast<long>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  std::vector<long> out(pool.begin(), pool.begin() + m);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace neumaps
