#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ensemble_forge {

/// Seeded 64-bit Mersenne Twister with fixed variate transforms.
///
/// std::mt19937_64's output sequence is fixed by the standard, but the std
/// distributions are not, so the transforms are spelled out here to keep
/// seeded runs reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

  /// Uniform integer in [0, n), unbiased by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller; one variate per call, no caching.
  double normal() {
    const double u1 = uniform_open_closed();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ensemble_forge
