#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace hysst {

/// Seeded random source used by every stochastic operation in the library.
///
/// All draws are derived from raw mt19937_64 output instead of the standard
/// <random> distributions, whose mapping from engine output to values is
/// implementation-defined. This keeps runs reproducible bit for bit across
/// toolchains for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform on the half-open interval (0, hi].
  double uniform_pos(double hi) { return hi * (1.0 - uniform01()); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer on [0, n), n > 0.
  std::uint64_t integer(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hysst
