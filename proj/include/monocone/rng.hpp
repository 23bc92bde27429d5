#pragma once

// Deterministic splittable random streams. Each (seed, stream) pair yields an
// independent sequence, so sampled states are reproducible regardless of how
// work is scheduled across threads. The generator is splitmix64; Gaussians
// come from a hand-rolled Box-Muller so the byte stream is identical across
// platforms and standard-library versions.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace monocone {

inline constexpr const char* kRngAlgorithm = "splitmix64";

class RngStream {
 public:
  static RngStream make(uint64_t seed, uint64_t stream) {
    RngStream r;
    r.seed_ = seed;
    r.stream_ = stream;
    r.state_ = scramble(seed + 0x9e3779b97f4a7c15ull) ^
               scramble(stream * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull);
    return r;
  }

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return scramble(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> next_gaussian_pair() {
    const double u1 = 1.0 - next_unit();  // (0, 1], keeps the log finite
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  double next_gaussian() { return next_gaussian_pair().first; }

 private:
  static uint64_t scramble(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t seed_ = 0;
  uint64_t stream_ = 0;
  uint64_t state_ = 0;
};

}  // namespace monocone
