#pragma once

#include <cmath>
#include <cstdint>

namespace etop {

/// Portable deterministic 64-bit generator: xoshiro256++ seeded via splitmix64.
/// The same seed produces the same stream on every platform, independent of
/// the standard library, so sampled point clouds are reproducible bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0,1) using the top 53 bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n > 0. Rejection-free modulo is fine here:
  /// n is tiny compared to 2^64, the bias is far below any tolerance we test.
  std::uint64_t next_index(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal deviate (Box-Muller, consumes two uniforms).
  double next_gaussian() {
    double u;
    do {
      u = next_double();
    } while (u <= 0.0);
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t state_[4];
};

}  // namespace etop
