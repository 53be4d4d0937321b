#pragma once

#include <cstdint>
#include <random>

namespace pld {

/// Derives an independent sub-stream seed from a base seed and a shard
/// index via a splitmix64 finalizer step. Distinct indices give
/// decorrelated streams; the mapping is a fixed function so shard i always
/// sees the same stream regardless of scheduling.
inline std::uint64_t derive_subseed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Explicitly seeded RNG with portable draw helpers. std::mt19937_64's
/// output sequence is pinned by the standard; the distribution helpers here
/// avoid std::uniform_*_distribution, whose algorithms are not, so results
/// are bit-identical across platforms.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform real in [0, 1) with 53 random bits.
  double next_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_real() < p; }

  /// Uniform integer in [0, n) by masked rejection (unbiased).
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const std::uint64_t draw = engine_() & mask;
      if (draw < n) return draw;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pld
