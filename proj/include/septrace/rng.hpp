#pragma once
// Deterministic random streams for reproducible experiments.
//
// Generator: xoshiro256++ seeded through SplitMix64. Every consumer of
// randomness gets its own stream derived from (master_seed, tag, index),
// so results are bit-identical across runs and independent of thread
// scheduling. All samplers (uniform, Bernoulli, binomial) are implemented
// here rather than via <random> distributions, whose output is not
// portable across standard libraries.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace septrace {

// SplitMix64 finalizer: avalanching 64-bit mix.
inline uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream seed for (master, tag, index). Chained mixing keeps distinct
// (tag, index) pairs statistically independent.
inline uint64_t derive_seed(uint64_t master, uint64_t tag, uint64_t index) {
  uint64_t h = mix64(master ^ (0xBF58476D1CE4E5B9ULL * (tag + 1)));
  return mix64(h ^ (0x94D049BB133111EBULL * (index + 1)));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    // SplitMix64 state fill, per the xoshiro authors' recommendation.
    uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9E3779B97F4A7C15ULL;
      uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      word = z ^ (z >> 31);
    }
  }

  // xoshiro256++
  uint64_t next() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // True with probability p.
  bool bernoulli(double p) { return next_double() < p; }

  // Uniform in [0, n), n >= 1. Masked rejection keeps the draw unbiased.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t mask = ~uint64_t{0} >> __builtin_clzll((n - 1) | 1);
    for (;;) {
      uint64_t v = next() & mask;
      if (v < n) return v;
    }
  }

  int64_t uniform_int(int64_t lo, int64_t hi) {  // inclusive range
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Bin(n, p) by geometric jumps between successes; O(n*min(p,1-p)) draws.
  int64_t binomial(int64_t n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    if (p > 0.5) return n - binomial(n, 1.0 - p);
    const double log1m = std::log1p(-p);
    int64_t count = 0;
    double pos = 0.0;
    for (;;) {
      double u = next_double();
      if (u <= 0.0) break;  // jump beyond any finite n
      pos += std::floor(std::log(u) / log1m) + 1.0;
      if (pos > static_cast<double>(n)) break;
      ++count;
    }
    return count;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<uint64_t, 4> state_;
};

// Stream tags used by the pipeline and harness.
namespace stream_tag {
inline constexpr uint64_t t_estimate = 1;
inline constexpr uint64_t coarse = 2;
inline constexpr uint64_t fine = 3;
inline constexpr uint64_t instance = 4;
inline constexpr uint64_t repetition = 5;
inline constexpr uint64_t validation = 6;
inline constexpr uint64_t cell = 7;
}  // namespace stream_tag

}  // namespace septrace
