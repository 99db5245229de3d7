#pragma once

#include <cstdint>

namespace choq {

/// splitmix64. Used everywhere randomness is needed so that streams are
/// reproducible bit-for-bit across platforms and thread counts; the standard
/// <random> distributions are implementation-defined and unsuitable for
/// golden-file tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream for a subtask (e.g. instance #i of a suite).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
  return r.next();
}

}  // namespace choq
