// Deterministic random number generation.
//
// splitmix64 is used directly rather than std::mt19937 +
// std::normal_distribution because the standard distributions are
// implementation-defined: the same seed must reproduce the same stream on
// every platform, including across libstdc++/libc++. Gaussians come from
// Box-Muller on top of the 53-bit uniform.
#pragma once

#include <cmath>
#include <cstdint>

namespace hsl {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; caches the second variate.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    double u2 = uniform();
    // Guard the log: uniform() can return exactly 0.
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // Derive an independent stream for shard i of a parallel loop. Mixing the
  // shard index through one splitmix step decorrelates the child streams.
  static std::uint64_t subseed(std::uint64_t seed, std::uint64_t shard) {
    Rng g(seed ^ (0xd1342543de82ef95ULL * (shard + 1)));
    return g.next_u64();
  }

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace hsl
