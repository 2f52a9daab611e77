#pragma once

// Counter-based random streams for the Monte Carlo: every pulse gets its own
// stream derived from (seed, pulse counter) by bit mixing, so results are
// bit-identical for a fixed seed no matter how the pulse loop is chunked or
// reordered. The generator is splitmix64; streams start at hashed states, so
// distinct counters do not produce shifted copies of one sequence.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace sfwm {

inline constexpr std::uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z += kSplitmixGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class PulseRng {
 public:
  PulseRng(std::uint64_t seed, std::uint64_t counter)
      : state_(mix64(seed ^ mix64(counter ^ 0x6A09E667F3BCC908ull))) {}

  std::uint64_t next_u64() {
    state_ += kSplitmixGamma;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Inversion sampler; exact and fast for the sub-unity means used here.
  int poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean > 700.0)
      throw std::invalid_argument("poisson: mean too large for the inversion sampler");
    const double u = next_double();
    double term = std::exp(-mean);
    double cum = term;
    int k = 0;
    while (u > cum) {
      ++k;
      term *= mean / k;
      cum += term;
    }
    return k;
  }

 private:
  std::uint64_t state_;
};

}  // namespace sfwm
