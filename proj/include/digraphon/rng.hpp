#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace digraphon {

// Deterministic 64-bit generator (SplitMix64 stream). Output p of a stream
// seeded with s is mix(s + (p+1)*kGamma), a pure function of (s, p), so a
// stream can be positioned in O(1). The parallel sampling kernels rely on
// this to reproduce the serial draw order bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Stream positioned so the next output is output number `pos` of `seed`.
  static Rng at(std::uint64_t seed, std::uint64_t pos) {
    return Rng(seed + pos * kGamma);
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via the Marsaglia polar method (no pair caching, so the
  // number of consumed outputs depends only on the draw sequence).
  double normal() {
    for (;;) {
      double a = 2.0 * next_double() - 1.0;
      double b = 2.0 * next_double() - 1.0;
      double s = a * a + b * b;
      if (s > 0.0 && s < 1.0) return a * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  // Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = next_double();
      return gamma(shape + 1.0) * std::pow(1.0 - u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = next_double();
      if (u == 0.0) continue;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

  // Index into a probability vector by cumulative walk; the final index
  // absorbs any rounding slack in the cumulative sum.
  int categorical(const double* p, int m) {
    double u = next_double();
    double c = 0.0;
    for (int t = 0; t + 1 < m; ++t) {
      c += p[t];
      if (u < c) return t;
    }
    return m - 1;
  }

  int categorical4(const std::array<double, 4>& p) { return categorical(p.data(), 4); }
  int categorical(const std::vector<double>& p) {
    return categorical(p.data(), static_cast<int>(p.size()));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

}  // namespace digraphon
