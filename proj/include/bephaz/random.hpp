#pragma once

#include <cstdint>
#include <random>

namespace bephaz {

inline constexpr double kUnitEps = 1e-12;

inline uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic per-component substream derivation from a master seed.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  double gamma(double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(engine_);
  }

  /// Raw beta draw; can return exactly 0 or 1 for tiny shapes (underflow).
  double beta(double a, double b) {
    double ga = gamma(a);
    double gb = gamma(b);
    // both gammas can underflow to 0 for shapes near zero; redraw
    while (ga + gb == 0.0) {
      ga = gamma(a);
      gb = gamma(b);
    }
    return ga / (ga + gb);
  }

  int binomial(int n, double prob) {
    if (n == 0) return 0;
    return std::binomial_distribution<int>(n, prob)(engine_);
  }

  int poisson(double mean) {
    return std::poisson_distribution<int>(mean)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Pull a value strictly inside (0,1); reports whether clamping happened.
inline double clamp_unit(double v, bool* clamped = nullptr) {
  if (v < kUnitEps) {
    if (clamped) *clamped = true;
    return kUnitEps;
  }
  if (v > 1.0 - kUnitEps) {
    if (clamped) *clamped = true;
    return 1.0 - kUnitEps;
  }
  return v;
}

}  // namespace bephaz
