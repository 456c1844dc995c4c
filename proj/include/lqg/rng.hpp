#pragma once

// Counter-derived random streams for reproducible Monte Carlo.
//
// Results must be bit-identical for a given (seed, stream) across runs and
// regardless of how replicas are scheduled, so we avoid std::*_distribution
// (implementation-defined sequences) and generate everything from a fixed
// xoshiro256++ core seeded through splitmix64.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace lqg {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}

  // Disjoint streams: any (seed, stream) pair yields an independent sequence.
  RngStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t sm = seed;
    (void)splitmix64_next(sm);
    sm ^= 0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL;
    for (auto& word : s_) word = splitmix64_next(sm);
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on (0,1); never returns 0 or 1
  double uniform() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  // standard normal, Box-Muller (pairs cached)
  double gaussian() {
    if (have_cache_) {
      have_cache_ = false;
      return cache_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cache_ = r * std::sin(a);
    have_cache_ = true;
    return r * std::cos(a);
  }

  // Gamma(shape, rate), Marsaglia-Tsang; shape < 1 via the boost
  // Gamma(a) = Gamma(a+1) * U^{1/a}.
  double gamma(double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0)
      throw std::invalid_argument("gamma: shape and rate must be positive");
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = gaussian();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double cache_ = 0.0;
  bool have_cache_ = false;
};

}  // namespace lqg
