#ifndef GEOCUT_RNG_HPP_
#define GEOCUT_RNG_HPP_

#include <cmath>
#include <cstdint>

#include "geocut/types.hpp"

namespace geocut {

// xoshiro256++ seeded through splitmix64. Self-contained so that seeded runs
// produce identical streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (int i = 0; i < 4; ++i) s_[i] = splitmix64(x);
    have_cached_normal_ = false;
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform double in [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // index in [0, n)
  int uniform_index(int n) {
    return static_cast<int>(uniform() * static_cast<double>(n)) % n;
  }

  // standard normal via Marsaglia polar; second value cached
  double normal() {
    if (have_cached_normal_) {
      have_cached_normal_ = false;
      return cached_normal_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * m;
    have_cached_normal_ = true;
    return u * m;
  }

  Vector normal_vector(int d) {
    Vector x(d);
    for (int c = 0; c < d; ++c) x[c] = normal();
    return x;
  }

  // uniform point in the closed unit ball of R^d
  Vector uniform_in_ball(int d) {
    Vector x = normal_vector(d);
    const double norm = x.norm();
    if (norm == 0.0) return Vector::Zero(d);
    const double radius = std::pow(uniform(), 1.0 / d);
    return x * (radius / norm);
  }

 private:
  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

}  // namespace geocut

#endif  // GEOCUT_RNG_HPP_
