#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mvc {

// Seedable generator with explicit, engine-portable transforms.
// mt19937_64 output is fully specified by the standard and the uniform and
// normal transforms below avoid the implementation-defined std::*_distribution
// algorithms, so a given seed yields the same stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Index m with probability p[m], p summing to one.
  int categorical(const double* p, int m_count) {
    const double u = uniform01();
    double acc = 0.0;
    for (int m = 0; m < m_count - 1; ++m) {
      acc += p[m];
      if (u < acc) return m;
    }
    return m_count - 1;
  }

  static std::uint64_t split(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Derives an independent stream id from a master seed and tags; used to
  // give every Monte-Carlo replication its own generator so that results do
  // not depend on worker count or execution order.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return split(split(split(seed) ^ a) ^ b);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mvc
