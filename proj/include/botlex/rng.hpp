#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace botlex {

// Deterministic RNG. mt19937_64 output is pinned by the standard; the
// distributions are hand-rolled here because the standard library's are
// not, and results must be identical across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n) via 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return real01() < p; }

  double normal(double mean, double stddev) {
    // Box-Muller; one draw per call keeps the stream simple to reason about.
    const double u1 = 1.0 - real01();  // (0, 1]
    const double u2 = real01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * 3.141592653589793 * u2);
  }

  double exponential(double mean) { return -mean * std::log(1.0 - real01()); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace botlex
