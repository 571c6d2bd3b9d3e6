// SPDX-License-Identifier: MIT
//
// Deterministic per-path random streams.  Each stream owns a Mersenne Twister
// seeded from a hash of (seed, purpose, path, arm), so any path of any
// experiment can be simulated independently of scheduling order; results are
// byte-identical for any thread count.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace gittins {

namespace detail {

// splitmix64 finalizer; chains the id words into one well-mixed 64-bit seed.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t purpose = 0,
                     std::uint64_t path = 0, std::uint64_t arm = 0)
      : eng_(detail::mix64(
            detail::mix64(detail::mix64(detail::mix64(seed) ^ purpose) ^
                          path) ^
            arm)) {}

  // Uniform on the open interval (0, 1): 53-bit resolution, never 0 or 1.
  [[nodiscard]] double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
  }

  [[nodiscard]] double normal() { return normal_(eng_); }

  // Exponential with the given rate via inverse CDF.
  [[nodiscard]] double exponential(double rate) {
    return exp_inverse_cdf(uniform(), rate);
  }

  // Quantile function of Exp(rate); exposed so tests can check the sampler
  // against it directly.
  [[nodiscard]] static double exp_inverse_cdf(double u, double rate) {
    if (!(rate > 0.0)) {
      throw std::invalid_argument("exp_inverse_cdf: rate must be positive");
    }
    return -std::log1p(-u) / rate;
  }

  [[nodiscard]] std::uint64_t raw() { return eng_(); }
  [[nodiscard]] std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{};
};

}  // namespace gittins
