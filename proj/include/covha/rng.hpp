#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace covha {

/// Deterministic Gaussian stream. Box-Muller over raw mt19937_64 output so
/// the same seed gives the same sequence on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform in (0, 1].
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
  }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 6.283185307179586476925287 * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  std::complex<double> gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace covha
