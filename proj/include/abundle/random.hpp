#pragma once

#include <cstdint>
#include <random>

#include "abundle/algebra.hpp"

namespace abundle {

// Seeded generator with a portable uniform draw, so fixtures and sample plans
// are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Complex in_square(double half_width) {
    const double re = uniform(-half_width, half_width);
    return {re, uniform(-half_width, half_width)};
  }

  // Uniform in the closed disk of the given radius (rejection from the square).
  Complex in_disk(double radius) {
    for (;;) {
      const Complex z = in_square(1.0);
      if (std::norm(z) <= 1.0) return radius * z;
    }
  }

  AlgebraElement element(std::size_t n, double half_width = 1.0) {
    std::vector<Complex> v(n);
    for (auto& z : v) z = in_square(half_width);
    return AlgebraElement(std::move(v));
  }

  AVector vector(std::size_t k, std::size_t n, double half_width = 1.0) {
    std::vector<AlgebraElement> v;
    v.reserve(k);
    for (std::size_t i = 0; i < k; ++i) v.push_back(element(n, half_width));
    return AVector(std::move(v));
  }

  // Pointwise real and strictly positive, in [lo, hi].
  AlgebraElement positive_element(std::size_t n, double lo, double hi) {
    std::vector<Complex> v(n);
    for (auto& z : v) z = uniform(lo, hi);
    return AlgebraElement(std::move(v));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace abundle
