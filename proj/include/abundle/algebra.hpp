#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace abundle {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultGridSize = 8;

struct GridSpec {
  std::size_t size = kDefaultGridSize;
  std::string label = "grid";
};

/// An element of A = C^n, the algebra of complex functions on an n-point grid.
///
/// All arithmetic is pointwise, so A is a commutative unital C*-algebra whose
/// single seminorm is the sup-norm over the grid.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::vector<Complex> values);
  AlgebraElement(std::initializer_list<Complex> values);

  static AlgebraElement constant(std::size_t n, Complex z);
  static AlgebraElement unit(std::size_t n) { return constant(n, 1.0); }
  static AlgebraElement zero(std::size_t n) { return constant(n, 0.0); }

  std::size_t size() const noexcept { return values_.size(); }
  Complex operator[](std::size_t t) const { return values_[t]; }
  Complex& operator[](std::size_t t) { return values_[t]; }
  std::span<const Complex> values() const noexcept { return values_; }

  AlgebraElement& operator+=(const AlgebraElement& b);
  AlgebraElement& operator-=(const AlgebraElement& b);
  AlgebraElement& operator*=(const AlgebraElement& b);
  AlgebraElement& operator*=(Complex z);

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  std::vector<Complex> values_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a);
AlgebraElement operator*(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(Complex z, AlgebraElement a);
AlgebraElement operator*(AlgebraElement a, Complex z);

// Pointwise complex conjugation, the involution of A.
AlgebraElement star(const AlgebraElement& a);

// Maximum modulus over the grid; +inf if any coordinate is not finite.
double seminorm(const AlgebraElement& a);

// Distinct coordinate values, in first-occurrence order. For A = C^n,
// lambda - a fails to be invertible exactly when lambda is a coordinate of a.
std::vector<Complex> spectrum(const AlgebraElement& a);

bool is_positive(const AlgebraElement& a, double tol);

// Pointwise square root of max(Re a, 0). Throws NotPositive unless
// is_positive(a, tol).
AlgebraElement sqrt_positive(const AlgebraElement& a, double tol);

// Pointwise reciprocal. Throws NotInvertible if some |a(t)| <= tol.
AlgebraElement invert(const AlgebraElement& a, double tol);

// Smallest |a(t)| over the grid.
double min_modulus(const AlgebraElement& a);

// Applies a scalar function at every grid point.
template <class F>
AlgebraElement pointwise(const AlgebraElement& a, F&& fn) {
  std::vector<Complex> out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = fn(a[t]);
  return AlgebraElement(std::move(out));
}

/// A vector in the free module A^k.
class AVector {
 public:
  AVector() = default;
  explicit AVector(std::vector<AlgebraElement> entries);
  AVector(std::initializer_list<AlgebraElement> entries);

  static AVector zero(std::size_t k, std::size_t n);
  static AVector basis(std::size_t k, std::size_t j, std::size_t n);

  std::size_t size() const noexcept { return entries_.size(); }
  // Grid size; zero for an empty vector.
  std::size_t grid_size() const noexcept {
    return entries_.empty() ? 0 : entries_.front().size();
  }
  const AlgebraElement& operator[](std::size_t i) const { return entries_[i]; }
  AlgebraElement& operator[](std::size_t i) { return entries_[i]; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  AVector& operator+=(const AVector& b);
  AVector& operator-=(const AVector& b);

  friend bool operator==(const AVector&, const AVector&) = default;

 private:
  std::vector<AlgebraElement> entries_;
};

AVector operator+(AVector a, const AVector& b);
AVector operator-(AVector a, const AVector& b);
AVector operator*(const AlgebraElement& a, const AVector& v);
AVector operator*(Complex z, const AVector& v);
AVector star(const AVector& v);

// Max seminorm over the entries.
double seminorm(const AVector& v);

}  // namespace abundle
