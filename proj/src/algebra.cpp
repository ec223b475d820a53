#include "abundle/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abundle/error.hpp"

namespace abundle {

namespace {

void require_same_grid(std::size_t a, std::size_t b) {
  if (a != b) {
    fail(ErrorCode::InvalidArgument,
         "grid size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

AlgebraElement::AlgebraElement(std::vector<Complex> values)
    : values_(std::move(values)) {}

AlgebraElement::AlgebraElement(std::initializer_list<Complex> values)
    : values_(values) {}

AlgebraElement AlgebraElement::constant(std::size_t n, Complex z) {
  return AlgebraElement(std::vector<Complex>(n, z));
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& b) {
  require_same_grid(size(), b.size());
  for (std::size_t t = 0; t < size(); ++t) values_[t] += b.values_[t];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& b) {
  require_same_grid(size(), b.size());
  for (std::size_t t = 0; t < size(); ++t) values_[t] -= b.values_[t];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const AlgebraElement& b) {
  require_same_grid(size(), b.size());
  for (std::size_t t = 0; t < size(); ++t) values_[t] *= b.values_[t];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex z) {
  for (auto& v : values_) v *= z;
  return *this;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator*(AlgebraElement a, const AlgebraElement& b) { return a *= b; }
AlgebraElement operator*(Complex z, AlgebraElement a) { return a *= z; }
AlgebraElement operator*(AlgebraElement a, Complex z) { return a *= z; }

AlgebraElement operator-(AlgebraElement a) {
  for (std::size_t t = 0; t < a.size(); ++t) a[t] = -a[t];
  return a;
}

AlgebraElement star(const AlgebraElement& a) {
  return pointwise(a, [](Complex z) { return std::conj(z); });
}

double seminorm(const AlgebraElement& a) {
  double m = 0.0;
  for (Complex z : a.values()) {
    const double r = std::abs(z);
    if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
    m = std::max(m, r);
  }
  return m;
}

double min_modulus(const AlgebraElement& a) {
  double m = std::numeric_limits<double>::infinity();
  for (Complex z : a.values()) m = std::min(m, std::abs(z));
  return m;
}

std::vector<Complex> spectrum(const AlgebraElement& a) {
  std::vector<Complex> out;
  for (Complex z : a.values()) {
    if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
  }
  return out;
}

bool is_positive(const AlgebraElement& a, double tol) {
  return std::all_of(a.values().begin(), a.values().end(), [tol](Complex z) {
    return std::abs(z.imag()) <= tol && z.real() >= -tol;
  });
}

AlgebraElement sqrt_positive(const AlgebraElement& a, double tol) {
  if (!is_positive(a, tol)) fail(ErrorCode::NotPositive, "sqrt_positive: element is not positive");
  return pointwise(a, [](Complex z) { return Complex(std::sqrt(std::max(z.real(), 0.0)), 0.0); });
}

AlgebraElement invert(const AlgebraElement& a, double tol) {
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (std::abs(a[t]) <= tol) {
      fail(ErrorCode::NotInvertible,
           "invert: |a(" + std::to_string(t) + ")| <= " + std::to_string(tol));
    }
  }
  return pointwise(a, [](Complex z) { return 1.0 / z; });
}

AVector::AVector(std::vector<AlgebraElement> entries) : entries_(std::move(entries)) {}

AVector::AVector(std::initializer_list<AlgebraElement> entries) : entries_(entries) {}

AVector AVector::zero(std::size_t k, std::size_t n) {
  return AVector(std::vector<AlgebraElement>(k, AlgebraElement::zero(n)));
}

AVector AVector::basis(std::size_t k, std::size_t j, std::size_t n) {
  AVector e = zero(k, n);
  e[j] = AlgebraElement::unit(n);
  return e;
}

AVector& AVector::operator+=(const AVector& b) {
  require_same_grid(size(), b.size());
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += b.entries_[i];
  return *this;
}

AVector& AVector::operator-=(const AVector& b) {
  require_same_grid(size(), b.size());
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= b.entries_[i];
  return *this;
}

AVector operator+(AVector a, const AVector& b) { return a += b; }
AVector operator-(AVector a, const AVector& b) { return a -= b; }

AVector operator*(const AlgebraElement& a, const AVector& v) {
  std::vector<AlgebraElement> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(a * e);
  return AVector(std::move(out));
}

AVector operator*(Complex z, const AVector& v) {
  std::vector<AlgebraElement> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(z * e);
  return AVector(std::move(out));
}

AVector star(const AVector& v) {
  std::vector<AlgebraElement> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(star(e));
  return AVector(std::move(out));
}

double seminorm(const AVector& v) {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, seminorm(e));
  return m;
}

}  // namespace abundle
