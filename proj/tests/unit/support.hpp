#pragma once

#include <complex>

#include <gtest/gtest.h>

#include "abundle/algebra.hpp"
#include "abundle/pmodule.hpp"

namespace abundle::testing {

inline ::testing::AssertionResult near(const AlgebraElement& a, const AlgebraElement& b,
                                       double tol) {
  if (a.size() != b.size()) return ::testing::AssertionFailure() << "size mismatch";
  const double r = seminorm(a - b);
  if (r <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "residual " << r << " > " << tol;
}

inline ::testing::AssertionResult near(const AVector& a, const AVector& b, double tol) {
  if (a.size() != b.size()) return ::testing::AssertionFailure() << "length mismatch";
  const double r = seminorm(a - b);
  if (r <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "residual " << r << " > " << tol;
}

inline ::testing::AssertionResult near(const MatrixOverA& a, const MatrixOverA& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return ::testing::AssertionFailure() << "shape mismatch";
  }
  const double r = seminorm(a - b);
  if (r <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "residual " << r << " > " << tol;
}

inline AlgebraElement real(std::initializer_list<double> xs) {
  std::vector<Complex> v(xs.begin(), xs.end());
  return AlgebraElement(std::move(v));
}

}  // namespace abundle::testing
