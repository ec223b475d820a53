#include <algorithm>
#include <limits>

#include <gtest/gtest.h>

#include "abundle/algebra.hpp"
#include "abundle/error.hpp"
#include "abundle/random.hpp"
#include "support.hpp"

namespace abundle {
namespace {

using testing::near;
using testing::real;
using namespace std::complex_literals;

TEST(Star, ConjugatesPointwise) {
  EXPECT_EQ(star(AlgebraElement{1.0 + 2.0i, 3.0}), (AlgebraElement{1.0 - 2.0i, 3.0}));
  EXPECT_EQ(star(AlgebraElement::unit(5)), AlgebraElement::unit(5));
}

TEST(Star, IsAnInvolutiveConjugateLinearMap) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const AlgebraElement a = rng.element(8);
    const AlgebraElement b = rng.element(8);
    const Complex z = rng.in_square(2.0);
    EXPECT_EQ(star(star(a)), a);
    EXPECT_TRUE(near(star(z * a + b), std::conj(z) * star(a) + star(b), 1e-15));
    EXPECT_TRUE(near(star(a * b), star(b) * star(a), 1e-15));
  }
}

TEST(Seminorm, IsTheSupOfModuli) {
  EXPECT_DOUBLE_EQ(seminorm(AlgebraElement{3.0, -4.0i}), 4.0);
  EXPECT_DOUBLE_EQ(seminorm(AlgebraElement::zero(4)), 0.0);
  const AlgebraElement a{1.0, 2.0i};
  EXPECT_DOUBLE_EQ(seminorm(a * star(a)), 4.0);
}

TEST(Seminorm, NonFiniteCoordinatesAreUnbounded) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(seminorm(AlgebraElement{1.0, Complex(nan, 0.0)}), std::numeric_limits<double>::infinity());
  EXPECT_EQ(seminorm(AVector{AlgebraElement{Complex(0.0, nan)}}),
            std::numeric_limits<double>::infinity());
}

TEST(Seminorm, SubmultiplicativeStarInvariantAndCStar) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const AlgebraElement a = rng.element(8, 3.0);
    const AlgebraElement b = rng.element(8, 3.0);
    EXPECT_LE(seminorm(a * b), seminorm(a) * seminorm(b) * (1 + 1e-15));
    EXPECT_DOUBLE_EQ(seminorm(star(a)), seminorm(a));
    EXPECT_NEAR(seminorm(star(a) * a), seminorm(a) * seminorm(a), 1e-12);
  }
}

TEST(Arithmetic, IsCommutativeAndUnital) {
  Rng rng(5);
  const AlgebraElement a = rng.element(6);
  const AlgebraElement b = rng.element(6);
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ(a * AlgebraElement::unit(6), a);
  EXPECT_EQ(a + AlgebraElement::zero(6), a);
}

TEST(Arithmetic, RejectsMismatchedGrids) {
  EXPECT_THROW(AlgebraElement::unit(3) + AlgebraElement::unit(4), Error);
}

TEST(Spectrum, ListsDistinctCoordinates) {
  const auto s = spectrum(AlgebraElement{1.0, 2.0i, -3.0});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_EQ(s[1], Complex(2.0i));
  EXPECT_EQ(s[2], Complex(-3.0));
  EXPECT_EQ(spectrum(AlgebraElement{5.0, 5.0}), std::vector<Complex>{5.0});
  EXPECT_EQ(spectrum(AlgebraElement::unit(7)), std::vector<Complex>{1.0});
}

TEST(Spectrum, LambdaMinusAIsInvertibleOffTheSpectrum) {
  const AlgebraElement a{1.0, 2.0i, -3.0};
  for (Complex lambda : spectrum(a)) {
    EXPECT_THROW(invert(AlgebraElement::constant(3, lambda) - a, 1e-12), Error);
  }
  EXPECT_NO_THROW(invert(AlgebraElement::constant(3, 0.5) - a, 1e-12));
}

TEST(IsPositive, UsesTheTolerance) {
  EXPECT_TRUE(is_positive(real({0.5, 2.0, 0.0}), 1e-12));
  EXPECT_FALSE(is_positive(real({1.0, -0.1}), 1e-12));
  EXPECT_TRUE(is_positive(AlgebraElement{1.0, 1e-15i}, 1e-12));
  EXPECT_FALSE(is_positive(AlgebraElement{1.0, 1e-3i}, 1e-12));
}

TEST(SqrtPositive, Examples) {
  EXPECT_TRUE(near(sqrt_positive(real({4.0, 9.0, 1.0}), 1e-12), real({2.0, 3.0, 1.0}), 0.0));
  EXPECT_TRUE(near(sqrt_positive(real({0.0, 0.0}), 1e-12), real({0.0, 0.0}), 0.0));
}

TEST(SqrtPositive, SquaresBack) {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const AlgebraElement a = rng.positive_element(8, 0.0, 10.0);
    const AlgebraElement r = sqrt_positive(a, 1e-12);
    EXPECT_TRUE(near(r * r, a, 1e-12));
    EXPECT_TRUE(is_positive(r, 0.0));
  }
}

TEST(SqrtPositive, RejectsNonPositive) {
  try {
    sqrt_positive(real({1.0, -0.5}), 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositive);
  }
}

TEST(Invert, Examples) {
  EXPECT_TRUE(near(invert(real({1.0, 2.0, -1.0}), 1e-12), real({1.0, 0.5, -1.0}), 0.0));
  try {
    invert(real({1.0, 0.0, 1.0}), 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
  }
}

TEST(Invert, MultipliesBackToTheUnit) {
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    AlgebraElement a = rng.element(8);
    a += AlgebraElement::constant(8, 1.5);
    EXPECT_TRUE(near(a * invert(a, 1e-12), AlgebraElement::unit(8), 1e-14));
  }
}

TEST(AVector, ModuleOperations) {
  const AVector e0 = AVector::basis(3, 0, 4);
  const AVector e2 = AVector::basis(3, 2, 4);
  const AlgebraElement a = real({1.0, 2.0, 3.0, 4.0});
  const AVector v = a * e0 + e2;
  EXPECT_EQ(v[0], a);
  EXPECT_EQ(v[1], AlgebraElement::zero(4));
  EXPECT_EQ(v[2], AlgebraElement::unit(4));
  EXPECT_DOUBLE_EQ(seminorm(v), 4.0);
  EXPECT_EQ(v - v, AVector::zero(3, 4));
  EXPECT_EQ(star(Complex(0.0, 1.0) * e0)[0], AlgebraElement::constant(4, Complex(0.0, -1.0)));
}

}  // namespace
}  // namespace abundle
