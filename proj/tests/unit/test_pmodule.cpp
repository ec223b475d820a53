#include <gtest/gtest.h>

#include "abundle/error.hpp"
#include "abundle/pmodule.hpp"
#include "abundle/random.hpp"
#include "support.hpp"

namespace abundle {
namespace {

using testing::near;

constexpr std::size_t kN = 8;

PModule diag10() {
  return PModule(MatrixOverA::diagonal({AlgebraElement::unit(kN), AlgebraElement::zero(kN)}));
}

TEST(PModule, RejectsMalformedIdempotents) {
  const auto expect_malformed = [](const MatrixOverA& p) {
    try {
      PModule m(p);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedIdempotent);
    }
  };
  expect_malformed(MatrixOverA::diagonal({AlgebraElement::constant(kN, 2.0)}));
  MatrixOverA skew = MatrixOverA::zero(2, 2, kN);
  skew(0, 0) = AlgebraElement::unit(kN);
  skew(0, 1) = AlgebraElement::unit(kN);
  expect_malformed(skew);
  expect_malformed(MatrixOverA::zero(2, 3, kN));
}

TEST(Project, Examples) {
  Rng rng(1);
  const AVector v = rng.vector(2, kN);
  EXPECT_EQ(project(PModule::free(2, kN), v).coords(), v);
  const ModuleElement x = project(diag10(), v);
  EXPECT_EQ(x.coords()[0], v[0]);
  EXPECT_TRUE(near(x.coords()[1], AlgebraElement::zero(kN), 0.0));
}

TEST(Project, IsIdempotentAndLinear) {
  Rng rng(2);
  const PModule m = PModule::mixed_rank(kN);
  for (int i = 0; i < 20; ++i) {
    const AVector v = rng.vector(2, kN);
    const AVector w = rng.vector(2, kN);
    const AlgebraElement a = rng.element(kN);
    const AVector pv = project(m, v).coords();
    EXPECT_TRUE(near(project(m, pv).coords(), pv, 1e-12));
    EXPECT_TRUE(near(project(m, a * v + w).coords(), a * pv + project(m, w).coords(), 1e-12));
    EXPECT_TRUE(m.contains(pv));
  }
}

TEST(ModuleElement, RejectsCoordinatesOffTheRange) {
  try {
    ModuleElement x(diag10(), AVector::basis(2, 1, kN));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModuleMismatch);
  }
}

TEST(Complement, Examples) {
  const PModule zero = complement(PModule::free(3, kN));
  EXPECT_TRUE(near(zero.idempotent(), MatrixOverA::zero(3, 3, kN), 0.0));
  const PModule c = complement(diag10());
  EXPECT_TRUE(near(c.idempotent(),
                   MatrixOverA::diagonal({AlgebraElement::zero(kN), AlgebraElement::unit(kN)}),
                   0.0));
}

TEST(PointwiseRank, Examples) {
  EXPECT_EQ(pointwise_rank(PModule::free(2, kN)), std::vector<int>(kN, 2));
  EXPECT_EQ(pointwise_rank(complement(PModule::free(2, kN))), std::vector<int>(kN, 0));
  const PModule mixed = PModule::mixed_rank(kN);
  const auto ranks = pointwise_rank(mixed);
  const auto co = pointwise_rank(complement(mixed));
  for (std::size_t t = 0; t < kN; ++t) {
    EXPECT_EQ(ranks[t], t < kN / 2 ? 1 : 2);
    EXPECT_EQ(ranks[t] + co[t], 2);
  }
  EXPECT_FALSE(mixed.is_free());
}

TEST(WhitneySum, InjectionAndProjection) {
  Rng rng(3);
  const PModule m = PModule::mixed_rank(kN);
  const WhitneySum w = whitney_sum(m, complement(m));
  EXPECT_EQ(pointwise_rank(w.sum), std::vector<int>(kN, 2));
  for (int i = 0; i < 10; ++i) {
    const ModuleElement x = project(m, rng.vector(2, kN));
    EXPECT_TRUE(near(w.project_first(w.inject_first(x)).coords(), x.coords(), 1e-12));
    EXPECT_TRUE(near(w.project_second(w.inject_first(x)).coords(), AVector::zero(2, kN), 1e-12));
  }
  const WhitneySum two = whitney_sum(PModule::free(1, kN), PModule::free(1, kN));
  EXPECT_TRUE(two.sum.is_free());
  EXPECT_EQ(two.sum.ambient_rank(), 2u);
}

TEST(CollapseToAmbient, IsAnIsomorphismOntoTheFreeModule) {
  Rng rng(4);
  const PModule m = PModule::mixed_rank(kN);
  const WhitneySum w = whitney_sum(m, complement(m));
  const ModuleMap collapse = collapse_to_ambient(m);
  const AVector v = rng.vector(2, kN);
  const ModuleElement x = project(m, v);
  const ModuleElement y = project(complement(m), v);
  const AVector sum = w.inject_first(x).coords() + w.inject_second(y).coords();
  EXPECT_TRUE(near(collapse(ModuleElement(w.sum, sum)).coords(), v, 1e-12));
  EXPECT_TRUE(near(collapse.matrix() * adjoint(collapse.matrix()), MatrixOverA::identity(2, kN),
                   1e-12));
}

TEST(MatrixOverA, InverseAndAdjoint) {
  Rng rng(5);
  MatrixOverA g(2, 2, kN);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) g(r, c) = rng.element(kN);
  }
  g += Complex(3.0) * MatrixOverA::identity(2, kN);
  EXPECT_TRUE(near(g * inverse(g), MatrixOverA::identity(2, kN), 1e-12));
  EXPECT_TRUE(near(adjoint(adjoint(g)), g, 0.0));
  EXPECT_THROW(inverse(MatrixOverA::zero(2, 2, kN)), Error);
}

TEST(ModuleMap, EnforcesTheModuleShape) {
  const PModule m = diag10();
  EXPECT_THROW(ModuleMap(m, m, MatrixOverA::identity(2, kN)), Error);
  EXPECT_NO_THROW(ModuleMap(m, m, m.idempotent()));
}

}  // namespace
}  // namespace abundle
