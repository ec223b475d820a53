#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "abundle/bundle.hpp"
#include "abundle/error.hpp"
#include "abundle/fixture.hpp"
#include "abundle/random.hpp"
#include "support.hpp"

namespace abundle {
namespace {

using testing::near;

constexpr std::size_t kN = 8;

AVector constant_point(Complex z) { return AVector{AlgebraElement::constant(kN, z)}; }

// A point in both charts of the two-chart fixtures.
const AVector& overlap_point(const BundleAtlas& atlas) {
  for (const auto& s : atlas.base().samples()) {
    if (s.overlap) return s.x;
  }
  throw std::runtime_error("no overlap sample");
}

AlgebraElement phase_at(const AVector& x, double omega) {
  return pointwise(x[0], [omega](Complex z) {
    return std::polar(1.0, omega * (z.real() + 0.5 * z.imag()));
  });
}

TEST(Chart, MembershipUsesTheClosestGridPoint) {
  const Chart c{constant_point(0.0)};
  EXPECT_TRUE(c.contains(constant_point(1.25)));
  EXPECT_FALSE(c.contains(constant_point(1.35)));
  AVector x = constant_point(5.0);
  x[0][3] = 0.1;
  EXPECT_TRUE(c.contains(x));
}

TEST(Cocycle, TrivialAndPhasePass) {
  const CocycleReport trivial = verify_cocycle(*build_fixture("trivial-line").atlas());
  EXPECT_TRUE(trivial.passed);
  EXPECT_EQ(trivial.identity_residual, 0.0);
  EXPECT_EQ(trivial.triple_residual, 0.0);
  const CocycleReport phase = verify_cocycle(*build_fixture("phase-two-chart").atlas());
  EXPECT_TRUE(phase.passed);
  EXPECT_GT(phase.points, 0u);
}

TEST(Cocycle, BrokenCocycleFailsWithUnitResidual) {
  const CocycleReport r = verify_cocycle(*build_fixture("broken-cocycle").atlas());
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.triple_residual, 1.0, 1e-9);
}

TEST(Cocycle, TransitionChecksChartMembership) {
  const Fixture f = build_fixture("phase-two-chart");
  try {
    f.atlas()->transition(0, 1, constant_point(-1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ChartMismatch);
  }
}

TEST(Cocycle, PhaseTransitionMatchesTheFormula) {
  const Fixture f = build_fixture("phase-two-chart");
  const double omega = f.descriptor().cocycle.omega.at(1);
  const AVector& x = overlap_point(*f.atlas());
  const MatrixOverA g = f.atlas()->transition(1, 0, x);
  EXPECT_TRUE(near(g, MatrixOverA::diagonal({phase_at(x, omega), AlgebraElement::unit(kN)}), 1e-14));
}

TEST(Partition, SingleChartIsTheUnit) {
  const Fixture f = build_fixture("trivial-line");
  const PartitionOfUnity psi = f.partition();
  ASSERT_EQ(psi.size(), 1u);
  for (const auto& s : f.atlas()->base().samples()) {
    EXPECT_TRUE(near(psi(0, s.x), AlgebraElement::unit(kN), 1e-15));
  }
}

TEST(Partition, TwoChartsSumToOneAndVanishOutsideTheirChart) {
  const Fixture f = build_fixture("phase-two-chart");
  const PartitionOfUnity psi = f.partition();
  const PartitionReport r = verify_partition(f.atlas()->base(), psi);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.sum_residual, 1e-12);
  EXPECT_GE(r.min_spectral_value, -1e-12);
  EXPECT_EQ(r.support_violations, 0u);
  const AVector outside_second = constant_point(-0.5);
  EXPECT_EQ(psi(1, outside_second), AlgebraElement::zero(kN));
  EXPECT_TRUE(near(psi(0, outside_second), AlgebraElement::unit(kN), 1e-15));
}

TEST(Partition, BumpProfileOracle) {
  EXPECT_DOUBLE_EQ(bump_profile(0.0, 1.2), std::exp(-1.0 / 1.44));
  EXPECT_EQ(bump_profile(1.44, 1.2), 0.0);
  EXPECT_EQ(bump_profile(2.0, 1.2), 0.0);
}

TEST(Partition, UncoveredPlanThrows) {
  SamplePlanSpec plan;
  plan.value_radius = 1.25;
  const BaseRegion base(1, kN, {Chart{constant_point(0.0), 0.5, 1.3}}, plan);
  try {
    make_bump_partition(base);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NormalizerNotInvertible);
  }
}

TEST(Section, FromReferenceIsCompatible) {
  const Fixture f = build_fixture("phase-two-chart");
  Rng rng(1);
  const AVector c0 = rng.vector(2, kN);
  const AVector c1 = rng.vector(2, kN);
  const AMap ref(1, 2, [=](const AVector& x) { return c0 + x[0] * c1; });
  const Section xi = Section::from_reference(f.atlas(), 0, ref);
  EXPECT_LE(section_compatibility_residual(*f.atlas(), xi), 1e-12);

  const AMap scalar = AMap::scalar(1, [](const AVector& x) { return x[0] * star(x[0]); });
  const Section eta = Section::from_reference(f.atlas(), 1, ref);
  EXPECT_LE(section_compatibility_residual(*f.atlas(), xi.scaled(scalar) + eta), 1e-12);
}

TEST(Section, InconsistentRepresentativesAreDetected) {
  const Fixture f = build_fixture("phase-two-chart");
  const AMap e0 = AMap::constant(1, AVector::basis(2, 0, kN));
  const Section bad({e0, e0});
  EXPECT_GT(section_compatibility_residual(*f.atlas(), bad), 0.1);
}

TEST(FrameSections, TrivialBundleCanonicalBasis) {
  const Fixture f = build_fixture("trivial-line");
  const auto eps = frame_sections(f.atlas(), 0, {AVector::basis(1, 0, kN)});
  ASSERT_EQ(eps.size(), 1u);
  for (const auto& s : f.atlas()->base().samples()) {
    EXPECT_EQ(eps[0](0, s.x), AVector::basis(1, 0, kN));
  }
}

TEST(FrameSections, PhaseRepresentativeInTheOtherChart) {
  const Fixture f = build_fixture("phase-two-chart");
  const double omega = f.descriptor().cocycle.omega.at(1);
  const auto eps = frame_sections(f.atlas(), 0, {AVector::basis(2, 0, kN), AVector::basis(2, 1, kN)});
  const AVector& x = overlap_point(*f.atlas());
  EXPECT_TRUE(near(eps[0](1, x), phase_at(x, omega) * AVector::basis(2, 0, kN), 1e-14));
  EXPECT_TRUE(near(eps[1](1, x), AVector::basis(2, 1, kN), 1e-14));
}

TEST(FrameSections, ExpansionReproducesTheSection) {
  const Fixture f = build_fixture("phase-two-chart");
  const std::vector<AVector> basis = {AVector::basis(2, 0, kN), AVector::basis(2, 1, kN)};
  const auto eps = frame_sections(f.atlas(), 0, basis);
  Rng rng(2);
  const AVector c = rng.vector(2, kN);
  const Section xi = Section::from_reference(
      f.atlas(), 0, AMap(1, 2, [c](const AVector& x) { return x[0] * c; }));
  const MatrixOverA id = MatrixOverA::identity(2, kN);
  for (const auto& s : f.atlas()->base().samples()) {
    for (std::size_t i = 0; i < 2; ++i) {
      if (!f.atlas()->in_chart(i, s.x)) continue;
      AVector sum = AVector::zero(2, kN);
      for (const auto& e : eps) sum += pair(id, xi(i, s.x), e(i, s.x)) * e(i, s.x);
      EXPECT_TRUE(near(sum, xi(i, s.x), 1e-10));
    }
  }
}

TEST(Gluing, TrivialCocycleReproducesAlpha) {
  const Fixture f = build_fixture("random-form-line");
  const HermitianStructure g = hermitian_structure_by_gluing(f.atlas(), f.form(), f.partition());
  for (const auto& s : f.atlas()->base().samples()) {
    EXPECT_TRUE(near(g.gram(0, s.x), f.form().gram(), 1e-12));
  }
}

TEST(Gluing, PhaseCocycleGivesTheStandardForm) {
  const Fixture f = build_fixture("phase-two-chart");
  const HermitianStructure g = hermitian_structure_by_gluing(f.atlas(), f.form(), f.partition());
  for (const auto& s : f.atlas()->base().samples()) {
    for (std::size_t i = 0; i < 2; ++i) {
      if (f.atlas()->in_chart(i, s.x)) {
        EXPECT_TRUE(near(g.gram(i, s.x), MatrixOverA::identity(2, kN), 1e-12));
      }
    }
  }
  EXPECT_LE(chart_independence_residual(g), 1e-10);
}

TEST(Gluing, NonUnitaryCocycleStillGivesAHermitianStructure) {
  const Fixture f = build_fixture("nonunitary-two-chart");
  const HermitianStructure g = hermitian_structure_by_gluing(f.atlas(), f.form(), f.partition());
  EXPECT_TRUE(verify_structure_axioms(g, 4, 7, 1e-9).passed());
  EXPECT_LE(chart_independence_residual(g), 1e-9);
  const AVector& x = overlap_point(*f.atlas());
  EXPECT_GT(seminorm(g.gram(0, x) - g.gram(1, x)), 1e-3);
}

TEST(Reduction, PhaseCocycleReduces) {
  const Fixture f = build_fixture("phase-two-chart");
  EXPECT_LE(reduction_residual(*f.atlas(), f.form()), 1e-10);
  const HermitianStructure g = hermitian_structure_by_reduction(f.atlas(), f.form());
  EXPECT_LE(chart_independence_residual(g), 1e-10);
}

TEST(Reduction, TrivialCocycleIsAlphaEverywhere) {
  const Fixture f = build_fixture("random-form-line");
  const HermitianStructure g = hermitian_structure_by_reduction(f.atlas(), f.form());
  EXPECT_TRUE(near(g.gram(0, constant_point(0.3)), f.form().gram(), 0.0));
}

TEST(Reduction, DiagonalCocycleIsRejected) {
  const Fixture f = build_fixture("nonunitary-two-chart");
  try {
    hermitian_structure_by_reduction(f.atlas(), f.form());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotReduced);
    EXPECT_NE(std::string(e.what()).find("(0, 1)"), std::string::npos);
  }
}

TEST(HermitianStructure, GramOutsideTheChartThrows) {
  const Fixture f = build_fixture("phase-two-chart");
  const HermitianStructure g = hermitian_structure_by_reduction(f.atlas(), f.form());
  EXPECT_THROW(g.gram(1, constant_point(-1.0)), Error);
}

TEST(HomTrivialization, Examples) {
  const Fixture f = build_fixture("trivial-line");
  const AVector x = constant_point(0.2);
  const HomTrivialization zero = lhom_trivialization(
      *f.atlas(), 0, x, [](const TangentVector&) { return AVector::zero(1, kN); });
  EXPECT_TRUE(near(zero.linear, MatrixOverA::zero(1, 1, kN), 0.0));
  EXPECT_TRUE(near(zero.skew, MatrixOverA::zero(1, 1, kN), 0.0));
  const HomTrivialization first =
      lhom_trivialization(*f.atlas(), 0, x, [](const TangentVector& v) { return v.h; });
  EXPECT_TRUE(near(first.linear, MatrixOverA::identity(1, kN), 0.0));
  EXPECT_TRUE(near(first.skew, MatrixOverA::zero(1, 1, kN), 0.0));
  Rng rng(3);
  const TangentVector v{rng.vector(1, kN), rng.vector(1, kN)};
  EXPECT_TRUE(near(first.apply(v), v.h, 0.0));
}

TEST(HomTrivialization, TransportRoundTrip) {
  const Fixture f = build_fixture("nonunitary-two-chart");
  Rng rng(4);
  const AVector& x = overlap_point(*f.atlas());
  const AVector a = rng.vector(2, kN);
  const AVector b = rng.vector(2, kN);
  const HomTrivialization hom = lhom_trivialization(
      *f.atlas(), 0, x, [&](const TangentVector& v) { return v.h[0] * a + star(v.k[0]) * b; });
  const HomTrivialization there = transport(*f.atlas(), hom, 1);
  const HomTrivialization back = transport(*f.atlas(), there, 0);
  EXPECT_TRUE(near(back.linear, hom.linear, 1e-12));
  EXPECT_TRUE(near(back.skew, hom.skew, 1e-12));
  const TangentVector v{rng.vector(1, kN), rng.vector(1, kN)};
  EXPECT_TRUE(near(there.apply(v), f.atlas()->transition(1, 0, x) * hom.apply(v), 1e-12));
}

TEST(SamplePlan, IsDeterministicAndRespectsMembership) {
  const Fixture a = build_fixture("phase-two-chart");
  const Fixture b = build_fixture("phase-two-chart");
  const auto& sa = a.atlas()->base().samples();
  const auto& sb = b.atlas()->base().samples();
  ASSERT_EQ(sa.size(), sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) {
    EXPECT_EQ(sa[i].x, sb[i].x);
    for (std::size_t c = 0; c < 2; ++c) {
      EXPECT_EQ(sa[i].membership[c], a.atlas()->in_chart(c, sa[i].x));
    }
    if (sa[i].overlap) {
      EXPECT_TRUE(sa[i].membership[0] && sa[i].membership[1]);
    }
  }
}

}  // namespace
}  // namespace abundle
