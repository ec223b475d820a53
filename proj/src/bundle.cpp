#include "abundle/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abundle/error.hpp"
#include "abundle/random.hpp"

namespace abundle {

namespace {

constexpr std::size_t kExclusiveTries = 200;

AVector draw_near(Rng& rng, const AVector& center, std::size_t t_count, double radius,
                  const std::function<std::size_t(std::size_t)>& chart_for_t,
                  const std::vector<Chart>& charts) {
  const std::size_t k = center.size();
  const double component_radius = radius / std::sqrt(static_cast<double>(k));
  AVector x = AVector::zero(k, t_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    const AVector& c = charts[chart_for_t(t)].center;
    for (std::size_t l = 0; l < k; ++l) x[l][t] = c[l][t] + rng.in_disk(component_radius);
  }
  return x;
}

// Values at grid point t lie outside every chart other than `own`.
bool exclusive_at(const AVector& x, std::size_t t, std::size_t own,
                  const std::vector<Chart>& charts) {
  for (std::size_t j = 0; j < charts.size(); ++j) {
    if (j == own) continue;
    double d2 = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) d2 += std::norm(x[l][t] - charts[j].center[l][t]);
    if (d2 < charts[j].chart_radius * charts[j].chart_radius) return false;
  }
  return true;
}

MatrixOverA phase_matrix(const PModule& fiber, const AlgebraElement& phase) {
  MatrixOverA d = MatrixOverA::identity(fiber.ambient_rank(), fiber.grid_size());
  d(0, 0) = phase;
  const MatrixOverA& p = fiber.idempotent();
  return p * d * p;
}

AlgebraElement phase_angle(const AVector& x, double omega) {
  return pointwise(x[0], [omega](Complex z) {
    return Complex(omega * (z.real() + 0.5 * z.imag()), 0.0);
  });
}

}  // namespace

std::vector<double> Chart::squared_distance(const AVector& x) const {
  if (x.size() != center.size()) fail(ErrorCode::InvalidArgument, "chart: dimension mismatch");
  std::vector<double> d2(x.grid_size(), 0.0);
  for (std::size_t l = 0; l < x.size(); ++l) {
    for (std::size_t t = 0; t < d2.size(); ++t) d2[t] += std::norm(x[l][t] - center[l][t]);
  }
  return d2;
}

bool Chart::contains(const AVector& x) const {
  const auto d2 = squared_distance(x);
  const double r2 = chart_radius * chart_radius;
  return std::any_of(d2.begin(), d2.end(), [r2](double v) { return v < r2; });
}

BaseRegion::BaseRegion(std::size_t dim, std::size_t grid_size, std::vector<Chart> charts,
                       SamplePlanSpec plan)
    : dim_(dim), grid_size_(grid_size), charts_(std::move(charts)), plan_spec_(plan) {
  if (dim_ == 0 || grid_size_ == 0 || charts_.empty()) {
    fail(ErrorCode::InvalidArgument, "base region needs dim, grid size and at least one chart");
  }
  for (const auto& c : charts_) {
    if (c.center.size() != dim_ || c.center.grid_size() != grid_size_) {
      fail(ErrorCode::InvalidArgument, "chart center has the wrong shape");
    }
    if (!(c.bump_radius > 0.0 && c.bump_radius < c.chart_radius)) {
      fail(ErrorCode::InvalidArgument, "chart radii must satisfy 0 < bump_radius < chart_radius");
    }
  }

  Rng rng(plan_spec_.seed);
  const double radius = plan_spec_.value_radius;
  for (std::size_t i = 0; i < charts_.size(); ++i) {
    for (std::size_t s = 0; s < plan_spec_.per_chart; ++s) {
      AVector x = draw_near(rng, charts_[i].center, grid_size_, radius,
                            [i](std::size_t) { return i; }, charts_);
      // Every other point is pushed out of the remaining charts where possible,
      // so support conditions get exercised.
      if (s % 2 == 1 && charts_.size() > 1) {
        for (std::size_t t = 0; t < grid_size_; ++t) {
          for (std::size_t tries = 0; tries < kExclusiveTries && !exclusive_at(x, t, i, charts_);
               ++tries) {
            for (std::size_t l = 0; l < dim_; ++l) {
              x[l][t] = charts_[i].center[l][t] +
                        rng.in_disk(radius / std::sqrt(static_cast<double>(dim_)));
            }
          }
        }
      }
      samples_.push_back({std::move(x), {}, std::nullopt});
    }
  }
  for (std::size_t i = 0; i < charts_.size(); ++i) {
    for (std::size_t j = i + 1; j < charts_.size(); ++j) {
      for (std::size_t s = 0; s < plan_spec_.per_overlap; ++s) {
        std::vector<std::size_t> owner(grid_size_);
        for (std::size_t t = 0; t < grid_size_; ++t) owner[t] = rng.uniform() < 0.5 ? i : j;
        owner[0] = i;
        if (grid_size_ > 1) owner[1] = j;
        AVector x = draw_near(rng, charts_[i].center, grid_size_, radius,
                              [&owner](std::size_t t) { return owner[t]; }, charts_);
        samples_.push_back({std::move(x), {}, std::make_pair(i, j)});
      }
    }
  }
  for (auto& sp : samples_) {
    sp.membership.resize(charts_.size());
    for (std::size_t i = 0; i < charts_.size(); ++i) sp.membership[i] = charts_[i].contains(sp.x);
  }
}

bool BaseRegion::contains(const AVector& x) const {
  return std::any_of(charts_.begin(), charts_.end(),
                     [&x](const Chart& c) { return c.contains(x); });
}

std::vector<std::size_t> BaseRegion::charts_at(const AVector& x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < charts_.size(); ++i) {
    if (charts_[i].contains(x)) out.push_back(i);
  }
  return out;
}

CocycleGenerator trivial_cocycle(const PModule& fiber) {
  return [p = fiber.idempotent()](std::size_t, std::size_t, const AVector&) { return p; };
}

CocycleGenerator phase_cocycle(const PModule& fiber, std::vector<double> omega) {
  return [fiber, omega = std::move(omega)](std::size_t i, std::size_t j, const AVector& x) {
    const AlgebraElement angle = phase_angle(x, omega.at(i)) - phase_angle(x, omega.at(j));
    const AlgebraElement phase =
        pointwise(angle, [](Complex a) { return std::exp(Complex(0.0, a.real())); });
    return phase_matrix(fiber, phase);
  };
}

CocycleGenerator diagonal_cocycle(const PModule& fiber, std::vector<double> scales) {
  if (scales.size() != fiber.ambient_rank()) {
    fail(ErrorCode::InvalidArgument, "diagonal cocycle: one scale per ambient coordinate");
  }
  return [fiber, scales = std::move(scales)](std::size_t i, std::size_t j, const AVector&) {
    const double power = static_cast<double>(j) - static_cast<double>(i);
    std::vector<AlgebraElement> diag;
    for (double s : scales) {
      diag.push_back(AlgebraElement::constant(fiber.grid_size(), std::pow(s, power)));
    }
    const MatrixOverA& p = fiber.idempotent();
    return p * MatrixOverA::diagonal(diag) * p;
  };
}

CocycleGenerator broken_phase_cocycle(const PModule& fiber, std::vector<double> omega,
                                      double factor) {
  return [base = phase_cocycle(fiber, std::move(omega)), factor](std::size_t i, std::size_t j,
                                                                 const AVector& x) {
    MatrixOverA g = base(i, j, x);
    if (i == 0 && j == 1) return Complex(factor) * std::move(g);
    return g;
  };
}

BundleAtlas::BundleAtlas(BaseRegion base, PModule fiber, CocycleGenerator cocycle)
    : base_(std::move(base)), fiber_(std::move(fiber)), cocycle_(std::move(cocycle)) {
  if (fiber_.grid_size() != base_.grid_size()) {
    fail(ErrorCode::InvalidArgument, "atlas: fiber and base use different grids");
  }
  if (!cocycle_) fail(ErrorCode::InvalidArgument, "atlas: empty cocycle");
}

bool BundleAtlas::in_chart(std::size_t i, const AVector& x) const {
  return i < chart_count() && base_.charts()[i].contains(x);
}

MatrixOverA BundleAtlas::transition(std::size_t i, std::size_t j, const AVector& x) const {
  if (!in_chart(i, x) || !in_chart(j, x)) {
    fail(ErrorCode::ChartMismatch,
         "transition g_" + std::to_string(i) + std::to_string(j) + " outside the overlap");
  }
  return cocycle_(i, j, x);
}

MatrixOverA BundleAtlas::raw_transition(std::size_t i, std::size_t j, const AVector& x) const {
  return cocycle_(i, j, x);
}

CocycleReport verify_cocycle(const BundleAtlas& atlas, double tol) {
  CocycleReport r;
  r.tol = tol;
  const MatrixOverA& p = atlas.fiber().idempotent();
  for (const auto& sp : atlas.base().samples()) {
    const auto charts = atlas.base().charts_at(sp.x);
    ++r.points;
    for (std::size_t i : charts) {
      r.identity_residual =
          std::max(r.identity_residual, seminorm(atlas.transition(i, i, sp.x) - p));
      for (std::size_t j : charts) {
        const MatrixOverA gij = atlas.transition(i, j, sp.x);
        for (std::size_t k : charts) {
          const MatrixOverA lhs = gij * atlas.transition(j, k, sp.x);
          r.triple_residual =
              std::max(r.triple_residual, seminorm(lhs - atlas.transition(i, k, sp.x)));
        }
      }
    }
  }
  r.passed = r.identity_residual <= tol && r.triple_residual <= tol;
  return r;
}

Section::Section(std::vector<AMap> chart_maps) : maps_(std::move(chart_maps)) {
  if (maps_.empty()) fail(ErrorCode::InvalidArgument, "section needs at least one chart");
}

Section Section::from_reference(const AtlasPtr& atlas, std::size_t ref_chart,
                                AMap reference) {
  if (ref_chart >= atlas->chart_count()) fail(ErrorCode::ChartMismatch, "no such chart");
  std::vector<AMap> maps;
  const std::size_t k = atlas->base().dim();
  for (std::size_t i = 0; i < atlas->chart_count(); ++i) {
    const Chart chart = atlas->base().charts()[i];
    maps.emplace_back(
        k, reference.codomain_dim(),
        [atlas, i, ref_chart, reference](const AVector& x) {
          if (i == ref_chart) return reference(x);
          return atlas->raw_transition(i, ref_chart, x) * reference(x);
        },
        [chart](const AVector& x) { return chart.contains(x); });
  }
  return Section(std::move(maps));
}

Section Section::scaled(const AMap& f) const {
  std::vector<AMap> maps;
  for (const auto& m : maps_) {
    maps.emplace_back(
        m.domain_dim(), m.codomain_dim(),
        [m, f](const AVector& x) { return f.scalar_at(x) * m(x); },
        [m](const AVector& x) { return m.contains(x); });
  }
  return Section(std::move(maps));
}

Section Section::scaled(const AlgebraElement& a) const {
  return scaled(AMap::constant(maps_.front().domain_dim(), AVector{a}));
}

Section operator+(const Section& a, const Section& b) {
  if (a.chart_count() != b.chart_count()) {
    fail(ErrorCode::ChartMismatch, "section sum: chart counts differ");
  }
  std::vector<AMap> maps;
  for (std::size_t i = 0; i < a.chart_count(); ++i) {
    const AMap ma = a.chart(i);
    const AMap mb = b.chart(i);
    maps.emplace_back(
        ma.domain_dim(), ma.codomain_dim(), [ma, mb](const AVector& x) { return ma(x) + mb(x); },
        [ma](const AVector& x) { return ma.contains(x); });
  }
  return Section(std::move(maps));
}

double section_compatibility_residual(const BundleAtlas& atlas, const Section& xi) {
  double worst = 0.0;
  for (const auto& sp : atlas.base().samples()) {
    const auto charts = atlas.base().charts_at(sp.x);
    for (std::size_t i : charts) {
      const AVector xi_i = xi(i, sp.x);
      for (std::size_t j : charts) {
        if (i == j) continue;
        worst = std::max(worst, seminorm(xi_i - atlas.transition(i, j, sp.x) * xi(j, sp.x)));
      }
    }
  }
  return worst;
}

PartitionReport verify_partition(const BaseRegion& base, const PartitionOfUnity& partition,
                                 double tol) {
  PartitionReport r;
  r.tol = tol;
  r.min_spectral_value = std::numeric_limits<double>::infinity();
  for (const auto& sp : base.samples()) {
    ++r.points;
    AlgebraElement sum = AlgebraElement::zero(base.grid_size());
    for (std::size_t i = 0; i < partition.size(); ++i) {
      const AlgebraElement psi = partition(i, sp.x);
      sum += psi;
      for (Complex z : psi.values()) {
        r.min_spectral_value = std::min(r.min_spectral_value, z.real());
        r.max_imaginary = std::max(r.max_imaginary, std::abs(z.imag()));
      }
      if (!base.charts()[i].contains(sp.x) && seminorm(psi) > tol) ++r.support_violations;
    }
    r.sum_residual =
        std::max(r.sum_residual, seminorm(sum - AlgebraElement::unit(base.grid_size())));
  }
  r.passed = r.sum_residual <= tol && r.min_spectral_value >= -tol && r.max_imaginary <= tol &&
             r.support_violations == 0;
  return r;
}

double bump_profile(double s, double radius) {
  const double r2 = radius * radius;
  return s < r2 ? std::exp(1.0 / (s - r2)) : 0.0;
}

PartitionOfUnity make_bump_partition(const BaseRegion& base, double delta) {
  const std::vector<Chart> charts = base.charts();
  const std::size_t n = base.grid_size();
  auto bumps = [charts, n](const AVector& x) {
    std::vector<std::vector<double>> phi(charts.size(), std::vector<double>(n));
    for (std::size_t i = 0; i < charts.size(); ++i) {
      const auto d2 = charts[i].squared_distance(x);
      for (std::size_t t = 0; t < n; ++t) phi[i][t] = bump_profile(d2[t], charts[i].bump_radius);
    }
    return phi;
  };
  auto covered = [charts, n, delta](const std::vector<std::vector<double>>& phi) {
    for (std::size_t t = 0; t < n; ++t) {
      double best = 0.0;
      for (const auto& row : phi) best = std::max(best, row[t]);
      if (best < delta) return false;
    }
    return true;
  };

  for (std::size_t s = 0; s < base.samples().size(); ++s) {
    if (!covered(bumps(base.samples()[s].x))) {
      fail(ErrorCode::NormalizerNotInvertible,
           "bump partition: covering fails at sample point " + std::to_string(s));
    }
  }

  std::vector<AMap> weights;
  for (std::size_t i = 0; i < charts.size(); ++i) {
    weights.push_back(AMap::scalar(base.dim(), [bumps, covered, i, n](const AVector& x) {
      const auto phi = bumps(x);
      if (!covered(phi)) {
        fail(ErrorCode::NormalizerNotInvertible, "bump partition: normalizer not invertible");
      }
      std::vector<Complex> out(n);
      for (std::size_t t = 0; t < n; ++t) {
        double total = 0.0;
        for (const auto& row : phi) total += row[t];
        out[t] = phi[i][t] / total;
      }
      return AlgebraElement(std::move(out));
    }));
  }
  return PartitionOfUnity(std::move(weights));
}

HermitianStructure::HermitianStructure(AtlasPtr atlas, GramField field)
    : atlas_(std::move(atlas)), field_(std::move(field)) {
  if (!atlas_ || !field_) fail(ErrorCode::InvalidArgument, "hermitian structure: missing data");
}

MatrixOverA HermitianStructure::gram(std::size_t chart, const AVector& x) const {
  if (!atlas_->in_chart(chart, x)) {
    fail(ErrorCode::ChartMismatch, "hermitian structure: point outside chart");
  }
  return field_(chart, x);
}

HermitianForm HermitianStructure::fiber_form(std::size_t chart, const AVector& x) const {
  return HermitianForm(atlas_->fiber(), gram(chart, x));
}

AlgebraElement HermitianStructure::pair(std::size_t chart, const AVector& x, const AVector& u,
                                        const AVector& w) const {
  return abundle::pair(gram(chart, x), u, w);
}

double chart_independence_residual(const HermitianStructure& structure) {
  const BundleAtlas& atlas = *structure.atlas();
  const MatrixOverA& p = atlas.fiber().idempotent();
  double worst = 0.0;
  for (const auto& sp : atlas.base().samples()) {
    const auto charts = atlas.base().charts_at(sp.x);
    for (std::size_t i : charts) {
      const MatrixOverA hi = structure.gram(i, sp.x);
      for (std::size_t j : charts) {
        if (i == j) continue;
        const MatrixOverA g = atlas.transition(i, j, sp.x);
        const MatrixOverA diff = adjoint(g) * hi * g - structure.gram(j, sp.x);
        worst = std::max(worst, seminorm(p * diff * p));
      }
    }
  }
  return worst;
}

AxiomReport verify_structure_axioms(const HermitianStructure& structure, std::size_t elements,
                                    std::uint64_t seed, double tol) {
  const BundleAtlas& atlas = *structure.atlas();
  const std::size_t m = atlas.fiber().ambient_rank();
  const std::size_t n = atlas.grid_size();
  Rng rng(seed);
  FormSamples samples;
  for (std::size_t e = 0; e < std::max<std::size_t>(elements, 3); ++e) {
    samples.elements.push_back(project(atlas.fiber(), rng.vector(m, n)));
  }
  for (int s = 0; s < 3; ++s) samples.scalars.push_back(rng.element(n));

  AxiomReport worst;
  worst.tol = tol;
  worst.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& sp : atlas.base().samples()) {
    for (std::size_t i : atlas.base().charts_at(sp.x)) {
      const AxiomReport r = verify_axioms(structure.fiber_form(i, sp.x), samples, tol);
      worst.linearity = std::max(worst.linearity, r.linearity);
      worst.symmetry = std::max(worst.symmetry, r.symmetry);
      worst.positivity = std::max(worst.positivity, r.positivity);
      worst.nondegeneracy = std::max(worst.nondegeneracy, r.nondegeneracy);
      worst.min_eigenvalue = std::min(worst.min_eigenvalue, r.min_eigenvalue);
    }
  }
  worst.linearity_ok = worst.linearity <= tol;
  worst.symmetry_ok = worst.symmetry <= tol;
  worst.positivity_ok = worst.positivity <= tol;
  worst.nondegeneracy_ok = worst.min_eigenvalue > tol;
  return worst;
}

HermitianStructure hermitian_structure_by_gluing(AtlasPtr atlas, const HermitianForm& alpha,
                                                 const PartitionOfUnity& partition) {
  if (partition.size() != atlas->chart_count()) {
    fail(ErrorCode::ChartMismatch, "gluing: one partition weight per chart required");
  }
  const MatrixOverA h_alpha = alpha.gram();
  auto field = [a = atlas, h_alpha, partition](std::size_t j, const AVector& x) {
    MatrixOverA h = MatrixOverA::zero(h_alpha.rows(), h_alpha.cols(), h_alpha.grid_size());
    for (std::size_t i = 0; i < partition.size(); ++i) {
      // psi_i vanishes off U_i.
      if (!a->in_chart(i, x)) continue;
      const MatrixOverA g = a->transition(i, j, x);
      h += partition(i, x) * (adjoint(g) * h_alpha * g);
    }
    return HermitianForm(a->fiber(), h).gram();
  };
  return HermitianStructure(std::move(atlas), field);
}

double reduction_residual(const BundleAtlas& atlas, const HermitianForm& alpha) {
  double worst = 0.0;
  for (const auto& sp : atlas.base().samples()) {
    const auto charts = atlas.base().charts_at(sp.x);
    for (std::size_t i : charts) {
      for (std::size_t j : charts) {
        worst = std::max(worst, form_unitarity_residual(atlas.transition(j, i, sp.x), alpha));
      }
    }
  }
  return worst;
}

HermitianStructure hermitian_structure_by_reduction(AtlasPtr atlas, const HermitianForm& alpha,
                                                    double tol) {
  const auto& samples = atlas->base().samples();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto charts = atlas->base().charts_at(samples[s].x);
    for (std::size_t i : charts) {
      for (std::size_t j : charts) {
        const double res = form_unitarity_residual(atlas->transition(j, i, samples[s].x), alpha);
        if (res > tol) {
          fail(ErrorCode::NotReduced, "transition (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ") at sample " +
                                          std::to_string(s) + " is not form-unitary: residual " +
                                          std::to_string(res));
        }
      }
    }
  }
  const MatrixOverA h_alpha = alpha.gram();
  return HermitianStructure(std::move(atlas),
                            [h_alpha](std::size_t, const AVector&) { return h_alpha; });
}

std::vector<Section> frame_sections(const AtlasPtr& atlas, std::size_t chart,
                                    const std::vector<AVector>& basis) {
  std::vector<Section> out;
  for (const auto& b : basis) {
    if (!atlas->fiber().contains(b)) {
      fail(ErrorCode::ModuleMismatch, "frame vector does not lie in the fiber");
    }
    out.push_back(Section::from_reference(atlas, chart, AMap::constant(atlas->base().dim(), b)));
  }
  return out;
}

AVector HomTrivialization::apply(const TangentVector& v) const {
  return linear * v.h + skew * star(v.k);
}

HomTrivialization lhom_trivialization(const BundleAtlas& atlas, std::size_t chart,
                                      const AVector& x, const FiberwiseMap& map) {
  if (!atlas.in_chart(chart, x)) fail(ErrorCode::ChartMismatch, "point outside chart");
  const std::size_t k = atlas.base().dim();
  const std::size_t n = atlas.grid_size();
  const AVector zero = AVector::zero(k, n);
  std::vector<AVector> linear_cols;
  std::vector<AVector> skew_cols;
  for (std::size_t l = 0; l < k; ++l) {
    const AVector e = AVector::basis(k, l, n);
    linear_cols.push_back(map({e, zero}));
    skew_cols.push_back(map({zero, e}));
  }
  return {chart, x, MatrixOverA::from_columns(linear_cols), MatrixOverA::from_columns(skew_cols)};
}

HomTrivialization transport(const BundleAtlas& atlas, const HomTrivialization& hom,
                            std::size_t target_chart) {
  const MatrixOverA g = atlas.transition(target_chart, hom.chart, hom.point);
  return {target_chart, hom.point, g * hom.linear, g * hom.skew};
}

}  // namespace abundle
