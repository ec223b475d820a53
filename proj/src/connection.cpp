#include "abundle/connection.hpp"

#include <algorithm>
#include <string>

#include "abundle/error.hpp"
#include "abundle/hermitian.hpp"

namespace abundle {

ConnectionOperator::ConnectionOperator(AtlasPtr atlas, Rule rule, AMap::Domain domain)
    : atlas_(std::move(atlas)), rule_(std::move(rule)), domain_(std::move(domain)) {
  if (!atlas_ || !rule_) fail(ErrorCode::InvalidArgument, "connection: missing atlas or rule");
}

bool ConnectionOperator::defined_at(const AVector& x) const { return !domain_ || domain_(x); }

AVector ConnectionOperator::operator()(const Section& xi, const AVector& x,
                                       const TangentVector& v, std::size_t chart) const {
  if (!atlas_->in_chart(chart, x)) {
    fail(ErrorCode::ChartMismatch, "connection: point outside output chart " +
                                       std::to_string(chart));
  }
  if (!defined_at(x)) fail(ErrorCode::ChartMismatch, "connection: point outside its domain");
  return rule_(xi, x, v, chart);
}

HomTrivialization ConnectionOperator::at(const Section& xi, const AVector& x,
                                         std::size_t chart) const {
  return lhom_trivialization(*atlas_, chart, x,
                             [&](const TangentVector& v) { return (*this)(xi, x, v, chart); });
}

ConnectionOperator ConnectionOperator::scaled(Complex z) const {
  return ConnectionOperator(
      atlas_,
      [rule = rule_, z](const Section& xi, const AVector& x, const TangentVector& v,
                        std::size_t c) { return z * rule(xi, x, v, c); },
      domain_);
}

ConnectionOperator local_trivial_connection(AtlasPtr atlas, std::size_t chart,
                                            const std::vector<AVector>& basis, double step) {
  if (!atlas->fiber().is_free()) {
    fail(ErrorCode::FrameUnavailable, "local connection: fiber is not free");
  }
  if (chart >= atlas->chart_count()) fail(ErrorCode::ChartMismatch, "no such chart");
  const std::size_t m = atlas->fiber().ambient_rank();
  if (basis.size() != m) fail(ErrorCode::FrameUnavailable, "local connection: basis size != rank");
  const MatrixOverA b = MatrixOverA::from_columns(basis);
  MatrixOverA b_inv;
  try {
    b_inv = inverse(b, 1e-12);
  } catch (const Error&) {
    fail(ErrorCode::FrameUnavailable, "local connection: basis is singular");
  }
  const Chart domain_chart = atlas->base().charts()[chart];
  const std::size_t k = atlas->base().dim();
  auto rule = [a = atlas, chart, basis, b_inv, step, k, m](const Section& xi, const AVector& x,
                                                           const TangentVector& v,
                                                           std::size_t out_chart) {
    const AMap& xi_i = xi.chart(chart);
    AVector sum = AVector::zero(m, x.grid_size());
    for (std::size_t j = 0; j < m; ++j) {
      // Component of xi_i along b_j.
      const AMap component = AMap::scalar(
          k, [xi_i, b_inv, j](const AVector& y) { return (b_inv * xi_i(y))[j]; },
          [xi_i](const AVector& y) { return xi_i.contains(y); });
      sum += tangent_apply_scalar(component, x, v, step) * basis[j];
    }
    if (out_chart == chart) return sum;
    return a->transition(out_chart, chart, x) * sum;
  };
  return ConnectionOperator(atlas, rule,
                            [domain_chart](const AVector& x) { return domain_chart.contains(x); });
}

ConnectionOperator glue_connections(const PartitionOfUnity& partition,
                                    std::vector<ConnectionOperator> locals) {
  if (locals.empty()) fail(ErrorCode::InvalidArgument, "glue: no local connections");
  if (locals.size() != partition.size()) {
    fail(ErrorCode::ChartMismatch, "glue: one local connection per partition weight required");
  }
  const AtlasPtr atlas = locals.front().atlas();
  auto rule = [partition, locals](const Section& xi, const AVector& x, const TangentVector& v,
                                  std::size_t chart) {
    const std::size_t m = locals.front().atlas()->fiber().ambient_rank();
    AVector sum = AVector::zero(m, x.grid_size());
    for (std::size_t i = 0; i < locals.size(); ++i) {
      // psi_i vanishes wherever D_i is undefined.
      if (!locals[i].defined_at(x)) continue;
      const AlgebraElement psi = partition(i, x);
      if (seminorm(psi) == 0.0) continue;
      sum += psi * locals[i](xi, x, v, chart);
    }
    return sum;
  };
  return ConnectionOperator(atlas, rule);
}

AtlasPtr whitney_complement_atlas(const AtlasPtr& atlas) {
  const PModule& fiber = atlas->fiber();
  const std::size_t m = fiber.ambient_rank();
  const std::size_t n = fiber.grid_size();
  const MatrixOverA other = complement(fiber).idempotent();
  // Transitions of the sum bundle in the identification M + N = A^m.
  CocycleGenerator sum_cocycle = [atlas, other](std::size_t i, std::size_t j, const AVector& x) {
    return atlas->raw_transition(i, j, x) + other;
  };
  return std::make_shared<const BundleAtlas>(atlas->base(), PModule::free(m, n),
                                             std::move(sum_cocycle));
}

ConnectionOperator grassmann_extend(AtlasPtr atlas, const ConnectionOperator& sum_connection) {
  const PModule& fiber = atlas->fiber();
  const WhitneySum ws = whitney_sum(fiber, complement(fiber));
  const ModuleMap collapse = collapse_to_ambient(fiber);
  // I = collapse o inject_first, Pr = project_first o collapse^{-1}; collapse
  // is a partial isometry, so its inverse on A^m is its adjoint.
  const MatrixOverA inject = collapse.matrix() * ws.inject_first.matrix();
  const MatrixOverA proj = ws.project_first.matrix() * adjoint(collapse.matrix());
  auto rule = [sum_connection, inject, proj](const Section& xi, const AVector& x,
                                             const TangentVector& v, std::size_t chart) {
    std::vector<AMap> maps;
    for (std::size_t i = 0; i < xi.chart_count(); ++i) {
      const AMap xi_i = xi.chart(i);
      maps.emplace_back(
          xi_i.domain_dim(), xi_i.codomain_dim(),
          [xi_i, inject](const AVector& y) { return inject * xi_i(y); },
          [xi_i](const AVector& y) { return xi_i.contains(y); });
    }
    return proj * sum_connection(Section(std::move(maps)), x, v, chart);
  };
  return ConnectionOperator(std::move(atlas), rule);
}

ConnectionOperator frame_connection(const AtlasPtr& atlas, const HermitianForm& alpha,
                                    const PartitionOfUnity& partition, double step) {
  const PModule& fiber = atlas->fiber();
  const std::size_t m = fiber.ambient_rank();
  const std::size_t n = fiber.grid_size();
  const bool free_fiber = fiber.is_free();
  const AtlasPtr sum_atlas = free_fiber ? atlas : whitney_complement_atlas(atlas);
  // alpha + alpha_o on the sum, with alpha_o the standard form on the complement.
  const HermitianForm sum_form =
      free_fiber ? alpha : HermitianForm(PModule::free(m, n), alpha.gram());

  std::vector<ModuleElement> canonical;
  for (std::size_t j = 0; j < m; ++j) {
    canonical.emplace_back(sum_form.module(), AVector::basis(m, j, n));
  }
  std::vector<AVector> basis;
  for (const auto& e : gram_schmidt(canonical, sum_form)) basis.push_back(e.coords());

  std::vector<ConnectionOperator> locals;
  for (std::size_t i = 0; i < sum_atlas->chart_count(); ++i) {
    locals.push_back(local_trivial_connection(sum_atlas, i, basis, step));
  }
  ConnectionOperator glued = glue_connections(partition, std::move(locals));
  if (free_fiber) return glued;
  return grassmann_extend(atlas, glued);
}

IdentityReport verify_leibniz(const ConnectionOperator& d, const Section& xi, const AMap& f,
                              const std::vector<ConnectionSample>& samples, double tol,
                              double step) {
  IdentityReport r;
  r.tol = tol;
  const Section f_xi = xi.scaled(f);
  for (const auto& s : samples) {
    const AVector lhs = d(f_xi, s.x, s.v, s.chart);
    const AVector rhs = tangent_apply_scalar(f, s.x, s.v, step) * xi(s.chart, s.x) +
                        f.scalar_at(s.x) * d(xi, s.x, s.v, s.chart);
    const double res = seminorm(lhs - rhs);
    r.residuals.push_back(res);
    r.residual = std::max(r.residual, res);
  }
  r.passed = !samples.empty() && r.residual <= tol;
  return r;
}

namespace {

IdentityReport compatibility_sweep(const ConnectionOperator& d,
                                   const HermitianStructure& structure, const Section& xi,
                                   const Section& eta,
                                   const std::vector<ConnectionSample>& samples, double tol,
                                   bool diagonal, double step) {
  IdentityReport r;
  r.tol = tol;
  const std::size_t k = structure.atlas()->base().dim();
  for (const auto& s : samples) {
    const TangentVector v = diagonal ? TangentVector::diagonal(s.v.h) : s.v;
    const std::size_t c = s.chart;
    const AlgebraElement lhs =
        structure.pair(c, s.x, d(xi, s.x, v, c), eta(c, s.x)) +
        structure.pair(c, s.x, xi(c, s.x), d(eta, s.x, v, c));
    const AMap pairing = AMap::scalar(
        k,
        [&structure, &xi, &eta, c](const AVector& y) {
          return structure.pair(c, y, xi(c, y), eta(c, y));
        },
        [&structure, c](const AVector& y) { return structure.atlas()->in_chart(c, y); });
    const AlgebraElement rhs = tangent_apply_scalar(pairing, s.x, v, step);
    const double res = seminorm(lhs - rhs);
    r.residuals.push_back(res);
    r.residual = std::max(r.residual, res);
  }
  r.passed = !samples.empty() && r.residual <= tol;
  return r;
}

}  // namespace

CompatibilityReport verify_compatibility(const ConnectionOperator& d,
                                         const HermitianStructure& structure, const Section& xi,
                                         const Section& eta,
                                         const std::vector<ConnectionSample>& samples, double tol,
                                         bool diagonal_only, double step) {
  if (d.atlas().get() != structure.atlas().get() &&
      !(d.atlas()->fiber() == structure.atlas()->fiber())) {
    fail(ErrorCode::ModuleMismatch, "compatibility: connection and structure on different bundles");
  }
  CompatibilityReport r;
  r.diagonal_only = diagonal_only;
  r.diagonal = compatibility_sweep(d, structure, xi, eta, samples, tol, true, step);
  r.generic = compatibility_sweep(d, structure, xi, eta, samples, tol, false, step);
  r.passed = r.diagonal.passed && (diagonal_only || r.generic.passed);
  return r;
}

}  // namespace abundle
