#include "abundle/calculus.hpp"

#include <algorithm>

#include "abundle/error.hpp"

namespace abundle {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

AMap::AMap(std::size_t domain_dim, std::size_t codomain_dim, Rule rule, Domain domain)
    : domain_dim_(domain_dim),
      codomain_dim_(codomain_dim),
      rule_(std::move(rule)),
      domain_(std::move(domain)) {
  if (!rule_) fail(ErrorCode::InvalidArgument, "AMap: empty rule");
}

AMap AMap::scalar(std::size_t domain_dim, std::function<AlgebraElement(const AVector&)> rule,
                  Domain domain) {
  return AMap(
      domain_dim, 1, [rule = std::move(rule)](const AVector& x) { return AVector{rule(x)}; },
      std::move(domain));
}

AMap AMap::constant(std::size_t domain_dim, AVector value) {
  const std::size_t m = value.size();
  return AMap(domain_dim, m, [value = std::move(value)](const AVector&) { return value; });
}

bool AMap::contains(const AVector& x) const {
  return x.size() == domain_dim_ && (!domain_ || domain_(x));
}

AVector AMap::operator()(const AVector& x) const {
  if (x.size() != domain_dim_) {
    fail(ErrorCode::InvalidArgument, "AMap: point has dimension " + std::to_string(x.size()) +
                                         ", expected " + std::to_string(domain_dim_));
  }
  if (domain_ && !domain_(x)) fail(ErrorCode::DomainEscape, "AMap: point outside domain");
  AVector y = rule_(x);
  if (y.size() != codomain_dim_) {
    fail(ErrorCode::InvalidArgument, "AMap: rule returned wrong codomain dimension");
  }
  return y;
}

AlgebraElement AMap::scalar_at(const AVector& x) const { return (*this)(x)[0]; }

AMap AMap::restricted(Domain domain) const {
  AMap out = *this;
  if (!domain_) {
    out.domain_ = std::move(domain);
  } else {
    out.domain_ = [a = domain_, b = std::move(domain)](const AVector& x) { return a(x) && b(x); };
  }
  return out;
}

AMap compose(const AMap& outer, const AMap& inner) {
  if (outer.domain_dim() != inner.codomain_dim()) {
    fail(ErrorCode::InvalidArgument, "compose: dimension mismatch");
  }
  return AMap(
      inner.domain_dim(), outer.codomain_dim(),
      [outer, inner](const AVector& x) { return outer(inner(x)); },
      [outer, inner](const AVector& x) { return inner.contains(x) && outer.contains(inner(x)); });
}

TangentVector act(const AlgebraElement& a, const TangentVector& v) {
  return {a * v.h, star(a) * v.k};
}

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  return {a.h + b.h, a.k + b.k};
}

AVector directional_derivative(const AMap& f, const AVector& x, const AVector& h, double step) {
  if (h.size() != x.size()) fail(ErrorCode::InvalidArgument, "direction dimension mismatch");
  const AVector forward = x + Complex(step) * h;
  const AVector backward = x - Complex(step) * h;
  if (!f.contains(forward) || !f.contains(backward)) {
    fail(ErrorCode::DomainEscape, "directional_derivative: stencil leaves the domain");
  }
  AVector diff = f(forward) - f(backward);
  return Complex(1.0 / (2.0 * step)) * diff;
}

LSValue differential_ls(const AMap& f, const AVector& x, const AVector& h, double step) {
  const AVector d_h = directional_derivative(f, x, h, step);
  const AVector d_ih = directional_derivative(f, x, kI * h, step);
  const AVector i_d_ih = kI * d_ih;
  return {Complex(0.5) * (d_h - i_d_ih), Complex(0.5) * (d_h + i_d_ih)};
}

AVector tangent_apply(const AMap& f, const AVector& x, const TangentVector& v, double step) {
  return differential_ls(f, x, v.h, step).linear + differential_ls(f, x, v.k, step).skew;
}

AlgebraElement tangent_apply_scalar(const AMap& f, const AVector& x, const TangentVector& v,
                                    double step) {
  return tangent_apply(f, x, v, step)[0];
}

LinearitySplitReport check_linearity_split(const AMap& f, const AVector& x,
                                           const std::vector<AVector>& directions,
                                           const std::vector<AlgebraElement>& scalars, double tol,
                                           double step) {
  LinearitySplitReport report;
  report.tol = tol;
  for (const auto& h : directions) {
    const LSValue base = differential_ls(f, x, h, step);
    for (const auto& a : scalars) {
      const LSValue scaled = differential_ls(f, x, a * h, step);
      report.linear_residual =
          std::max(report.linear_residual, seminorm(scaled.linear - a * base.linear));
      report.skew_residual =
          std::max(report.skew_residual, seminorm(scaled.skew - star(a) * base.skew));
    }
  }
  report.passed = report.linear_residual <= tol && report.skew_residual <= tol;
  return report;
}

}  // namespace abundle
