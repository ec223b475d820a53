#include "abundle/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "abundle/error.hpp"

namespace abundle {

namespace {

constexpr double kHermitianTol = 1e-12;

MatrixOverA pad(const PModule& module, const MatrixOverA& gram) {
  const MatrixOverA& p = module.idempotent();
  const MatrixOverA one = MatrixOverA::identity(p.rows(), p.grid_size());
  return p * gram * p + (one - p);
}

}  // namespace

HermitianForm::HermitianForm(PModule module, const MatrixOverA& gram)
    : module_(std::move(module)) {
  if (gram.rows() != module_.ambient_rank() || gram.cols() != module_.ambient_rank() ||
      gram.grid_size() != module_.grid_size()) {
    fail(ErrorCode::InvalidArgument, "gram matrix shape does not match the module");
  }
  if (seminorm(adjoint(gram) - gram) > kHermitianTol) {
    fail(ErrorCode::InvalidArgument, "gram matrix is not hermitian");
  }
  gram_ = pad(module_, gram);
}

AlgebraElement pair(const MatrixOverA& gram, const AVector& x, const AVector& y) {
  const AVector hx = gram * x;
  AlgebraElement acc = AlgebraElement::zero(gram.grid_size());
  for (std::size_t i = 0; i < hx.size(); ++i) acc += star(y[i]) * hx[i];
  return acc;
}

AlgebraElement evaluate(const HermitianForm& form, const ModuleElement& x, const ModuleElement& y) {
  if (!(x.module() == form.module()) || !(y.module() == form.module())) {
    fail(ErrorCode::ModuleMismatch, "evaluate: element is not in the form's module");
  }
  return pair(form.gram(), x.coords(), y.coords());
}

double min_pointwise_eigenvalue(const MatrixOverA& hermitian) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < hermitian.grid_size(); ++t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian.at(t),
                                                           Eigen::EigenvaluesOnly);
    lo = std::min(lo, solver.eigenvalues().minCoeff());
  }
  return lo;
}

AxiomReport verify_axioms(const HermitianForm& form, const FormSamples& samples, double tol) {
  AxiomReport r;
  r.tol = tol;
  const auto& xs = samples.elements;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const AVector& x = xs[i].coords();
    const AVector& y = xs[(i + 1) % xs.size()].coords();
    const AVector& z = xs[(i + 2) % xs.size()].coords();
    for (const auto& a : samples.scalars) {
      const AlgebraElement lhs = pair(form.gram(), a * x + y, z);
      const AlgebraElement rhs = a * pair(form.gram(), x, z) + pair(form.gram(), y, z);
      r.linearity = std::max(r.linearity, seminorm(lhs - rhs));
    }
    const AlgebraElement xy = pair(form.gram(), x, y);
    const AlgebraElement yx = pair(form.gram(), y, x);
    r.symmetry = std::max(r.symmetry, seminorm(yx - star(xy)));
    const AlgebraElement xx = pair(form.gram(), x, x);
    for (Complex v : xx.values()) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        r.positivity = std::numeric_limits<double>::infinity();
      }
      r.positivity = std::max({r.positivity, std::abs(v.imag()), -v.real()});
    }
  }
  r.min_eigenvalue = min_pointwise_eigenvalue(form.gram());
  r.nondegeneracy = std::isfinite(r.min_eigenvalue)
                        ? std::max(0.0, tol - r.min_eigenvalue)
                        : std::numeric_limits<double>::infinity();
  r.linearity_ok = r.linearity <= tol;
  r.symmetry_ok = r.symmetry <= tol;
  r.positivity_ok = r.positivity <= tol;
  r.nondegeneracy_ok = r.min_eigenvalue > tol;
  return r;
}

HermitianForm standard_form(const PModule& module) {
  return HermitianForm(module, MatrixOverA::identity(module.ambient_rank(), module.grid_size()));
}

MatrixOverA inverse_sqrt(const MatrixOverA& hermitian, double floor) {
  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(hermitian.grid_size());
  for (std::size_t t = 0; t < hermitian.grid_size(); ++t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian.at(t));
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    if (lambda.minCoeff() <= floor) {
      fail(ErrorCode::Degenerate, "eigenvalue " + std::to_string(lambda.minCoeff()) +
                                      " at grid point " + std::to_string(t));
    }
    const Eigen::VectorXcd scale = lambda.cwiseSqrt().cwiseInverse().cast<Complex>();
    const Eigen::MatrixXcd& u = solver.eigenvectors();
    mats.push_back(u * scale.asDiagonal() * u.adjoint());
  }
  return MatrixOverA::from_pointwise(mats);
}

ModuleMap isometry_to_standard(const HermitianForm& form, double tol) {
  // H^{-1/2} commutes with p because the padded H does.
  const MatrixOverA f = inverse_sqrt(form.gram(), tol) * form.module().idempotent();
  return ModuleMap(form.module(), form.module(), f);
}

std::vector<ModuleElement> gram_schmidt(const std::vector<ModuleElement>& frame,
                                        const HermitianForm& form, double tol) {
  std::vector<ModuleElement> out;
  out.reserve(frame.size());
  for (std::size_t step = 0; step < frame.size(); ++step) {
    if (!(frame[step].module() == form.module())) {
      fail(ErrorCode::ModuleMismatch, "gram_schmidt: frame element outside the form's module");
    }
    AVector v = frame[step].coords();
    for (const auto& e : out) {
      v -= pair(form.gram(), v, e.coords()) * e.coords();
    }
    const AlgebraElement pivot = pair(form.gram(), v, v);
    if (!is_positive(pivot, tol) || min_modulus(pivot) <= tol) {
      fail(ErrorCode::PivotNotInvertible,
           "gram_schmidt: pivot not invertible at step " + std::to_string(step + 1));
    }
    const AlgebraElement scale = invert(sqrt_positive(pivot, tol), tol);
    out.emplace_back(form.module(), scale * v);
  }
  return out;
}

double form_unitarity_residual(const MatrixOverA& g, const HermitianForm& form) {
  const MatrixOverA& p = form.module().idempotent();
  const MatrixOverA& h = form.gram();
  return seminorm(p * (adjoint(g) * h * g - h) * p);
}

bool is_form_unitary(const ModuleMap& g, const HermitianForm& form, double tol) {
  if (!(g.source() == form.module()) || !(g.target() == form.module())) {
    fail(ErrorCode::ModuleMismatch, "is_form_unitary: map does not act on the form's module");
  }
  const MatrixOverA& p = form.module().idempotent();
  const MatrixOverA one = MatrixOverA::identity(p.rows(), p.grid_size());
  try {
    // Invertible on range p iff G + (1 - p) is invertible on A^m.
    (void)inverse(g.matrix() + (one - p), 1e-12);
  } catch (const Error&) {
    fail(ErrorCode::NotAutomorphism, "is_form_unitary: map is not invertible on the module");
  }
  return form_unitarity_residual(g.matrix(), form) <= tol;
}

}  // namespace abundle
