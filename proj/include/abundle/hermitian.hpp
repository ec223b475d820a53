#pragma once

#include <cstddef>
#include <vector>

#include "abundle/algebra.hpp"
#include "abundle/pmodule.hpp"

namespace abundle {

inline constexpr double kAxiomTol = 1e-9;
inline constexpr double kEigenFloor = 1e-10;

/// An A-valued sesquilinear form on a projective module,
///   evaluate(x, y) = sum_ij star(y_i) H_ij x_j,
/// linear in the first slot. The stored Gram matrix is p H p + (1 - p): the
/// identity padding on the complement does not affect values on module
/// elements and keeps the pointwise spectrum away from zero off the range.
class HermitianForm {
 public:
  // Throws InvalidArgument on a shape mismatch or if H* != H within 1e-12.
  HermitianForm(PModule module, const MatrixOverA& gram);

  const PModule& module() const noexcept { return module_; }
  const MatrixOverA& gram() const noexcept { return gram_; }

 private:
  PModule module_;
  MatrixOverA gram_;
};

// Unchecked pairing on raw coordinate vectors.
AlgebraElement pair(const MatrixOverA& gram, const AVector& x, const AVector& y);

AlgebraElement evaluate(const HermitianForm& form, const ModuleElement& x, const ModuleElement& y);

struct AxiomReport {
  double linearity = 0.0;      // (i)   sup |b(a x + y, z) - a b(x, z) - b(y, z)|
  double symmetry = 0.0;       // (ii)  sup |b(y, x) - b(x, y)*|
  double positivity = 0.0;     // (iii) worst violation of b(x, x) >= 0
  double nondegeneracy = 0.0;  // (iv)  max(0, tol - smallest compressed eigenvalue)
  double min_eigenvalue = 0.0;
  double tol = 0.0;
  bool linearity_ok = false;
  bool symmetry_ok = false;
  bool positivity_ok = false;
  bool nondegeneracy_ok = false;

  bool passed() const {
    return linearity_ok && symmetry_ok && positivity_ok && nondegeneracy_ok;
  }
};

struct FormSamples {
  std::vector<ModuleElement> elements;
  std::vector<AlgebraElement> scalars;
};

AxiomReport verify_axioms(const HermitianForm& form, const FormSamples& samples,
                          double tol = kAxiomTol);

HermitianForm standard_form(const PModule& module);

// Smallest eigenvalue of the (padded) Gram matrix over all grid points.
double min_pointwise_eigenvalue(const MatrixOverA& hermitian);

// Pointwise H^{-1/2} via hermitian eigendecomposition. Throws Degenerate if an
// eigenvalue is <= floor.
MatrixOverA inverse_sqrt(const MatrixOverA& hermitian, double floor = kEigenFloor);

// An automorphism f with form(f x, f y) = standard(x, y).
ModuleMap isometry_to_standard(const HermitianForm& form, double tol = kEigenFloor);

// Modified Gram-Schmidt in the A-valued inner product. Throws
// PivotNotInvertible (message carries the 1-based step) when a pivot
// form(v, v) is not invertible.
std::vector<ModuleElement> gram_schmidt(const std::vector<ModuleElement>& frame,
                                        const HermitianForm& form, double tol = kEigenFloor);

// True iff G* H G = H on the range of p within tol. Throws NotAutomorphism if g
// is not invertible on the range of p.
bool is_form_unitary(const ModuleMap& g, const HermitianForm& form, double tol);

// sup seminorm of p (G* H G - H) p, the residual behind is_form_unitary.
double form_unitarity_residual(const MatrixOverA& g, const HermitianForm& form);

}  // namespace abundle
