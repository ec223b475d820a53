#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "abundle/bundle.hpp"
#include "abundle/calculus.hpp"

namespace abundle {

inline constexpr double kConnectionTol = 1e-6;

/// A connection given by its action: (section, x, v, chart) maps to the value
/// D xi(x)(v), expressed in the coordinates of `chart`.
class ConnectionOperator {
 public:
  using Rule = std::function<AVector(const Section& xi, const AVector& x, const TangentVector& v,
                                     std::size_t chart)>;

  // `domain` restricts where the rule is defined (a local connection lives
  // on one chart); empty means the whole base.
  ConnectionOperator(AtlasPtr atlas, Rule rule, AMap::Domain domain = {});

  const AtlasPtr& atlas() const noexcept { return atlas_; }
  bool defined_at(const AVector& x) const;

  // Throws ChartMismatch if x is not in the output chart or the domain.
  AVector operator()(const Section& xi, const AVector& x, const TangentVector& v,
                     std::size_t chart) const;

  // The value D xi(x) as a hom-bundle element in `chart`.
  HomTrivialization at(const Section& xi, const AVector& x, std::size_t chart) const;

  ConnectionOperator scaled(Complex z) const;

 private:
  AtlasPtr atlas_;
  Rule rule_;
  AMap::Domain domain_;
};

// D_i xi = sum_j (T xi_ij) eps_ij on U_i, where xi_i = sum_j xi_ij b_j.
// Throws FrameUnavailable if the fiber is not free or the basis is singular.
ConnectionOperator local_trivial_connection(AtlasPtr atlas, std::size_t chart,
                                            const std::vector<AVector>& basis,
                                            double step = kDefaultStep);

// D xi = sum_i psi_i D_i xi.
ConnectionOperator glue_connections(const PartitionOfUnity& partition,
                                    std::vector<ConnectionOperator> locals);

// The bundle with fiber A^m obtained by adding the trivial complement bundle
// to a bundle with fiber p A^m: transitions g + (1 - p).
AtlasPtr whitney_complement_atlas(const AtlasPtr& atlas);

// D xi(x) = Pr o D~(I o xi)(x), with I and Pr the canonical injection into and
// projection from M + (1 - p)A^m = A^m.
ConnectionOperator grassmann_extend(AtlasPtr atlas, const ConnectionOperator& sum_connection);

// The connection built from orthonormal frames of alpha in every chart,
// glued by the partition; for non-free fibers, built on the Whitney sum and
// compressed back.
ConnectionOperator frame_connection(const AtlasPtr& atlas, const HermitianForm& alpha,
                                    const PartitionOfUnity& partition,
                                    double step = kDefaultStep);

struct ConnectionSample {
  AVector x;
  TangentVector v;
  std::size_t chart = 0;
};

struct IdentityReport {
  double residual = 0.0;
  std::vector<double> residuals;
  double tol = 0.0;
  bool passed = false;
};

// sup |D(f xi)(x)(v) - Tf(v) xi(x) - f(x) D xi(x)(v)|
IdentityReport verify_leibniz(const ConnectionOperator& d, const Section& xi, const AMap& f,
                              const std::vector<ConnectionSample>& samples,
                              double tol = kConnectionTol, double step = kDefaultStep);

struct CompatibilityReport {
  IdentityReport diagonal;  // v = (h, h)
  IdentityReport generic;   // v = (h, k) as sampled
  bool diagonal_only = true;
  bool passed = false;
};

// g(D xi(v), eta) + g(xi, D eta(v)) against T(g(xi, eta))(v).
CompatibilityReport verify_compatibility(const ConnectionOperator& d,
                                         const HermitianStructure& structure, const Section& xi,
                                         const Section& eta,
                                         const std::vector<ConnectionSample>& samples,
                                         double tol = kConnectionTol, bool diagonal_only = true,
                                         double step = kDefaultStep);

}  // namespace abundle
