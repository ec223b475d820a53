#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "abundle/algebra.hpp"

namespace abundle {

inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kDefaultCalculusTol = 1e-6;

/// A map from an open region of A^k into A^m (m = 1 for A-valued maps).
///
/// Evaluation must be deterministic and re-entrant. Points outside the domain
/// predicate raise DomainEscape.
class AMap {
 public:
  using Rule = std::function<AVector(const AVector&)>;
  using Domain = std::function<bool(const AVector&)>;

  AMap() = default;
  AMap(std::size_t domain_dim, std::size_t codomain_dim, Rule rule, Domain domain = {});

  // Lifts a scalar rule A^k -> A.
  static AMap scalar(std::size_t domain_dim,
                     std::function<AlgebraElement(const AVector&)> rule,
                     Domain domain = {});
  static AMap constant(std::size_t domain_dim, AVector value);

  std::size_t domain_dim() const noexcept { return domain_dim_; }
  std::size_t codomain_dim() const noexcept { return codomain_dim_; }
  bool contains(const AVector& x) const;

  AVector operator()(const AVector& x) const;
  // First component; convenient for A-valued maps.
  AlgebraElement scalar_at(const AVector& x) const;

  AMap restricted(Domain domain) const;

 private:
  std::size_t domain_dim_ = 0;
  std::size_t codomain_dim_ = 0;
  Rule rule_;
  Domain domain_;
};

AMap compose(const AMap& outer, const AMap& inner);

/// Tangent vector at a point of an open region of A^k, modelled as a pair in
/// A^k x (A^k)_*. The second slot carries the involution-twisted action.
struct TangentVector {
  AVector h;
  AVector k;

  static TangentVector diagonal(const AVector& h) { return {h, h}; }
};

// a.(h, k) = (a h, a* k)
TangentVector act(const AlgebraElement& a, const TangentVector& v);
TangentVector operator+(const TangentVector& a, const TangentVector& b);

// Central difference (f(x + s h) - f(x - s h)) / 2s.
AVector directional_derivative(const AMap& f, const AVector& x, const AVector& h,
                               double step = kDefaultStep);

// Values of the linear and skew-linear parts of Df(x) at a direction h.
struct LSValue {
  AVector linear;
  AVector skew;
};

LSValue differential_ls(const AMap& f, const AVector& x, const AVector& h,
                        double step = kDefaultStep);

// Lf(x)(v.h) + Sf(x)(v.k)
AVector tangent_apply(const AMap& f, const AVector& x, const TangentVector& v,
                      double step = kDefaultStep);
AlgebraElement tangent_apply_scalar(const AMap& f, const AVector& x, const TangentVector& v,
                                    double step = kDefaultStep);

struct LinearitySplitReport {
  double linear_residual = 0.0;  // sup |L(a h) - a L(h)|
  double skew_residual = 0.0;    // sup |S(a h) - a* S(h)|
  double tol = 0.0;
  bool passed = false;
};

// Never throws for evaluation failures inside the domain; a map whose
// differential does not split reports passed = false.
LinearitySplitReport check_linearity_split(const AMap& f, const AVector& x,
                                           const std::vector<AVector>& directions,
                                           const std::vector<AlgebraElement>& scalars,
                                           double tol = kDefaultCalculusTol,
                                           double step = kDefaultStep);

}  // namespace abundle
