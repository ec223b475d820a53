#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abundle/algebra.hpp"
#include "abundle/calculus.hpp"
#include "abundle/hermitian.hpp"
#include "abundle/pmodule.hpp"

namespace abundle {

inline constexpr double kCocycleTol = 1e-10;
inline constexpr double kPartitionTol = 1e-12;
inline constexpr double kCoveringDelta = 1e-6;

/// Coordinate-proximity chart U = {x : ||x(t) - c(t)|| < chart_radius for
/// some grid point t}, where ||.|| is the euclidean norm on C^k. Bump cutoffs
/// vanish from bump_radius < chart_radius onward.
struct Chart {
  AVector center;
  double bump_radius = 1.2;
  double chart_radius = 1.3;

  bool contains(const AVector& x) const;
  // ||x(t) - c(t)||^2 at every grid point.
  std::vector<double> squared_distance(const AVector& x) const;
};

struct SamplePoint {
  AVector x;
  std::vector<bool> membership;
  // Set for points drawn for the overlap of two charts.
  std::optional<std::pair<std::size_t, std::size_t>> overlap;
};

struct SamplePlanSpec {
  std::uint64_t seed = 7;
  std::size_t per_chart = 64;
  std::size_t per_overlap = 32;
  // Sampled values stay within this distance of some chart center.
  double value_radius = 1.1;
};

/// Open region of A^k covered by finitely many charts, with an explicit
/// sample plan on which all bundle-level identities are verified.
class BaseRegion {
 public:
  BaseRegion(std::size_t dim, std::size_t grid_size, std::vector<Chart> charts,
             SamplePlanSpec plan = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t grid_size() const noexcept { return grid_size_; }
  const std::vector<Chart>& charts() const noexcept { return charts_; }
  const SamplePlanSpec& plan_spec() const noexcept { return plan_spec_; }
  const std::vector<SamplePoint>& samples() const noexcept { return samples_; }

  bool contains(const AVector& x) const;
  std::vector<std::size_t> charts_at(const AVector& x) const;

 private:
  std::size_t dim_;
  std::size_t grid_size_;
  std::vector<Chart> charts_;
  SamplePlanSpec plan_spec_;
  std::vector<SamplePoint> samples_;
};

// Transition matrices g_ij(x), mapping chart-j coordinates to chart-i
// coordinates: xi_i = g_ij xi_j. Generators are globally defined formulas;
// BundleAtlas restricts them to chart overlaps.
using CocycleGenerator =
    std::function<MatrixOverA(std::size_t i, std::size_t j, const AVector& x)>;

CocycleGenerator trivial_cocycle(const PModule& fiber);
// g_ij = p diag(e^{i(theta_i - theta_j)}, 1, ..., 1) p with
// theta_i(x) = omega_i (Re x_0 + Im x_0 / 2) pointwise.
CocycleGenerator phase_cocycle(const PModule& fiber, std::vector<double> omega);
// g_ij = diag(scales)^(j - i), compressed to the fiber.
CocycleGenerator diagonal_cocycle(const PModule& fiber, std::vector<double> scales);
// A phase cocycle whose g_01 alone is multiplied by `factor`.
CocycleGenerator broken_phase_cocycle(const PModule& fiber, std::vector<double> omega,
                                      double factor);

class BundleAtlas;
using AtlasPtr = std::shared_ptr<const BundleAtlas>;

class BundleAtlas {
 public:
  BundleAtlas(BaseRegion base, PModule fiber, CocycleGenerator cocycle);

  const BaseRegion& base() const noexcept { return base_; }
  const PModule& fiber() const noexcept { return fiber_; }
  std::size_t chart_count() const noexcept { return base_.charts().size(); }
  std::size_t grid_size() const noexcept { return base_.grid_size(); }

  bool in_chart(std::size_t i, const AVector& x) const;
  // Throws ChartMismatch unless x lies in U_i and U_j.
  MatrixOverA transition(std::size_t i, std::size_t j, const AVector& x) const;
  // Evaluates the generator without the overlap check.
  MatrixOverA raw_transition(std::size_t i, std::size_t j, const AVector& x) const;

 private:
  BaseRegion base_;
  PModule fiber_;
  CocycleGenerator cocycle_;
};

struct CocycleReport {
  double identity_residual = 0.0;  // sup |g_ii - 1|
  double triple_residual = 0.0;    // sup |g_ij g_jk - g_ik|
  std::size_t points = 0;
  double tol = 0.0;
  bool passed = false;
};

CocycleReport verify_cocycle(const BundleAtlas& atlas, double tol = kCocycleTol);

/// A section given by its chartwise representatives xi_i : U_i -> M.
class Section {
 public:
  explicit Section(std::vector<AMap> chart_maps);

  // xi_i = g_{i,ref} F for a map F in the reference chart's coordinates.
  static Section from_reference(const AtlasPtr& atlas, std::size_t ref_chart, AMap reference);

  std::size_t chart_count() const noexcept { return maps_.size(); }
  const AMap& chart(std::size_t i) const { return maps_.at(i); }
  AVector operator()(std::size_t i, const AVector& x) const { return maps_.at(i)(x); }

  // (f xi)_i = f xi_i for an A-valued map f on the base.
  Section scaled(const AMap& f) const;
  Section scaled(const AlgebraElement& a) const;

  friend Section operator+(const Section& a, const Section& b);

 private:
  std::vector<AMap> maps_;
};

// sup over sampled overlaps of |xi_i - g_ij xi_j|.
double section_compatibility_residual(const BundleAtlas& atlas, const Section& xi);

/// A-valued partition of unity, one weight per chart.
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(std::vector<AMap> weights) : weights_(std::move(weights)) {}

  std::size_t size() const noexcept { return weights_.size(); }
  const AMap& weight(std::size_t i) const { return weights_.at(i); }
  AlgebraElement operator()(std::size_t i, const AVector& x) const {
    return weights_.at(i).scalar_at(x);
  }

 private:
  std::vector<AMap> weights_;
};

struct PartitionReport {
  double sum_residual = 0.0;            // sup |sum_i psi_i(x) - 1|
  double min_spectral_value = 0.0;      // min real part over weights and points
  double max_imaginary = 0.0;
  std::size_t support_violations = 0;   // points outside U_i with psi_i(x) != 0
  std::size_t points = 0;
  double tol = 0.0;
  bool passed = false;
};

PartitionReport verify_partition(const BaseRegion& base, const PartitionOfUnity& partition,
                                 double tol = kPartitionTol);

// Smooth cutoff exp(1/(s - r^2)) for s < r^2, zero otherwise.
double bump_profile(double s, double radius);

// psi_i = phi_i / sum_j phi_j, phi_i(x)(t) = b(||x(t) - c_i(t)||^2). Throws
// NormalizerNotInvertible if some sample point has a grid point where every
// bump is below delta.
PartitionOfUnity make_bump_partition(const BaseRegion& base, double delta = kCoveringDelta);

/// Chartwise Gram fields x -> H_i(x) defining a fiberwise hermitian form.
class HermitianStructure {
 public:
  using GramField = std::function<MatrixOverA(std::size_t chart, const AVector& x)>;

  HermitianStructure(AtlasPtr atlas, GramField field);

  const AtlasPtr& atlas() const noexcept { return atlas_; }
  // Throws ChartMismatch unless x lies in the chart.
  MatrixOverA gram(std::size_t chart, const AVector& x) const;
  HermitianForm fiber_form(std::size_t chart, const AVector& x) const;
  // g_x(u, w) with u, w in chart coordinates.
  AlgebraElement pair(std::size_t chart, const AVector& x, const AVector& u,
                      const AVector& w) const;

 private:
  AtlasPtr atlas_;
  GramField field_;
};

// sup over sampled overlaps of |p (g_ij* H_i g_ij - H_j) p|: zero iff the
// fiber pairing does not depend on the chart used to compute it.
double chart_independence_residual(const HermitianStructure& structure);

// Worst axiom residuals of the fiber forms over the sample plan.
AxiomReport verify_structure_axioms(const HermitianStructure& structure, std::size_t elements,
                                    std::uint64_t seed, double tol = kAxiomTol);

// H_j(x) = sum_i psi_i(x) g_ij(x)* H_alpha g_ij(x)
HermitianStructure hermitian_structure_by_gluing(AtlasPtr atlas, const HermitianForm& alpha,
                                                 const PartitionOfUnity& partition);

// Chartwise constant H_i = H_alpha. Throws NotReduced naming (i, j, sample)
// when a sampled transition is not alpha-unitary within tol.
HermitianStructure hermitian_structure_by_reduction(AtlasPtr atlas, const HermitianForm& alpha,
                                                    double tol = kCocycleTol);

// Largest alpha-unitarity residual of the sampled transitions.
double reduction_residual(const BundleAtlas& atlas, const HermitianForm& alpha);

// eps_j equal to b_j in chart i and transported by the cocycle elsewhere.
std::vector<Section> frame_sections(const AtlasPtr& atlas, std::size_t chart,
                                    const std::vector<AVector>& basis);

/// An element of L_A(T(X,x), E_x) in a chart: v = (h, k) maps to
/// linear h + skew star(k).
struct HomTrivialization {
  std::size_t chart = 0;
  AVector point;
  MatrixOverA linear;
  MatrixOverA skew;

  AVector apply(const TangentVector& v) const;
};

using FiberwiseMap = std::function<AVector(const TangentVector&)>;

HomTrivialization lhom_trivialization(const BundleAtlas& atlas, std::size_t chart,
                                      const AVector& x, const FiberwiseMap& map);

HomTrivialization transport(const BundleAtlas& atlas, const HomTrivialization& hom,
                            std::size_t target_chart);

}  // namespace abundle
