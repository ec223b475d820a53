#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "abundle/algebra.hpp"

namespace abundle {

inline constexpr double kIdempotentTol = 1e-12;
inline constexpr double kMembershipTol = 1e-10;

/// Dense matrix with entries in A. Products and adjoints act pointwise on the
/// grid, so a MatrixOverA is equivalently a grid-indexed family of complex
/// matrices (see at()).
class MatrixOverA {
 public:
  MatrixOverA() = default;
  MatrixOverA(std::size_t rows, std::size_t cols, std::size_t grid_size);

  static MatrixOverA identity(std::size_t m, std::size_t grid_size);
  static MatrixOverA zero(std::size_t rows, std::size_t cols, std::size_t grid_size);
  static MatrixOverA diagonal(const std::vector<AlgebraElement>& diag);
  // Columns are the given vectors.
  static MatrixOverA from_columns(const std::vector<AVector>& columns);
  // Assembles from one complex matrix per grid point.
  static MatrixOverA from_pointwise(const std::vector<Eigen::MatrixXcd>& mats);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t grid_size() const noexcept { return grid_size_; }

  const AlgebraElement& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  AlgebraElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  // The complex matrix obtained by evaluating every entry at grid point t.
  Eigen::MatrixXcd at(std::size_t t) const;

  AVector column(std::size_t c) const;

  MatrixOverA& operator+=(const MatrixOverA& b);
  MatrixOverA& operator-=(const MatrixOverA& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t grid_size_ = 0;
  std::vector<AlgebraElement> entries_;
};

MatrixOverA operator+(MatrixOverA a, const MatrixOverA& b);
MatrixOverA operator-(MatrixOverA a, const MatrixOverA& b);
MatrixOverA operator*(const MatrixOverA& a, const MatrixOverA& b);
MatrixOverA operator*(const AlgebraElement& a, MatrixOverA g);
MatrixOverA operator*(Complex z, MatrixOverA g);
AVector operator*(const MatrixOverA& g, const AVector& v);

// Conjugate transpose, entrywise star.
MatrixOverA adjoint(const MatrixOverA& g);

// Max entry seminorm.
double seminorm(const MatrixOverA& g);

// Pointwise inverse; throws NotInvertible when some grid-point matrix is
// singular to within tol (smallest singular value).
MatrixOverA inverse(const MatrixOverA& g, double tol = 1e-12);

/// A finitely generated projective A-module, presented as the range of a
/// hermitian idempotent p in M_m(A). Free modules have p = identity.
class PModule {
 public:
  PModule() = default;
  // Throws MalformedIdempotent if p is not square, p^2 != p or p* != p to
  // within kIdempotentTol.
  explicit PModule(MatrixOverA idempotent);

  static PModule free(std::size_t rank, std::size_t grid_size);
  // diag(1, 0) on the first half of the grid, identity on the second half.
  static PModule mixed_rank(std::size_t grid_size);

  std::size_t ambient_rank() const noexcept { return p_.rows(); }
  std::size_t grid_size() const noexcept { return p_.grid_size(); }
  const MatrixOverA& idempotent() const noexcept { return p_; }
  bool is_free() const;

  bool contains(const AVector& v, double tol = kMembershipTol) const;

  friend bool operator==(const PModule& a, const PModule& b);

 private:
  MatrixOverA p_;
};

class ModuleElement {
 public:
  // Throws ModuleMismatch unless p.coords = coords within kMembershipTol.
  ModuleElement(PModule module, AVector coords);

  const PModule& module() const noexcept { return module_; }
  const AVector& coords() const noexcept { return coords_; }

 private:
  PModule module_;
  AVector coords_;
};

// coords = p.raw
ModuleElement project(const PModule& module, const AVector& raw);

// The module with idempotent 1 - p.
PModule complement(const PModule& module);

// Rounded trace of p at each grid point. Throws MalformedIdempotent if a trace
// is farther than 0.1 from an integer.
std::vector<int> pointwise_rank(const PModule& module);

/// An A-linear map between projective modules, G = p_target G p_source.
class ModuleMap {
 public:
  ModuleMap(PModule source, PModule target, MatrixOverA matrix);

  static ModuleMap identity(const PModule& module);

  const PModule& source() const noexcept { return source_; }
  const PModule& target() const noexcept { return target_; }
  const MatrixOverA& matrix() const noexcept { return matrix_; }

  ModuleElement operator()(const ModuleElement& x) const;

 private:
  PModule source_;
  PModule target_;
  MatrixOverA matrix_;
};

// outer o inner
ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner);

struct WhitneySum {
  PModule sum;
  ModuleMap inject_first;
  ModuleMap project_first;
  ModuleMap inject_second;
  ModuleMap project_second;
};

// Block-diagonal diag(p1, p2) with its canonical injections and projections.
WhitneySum whitney_sum(const PModule& first, const PModule& second);

// The isomorphism M + (1-p)A^m -> A^m, (x, y) -> x + y, for M = pA^m.
ModuleMap collapse_to_ambient(const PModule& module);

}  // namespace abundle
