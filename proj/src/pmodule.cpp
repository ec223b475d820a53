#include "abundle/pmodule.hpp"

#include <cmath>
#include <string>

#include "abundle/error.hpp"

namespace abundle {

namespace {

void require_shape(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace

MatrixOverA::MatrixOverA(std::size_t rows, std::size_t cols, std::size_t grid_size)
    : rows_(rows),
      cols_(cols),
      grid_size_(grid_size),
      entries_(rows * cols, AlgebraElement::zero(grid_size)) {}

MatrixOverA MatrixOverA::identity(std::size_t m, std::size_t grid_size) {
  MatrixOverA g(m, m, grid_size);
  for (std::size_t i = 0; i < m; ++i) g(i, i) = AlgebraElement::unit(grid_size);
  return g;
}

MatrixOverA MatrixOverA::zero(std::size_t rows, std::size_t cols, std::size_t grid_size) {
  return MatrixOverA(rows, cols, grid_size);
}

MatrixOverA MatrixOverA::diagonal(const std::vector<AlgebraElement>& diag) {
  require_shape(!diag.empty(), "diagonal: empty");
  MatrixOverA g(diag.size(), diag.size(), diag.front().size());
  for (std::size_t i = 0; i < diag.size(); ++i) g(i, i) = diag[i];
  return g;
}

MatrixOverA MatrixOverA::from_columns(const std::vector<AVector>& columns) {
  require_shape(!columns.empty() && columns.front().size() > 0, "from_columns: empty");
  const std::size_t rows = columns.front().size();
  MatrixOverA g(rows, columns.size(), columns.front().grid_size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require_shape(columns[c].size() == rows, "from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) g(r, c) = columns[c][r];
  }
  return g;
}

MatrixOverA MatrixOverA::from_pointwise(const std::vector<Eigen::MatrixXcd>& mats) {
  require_shape(!mats.empty(), "from_pointwise: empty");
  const auto rows = static_cast<std::size_t>(mats.front().rows());
  const auto cols = static_cast<std::size_t>(mats.front().cols());
  MatrixOverA g(rows, cols, mats.size());
  for (std::size_t t = 0; t < mats.size(); ++t) {
    require_shape(static_cast<std::size_t>(mats[t].rows()) == rows &&
                      static_cast<std::size_t>(mats[t].cols()) == cols,
                  "from_pointwise: inconsistent shapes");
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        g(r, c)[t] = mats[t](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  }
  return g;
}

Eigen::MatrixXcd MatrixOverA::at(std::size_t t) const {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c)[t];
    }
  }
  return out;
}

AVector MatrixOverA::column(std::size_t c) const {
  std::vector<AlgebraElement> col;
  col.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) col.push_back((*this)(r, c));
  return AVector(std::move(col));
}

MatrixOverA& MatrixOverA::operator+=(const MatrixOverA& b) {
  require_shape(rows_ == b.rows_ && cols_ == b.cols_, "matrix sum: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += b.entries_[i];
  return *this;
}

MatrixOverA& MatrixOverA::operator-=(const MatrixOverA& b) {
  require_shape(rows_ == b.rows_ && cols_ == b.cols_, "matrix difference: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= b.entries_[i];
  return *this;
}

MatrixOverA operator+(MatrixOverA a, const MatrixOverA& b) { return a += b; }
MatrixOverA operator-(MatrixOverA a, const MatrixOverA& b) { return a -= b; }

MatrixOverA operator*(const MatrixOverA& a, const MatrixOverA& b) {
  require_shape(a.cols() == b.rows(), "matrix product: shape mismatch");
  MatrixOverA out(a.rows(), b.cols(), a.grid_size());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      AlgebraElement acc = AlgebraElement::zero(a.grid_size());
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(k, c);
      out(r, c) = std::move(acc);
    }
  }
  return out;
}

MatrixOverA operator*(const AlgebraElement& a, MatrixOverA g) {
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) *= a;
  }
  return g;
}

MatrixOverA operator*(Complex z, MatrixOverA g) {
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) *= z;
  }
  return g;
}

AVector operator*(const MatrixOverA& g, const AVector& v) {
  require_shape(g.cols() == v.size(), "matrix-vector product: shape mismatch");
  std::vector<AlgebraElement> out;
  out.reserve(g.rows());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    AlgebraElement acc = AlgebraElement::zero(g.grid_size());
    for (std::size_t c = 0; c < g.cols(); ++c) acc += g(r, c) * v[c];
    out.push_back(std::move(acc));
  }
  return AVector(std::move(out));
}

MatrixOverA adjoint(const MatrixOverA& g) {
  MatrixOverA out(g.cols(), g.rows(), g.grid_size());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) out(c, r) = star(g(r, c));
  }
  return out;
}

double seminorm(const MatrixOverA& g) {
  double m = 0.0;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) m = std::max(m, seminorm(g(r, c)));
  }
  return m;
}

MatrixOverA inverse(const MatrixOverA& g, double tol) {
  require_shape(g.rows() == g.cols(), "inverse: matrix not square");
  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(g.grid_size());
  for (std::size_t t = 0; t < g.grid_size(); ++t) {
    const Eigen::MatrixXcd m = g.at(t);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() > 0 && sv(sv.size() - 1) <= tol) {
      fail(ErrorCode::NotInvertible, "inverse: singular at grid point " + std::to_string(t));
    }
    mats.push_back(m.inverse());
  }
  return MatrixOverA::from_pointwise(mats);
}

PModule::PModule(MatrixOverA idempotent) : p_(std::move(idempotent)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) {
    fail(ErrorCode::MalformedIdempotent, "idempotent must be a non-empty square matrix");
  }
  const double idem = seminorm(p_ * p_ - p_);
  const double herm = seminorm(adjoint(p_) - p_);
  if (idem > kIdempotentTol || herm > kIdempotentTol) {
    fail(ErrorCode::MalformedIdempotent, "not a hermitian idempotent: |p^2-p| = " +
                                             std::to_string(idem) +
                                             ", |p*-p| = " + std::to_string(herm));
  }
}

PModule PModule::free(std::size_t rank, std::size_t grid_size) {
  return PModule(MatrixOverA::identity(rank, grid_size));
}

PModule PModule::mixed_rank(std::size_t grid_size) {
  MatrixOverA p = MatrixOverA::identity(2, grid_size);
  for (std::size_t t = 0; t < grid_size / 2; ++t) p(1, 1)[t] = 0.0;
  return PModule(std::move(p));
}

bool PModule::is_free() const {
  return seminorm(p_ - MatrixOverA::identity(ambient_rank(), grid_size())) <= kIdempotentTol;
}

bool PModule::contains(const AVector& v, double tol) const {
  return v.size() == ambient_rank() && seminorm(p_ * v - v) <= tol;
}

bool operator==(const PModule& a, const PModule& b) {
  return a.ambient_rank() == b.ambient_rank() && a.grid_size() == b.grid_size() &&
         seminorm(a.p_ - b.p_) <= kIdempotentTol;
}

ModuleElement::ModuleElement(PModule module, AVector coords)
    : module_(std::move(module)), coords_(std::move(coords)) {
  if (!module_.contains(coords_)) {
    fail(ErrorCode::ModuleMismatch, "coordinates do not lie in the range of the idempotent");
  }
}

ModuleElement project(const PModule& module, const AVector& raw) {
  if (raw.size() != module.ambient_rank()) {
    fail(ErrorCode::InvalidArgument, "project: vector length differs from ambient rank");
  }
  return ModuleElement(module, module.idempotent() * raw);
}

PModule complement(const PModule& module) {
  return PModule(MatrixOverA::identity(module.ambient_rank(), module.grid_size()) -
                 module.idempotent());
}

std::vector<int> pointwise_rank(const PModule& module) {
  const MatrixOverA& p = module.idempotent();
  std::vector<int> ranks(module.grid_size());
  for (std::size_t t = 0; t < module.grid_size(); ++t) {
    double trace = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) trace += p(i, i)[t].real();
    const double rounded = std::round(trace);
    if (std::abs(trace - rounded) > 0.1) {
      fail(ErrorCode::MalformedIdempotent,
           "trace " + std::to_string(trace) + " at grid point " + std::to_string(t));
    }
    ranks[t] = static_cast<int>(rounded);
  }
  return ranks;
}

ModuleMap::ModuleMap(PModule source, PModule target, MatrixOverA matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.ambient_rank() || matrix_.cols() != source_.ambient_rank()) {
    fail(ErrorCode::ModuleMismatch, "module map: matrix shape does not match modules");
  }
  const MatrixOverA compressed = target_.idempotent() * matrix_ * source_.idempotent();
  if (seminorm(compressed - matrix_) > kMembershipTol) {
    fail(ErrorCode::ModuleMismatch, "module map is not compressed to the module ranges");
  }
}

ModuleMap ModuleMap::identity(const PModule& module) {
  return ModuleMap(module, module, module.idempotent());
}

ModuleElement ModuleMap::operator()(const ModuleElement& x) const {
  if (!(x.module() == source_)) fail(ErrorCode::ModuleMismatch, "module map: wrong source");
  return ModuleElement(target_, matrix_ * x.coords());
}

ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner) {
  if (!(outer.source() == inner.target())) {
    fail(ErrorCode::ModuleMismatch, "compose: target of inner differs from source of outer");
  }
  return ModuleMap(inner.source(), outer.target(), outer.matrix() * inner.matrix());
}

WhitneySum whitney_sum(const PModule& first, const PModule& second) {
  if (first.grid_size() != second.grid_size()) {
    fail(ErrorCode::InvalidArgument, "whitney_sum: grid size mismatch");
  }
  const std::size_t n = first.grid_size();
  const std::size_t m1 = first.ambient_rank();
  const std::size_t m2 = second.ambient_rank();
  MatrixOverA block(m1 + m2, m1 + m2, n);
  MatrixOverA inject1(m1 + m2, m1, n);
  MatrixOverA inject2(m1 + m2, m2, n);
  for (std::size_t r = 0; r < m1; ++r) {
    for (std::size_t c = 0; c < m1; ++c) {
      block(r, c) = first.idempotent()(r, c);
      inject1(r, c) = first.idempotent()(r, c);
    }
  }
  for (std::size_t r = 0; r < m2; ++r) {
    for (std::size_t c = 0; c < m2; ++c) {
      block(m1 + r, m1 + c) = second.idempotent()(r, c);
      inject2(m1 + r, c) = second.idempotent()(r, c);
    }
  }
  PModule sum(block);
  return WhitneySum{sum, ModuleMap(first, sum, inject1), ModuleMap(sum, first, adjoint(inject1)),
                    ModuleMap(second, sum, inject2), ModuleMap(sum, second, adjoint(inject2))};
}

ModuleMap collapse_to_ambient(const PModule& module) {
  const PModule other = complement(module);
  const WhitneySum ws = whitney_sum(module, other);
  const std::size_t m = module.ambient_rank();
  const std::size_t n = module.grid_size();
  MatrixOverA g(m, 2 * m, n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      g(r, c) = module.idempotent()(r, c);
      g(r, m + c) = other.idempotent()(r, c);
    }
  }
  return ModuleMap(ws.sum, PModule::free(m, n), std::move(g));
}

}  // namespace abundle
