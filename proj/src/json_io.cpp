#include "json_io.hpp"

#include "abundle/error.hpp"

namespace abundle::json_io {

json to_json(const AlgebraElement& a) {
  json out = json::array();
  for (Complex z : a.values()) out.push_back({z.real(), z.imag()});
  return out;
}

json to_json(const AVector& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

json to_json(const MatrixOverA& g) {
  json out = json::array();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(to_json(g(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

AlgebraElement element_from_json(const json& j, std::size_t grid_size) {
  if (!j.is_array() || j.size() != grid_size) {
    fail(ErrorCode::ParseError, "algebra element must be a list of " +
                                    std::to_string(grid_size) + " [re, im] pairs");
  }
  std::vector<Complex> values;
  values.reserve(grid_size);
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      fail(ErrorCode::ParseError, "expected a [re, im] pair");
    }
    values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return AlgebraElement(std::move(values));
}

AVector vector_from_json(const json& j, std::size_t grid_size) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "vector over A must be a list");
  std::vector<AlgebraElement> entries;
  for (const auto& e : j) entries.push_back(element_from_json(e, grid_size));
  return AVector(std::move(entries));
}

MatrixOverA matrix_from_json(const json& j, std::size_t grid_size) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    fail(ErrorCode::ParseError, "matrix over A must be a non-empty list of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  MatrixOverA g(rows, cols, grid_size);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(ErrorCode::ParseError, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = element_from_json(j[r][c], grid_size);
  }
  return g;
}

}  // namespace abundle::json_io
