#pragma once

#include <json.hpp>

#include "abundle/algebra.hpp"
#include "abundle/pmodule.hpp"

namespace abundle::json_io {

using nlohmann::json;

json to_json(const AlgebraElement& a);
json to_json(const AVector& v);
json to_json(const MatrixOverA& g);

// Throw ParseError on shape problems.
AlgebraElement element_from_json(const json& j, std::size_t grid_size);
AVector vector_from_json(const json& j, std::size_t grid_size);
MatrixOverA matrix_from_json(const json& j, std::size_t grid_size);

}  // namespace abundle::json_io
