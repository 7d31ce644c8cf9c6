#pragma once

// JSON form of rows and patterns, for debugging and test vectors:
//   row:     {"round": k, "party": i, "entries": [[j, "decimal"], ...]}
//   pattern: {"n": n, "edges": [[i, j], ...]} with i < j

#include "privagg/matrixgen/matrixgen.hpp"

#include <json.hpp>

namespace privagg::matrixgen {

void to_json(nlohmann::json& j, const MatrixRow& row);
void from_json(const nlohmann::json& j, MatrixRow& row);
void to_json(nlohmann::json& j, const SparsityPattern& pattern);
void from_json(const nlohmann::json& j, SparsityPattern& pattern);

}  // namespace privagg::matrixgen
