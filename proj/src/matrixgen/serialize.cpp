#include "privagg/matrixgen/serialize.hpp"

namespace privagg::matrixgen {

void to_json(nlohmann::json& j, const MatrixRow& row) {
  auto entries = nlohmann::json::array();
  for (const auto& e : row.entries) entries.push_back({e.column, to_decimal(e.coefficient)});
  j = {{"round", row.round}, {"party", row.party}, {"entries", std::move(entries)}};
}

void from_json(const nlohmann::json& j, MatrixRow& row) {
  row.round = j.at("round").get<std::uint64_t>();
  row.party = j.at("party").get<std::size_t>();
  row.entries.clear();
  for (const auto& e : j.at("entries")) {
    row.entries.push_back({e.at(0).get<std::size_t>(), BigInt(e.at(1).get<std::string>(), 10)});
  }
}

void to_json(nlohmann::json& j, const SparsityPattern& pattern) {
  auto edges = nlohmann::json::array();
  for (std::size_t a = 1; a <= pattern.size(); ++a) {
    for (std::size_t b = a + 1; b <= pattern.size(); ++b) {
      if (pattern.linked(a, b)) edges.push_back({a, b});
    }
  }
  j = {{"n", pattern.size()}, {"edges", std::move(edges)}};
}

void from_json(const nlohmann::json& j, SparsityPattern& pattern) {
  pattern = SparsityPattern(j.at("n").get<std::size_t>());
  for (const auto& e : j.at("edges")) pattern.link(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
}

}  // namespace privagg::matrixgen
