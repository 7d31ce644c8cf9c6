#pragma once

// Simulation settings. The JSON form uses the command-line long option names
// as keys, e.g. {"protocol": "pcl", "backend": "test", "n": 10, "beta": 1000,
// "rounds": 3, "tolerance": 2, "topology": "nn:8", "seed": 7}.

#include "privagg/protocol/params.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace privagg::harness {

enum class Backend { prod, test, mock };

std::string_view to_string(Backend b);
Backend backend_from_string(std::string_view name);

struct SimulationConfig {
  protocol::Variant protocol = protocol::Variant::pcl;
  Backend backend = Backend::test;
  std::size_t n = 5;
  std::uint64_t beta = 10;
  std::uint64_t rounds = 1;
  std::size_t tolerance = 0;
  // full | holes:A | nn:M | edges:1-2,2-3,...
  std::string topology = "full";
  // Hole seekers: "all" or a list such as "1,3,4".
  std::string seekers = "all";
  bool seekers_only = false;
  // auto | sign | pseudorandom; auto picks the variant's standard mode.
  std::string coefficients = "auto";
  std::uint64_t seed = 1;
  std::uint64_t trials = 1;
  bool parallel = true;
  std::string out;         // report path, empty for stdout only
  std::string transcript;  // JSONL path for the first trial's transcript

  // Validated protocol parameters; throws on any inconsistency.
  protocol::ProtocolParams params() const;
};

matrixgen::Sparsity parse_topology(const std::string& text, std::size_t n,
                                   const std::string& seekers, bool seekers_only);
std::vector<std::size_t> parse_index_list(const std::string& text);

void to_json(nlohmann::json& j, const SimulationConfig& c);
void from_json(const nlohmann::json& j, SimulationConfig& c);

}  // namespace privagg::harness
