#pragma once

#include "privagg/analysis/attack.hpp"
#include "privagg/group/op_counter.hpp"
#include "privagg/harness/config.hpp"
#include "privagg/protocol/transcript.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace privagg {
void to_json(nlohmann::json& j, const OpCounter& c);
}

namespace privagg::harness {

struct RoundOutcome {
  std::uint64_t trial = 0;
  std::uint64_t round = 0;
  std::uint64_t sigma = 0;
  std::uint64_t true_sum = 0;
  bool match = false;
  bool product_matches = false;  // prod v_j == g^(true sum), before the dlog
};

struct SimulationReport {
  SimulationConfig config;
  std::vector<RoundOutcome> rounds;
  std::vector<OpCounter> party_setup_ops;  // first trial, per party
  std::vector<OpCounter> party_round_ops;  // first trial, per party, all rounds
  OpCounter total;                         // all trials, parties only
  bool all_match = false;
  std::string error;  // first mismatch or failure, names the round
  std::optional<protocol::Transcript> transcript;  // first trial
};

SimulationReport run_simulation(const SimulationConfig& config);

// Re-aggregates every round of a saved transcript.
std::vector<std::uint64_t> replay_transcript(const SimulationConfig& config,
                                             const protocol::Transcript& transcript);

// Runs trial 0 of the configured simulation up to `round`, hands the coalition
// members' secrets to the partition attack and reports what leaked.
analysis::AttackReport attack_simulation(const SimulationConfig& config,
                                         const std::vector<std::size_t>& coalition,
                                         std::uint64_t round);

void to_json(nlohmann::json& j, const RoundOutcome& r);
// Timing-free, so identical configs give identical reports.
void to_json(nlohmann::json& j, const SimulationReport& r);

}  // namespace privagg::harness
