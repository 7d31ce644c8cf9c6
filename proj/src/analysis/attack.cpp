#include "privagg/analysis/attack.hpp"

namespace privagg::analysis {

void to_json(nlohmann::json& j, const AttackReport& r) {
  auto sums = nlohmann::json::array();
  for (std::size_t c = 0; c < r.components.size(); ++c) {
    nlohmann::json rec = r.recovered[c] ? nlohmann::json(*r.recovered[c]) : nlohmann::json(nullptr);
    sums.push_back({{"component", r.components[c]}, {"recovered", rec}, {"expected", r.expected[c]}});
  }
  j = {{"coalition", r.coalition},
       {"round", r.round},
       {"components", r.components.size()},
       {"recovered_partial_sums", std::move(sums)},
       {"success", r.success}};
}

}  // namespace privagg::analysis
