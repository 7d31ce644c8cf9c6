#include "privagg/harness/simulation.hpp"

#include "privagg/harness/session.hpp"

#include <numeric>
#include <utility>

namespace privagg {

void to_json(nlohmann::json& j, const OpCounter& c) {
  j = {{"exponentiations", c.exponentiations},
       {"multiplications", c.multiplications},
       {"pairings", c.pairings},
       {"inversions", c.inversions}};
}

}  // namespace privagg

namespace privagg::harness {

analysis::AttackReport attack_simulation(const SimulationConfig& config,
                                         const std::vector<std::size_t>& coalition,
                                         std::uint64_t round) {
  const auto params = config.params();
  if (round < 1) throw std::invalid_argument("attack: rounds start at 1");
  return dispatch(config.protocol, config.backend, [&](const auto& backend, auto party_tag) {
    using Party = typename decltype(party_tag)::type;
    auto s = run_session<Party>(backend, params, config.seed, 0, round, config.parallel);
    std::vector<std::pair<std::size_t, BigInt>> secrets;
    for (std::size_t j : coalition) {
      if (j < 1 || j > params.n) throw std::out_of_range("attack: coalition member outside [1, n]");
      secrets.emplace_back(j, s.parties[j - 1].secret());
    }
    return analysis::partition_attack(backend, params, std::span<const typename Party::Key>(s.keys),
                                      round, std::span(std::as_const(s.contributions[round - 1])),
                                      std::span<const std::pair<std::size_t, BigInt>>(secrets),
                                      std::span<const std::uint64_t>(s.messages[round - 1]));
  });
}

SimulationReport run_simulation(const SimulationConfig& config) {
  const auto params = config.params();
  SimulationReport report;
  report.config = config;
  report.all_match = true;

  dispatch(config.protocol, config.backend, [&](const auto& backend, auto party_tag) {
    using Party = typename decltype(party_tag)::type;
    const auto& ag = aggregation_group(backend);
    const auto base = aggregation_base(backend);
    for (std::uint64_t trial = 0; trial < config.trials && report.all_match; ++trial) {
      Session<Party> s;
      try {
        s = run_session<Party>(backend, params, config.seed, trial, config.rounds, config.parallel);
      } catch (const std::exception& e) {
        report.all_match = false;
        report.error = "trial " + std::to_string(trial) + ": " + e.what();
        return;
      }
      for (std::size_t i = 0; i < params.n; ++i) {
        report.total += s.setup_ops[i];
        report.total += s.round_ops[i];
      }
      if (trial == 0) {
        report.party_setup_ops = s.setup_ops;
        report.party_round_ops = s.round_ops;
        report.transcript = s.transcript;
      }
      for (std::uint64_t k = 1; k <= config.rounds; ++k) {
        const auto& msgs = s.messages[k - 1];
        const std::uint64_t truth = std::accumulate(msgs.begin(), msgs.end(), std::uint64_t{0});
        RoundOutcome out{trial, k, 0, truth, false, false};
        try {
          dlog::LambdaOptions opts;
          opts.seed = config.seed ^ (trial << 20) ^ k;
          auto agg = protocol::aggregate(ag, base, params, k,
                                         std::span(s.contributions[k - 1]), opts);
          out.sigma = agg.sigma;
          UncountedScope quiet;
          out.product_matches = agg.product == ag.exp(base, from_u64(truth));
        } catch (const std::exception& e) {
          report.error = "trial " + std::to_string(trial) + " round " + std::to_string(k) + ": " +
                         e.what();
        }
        out.match = out.sigma == truth && out.product_matches && report.error.empty();
        report.rounds.push_back(out);
        if (!out.match) {
          report.all_match = false;
          if (report.error.empty()) {
            report.error = "trial " + std::to_string(trial) + " round " + std::to_string(k) +
                           ": sigma " + std::to_string(out.sigma) + " differs from the true sum " +
                           std::to_string(truth);
          }
          return;
        }
      }
    }
  });
  return report;
}

std::vector<std::uint64_t> replay_transcript(const SimulationConfig& config,
                                             const protocol::Transcript& transcript) {
  const auto params = config.params();
  if (transcript.variant() != config.protocol) {
    throw protocol::ProtocolError("replay: transcript variant differs from the config");
  }
  std::vector<std::uint64_t> sigmas;
  dispatch(config.protocol, config.backend, [&](const auto& backend, auto) {
    const auto& ag = aggregation_group(backend);
    const auto base = aggregation_base(backend);
    using Element = std::decay_t<decltype(base)>;
    for (std::uint64_t k = 1; k <= transcript.last_round(); ++k) {
      std::vector<protocol::Contribution<Element>> round;
      for (const auto& [party, bytes] : transcript.payloads("contribution", k)) {
        round.push_back({k, party, ag.decode(bytes)});
      }
      sigmas.push_back(protocol::aggregate(ag, base, params, k, std::span(round)).sigma);
    }
  });
  return sigmas;
}

void to_json(nlohmann::json& j, const RoundOutcome& r) {
  j = {{"trial", r.trial},         {"round", r.round},
       {"sigma", r.sigma},         {"true_sum", r.true_sum},
       {"match", r.match},         {"product_matches", r.product_matches}};
}

void to_json(nlohmann::json& j, const SimulationReport& r) {
  auto parties = nlohmann::json::array();
  for (std::size_t i = 0; i < r.party_round_ops.size(); ++i) {
    parties.push_back({{"party", i + 1},
                       {"setup", r.party_setup_ops[i]},
                       {"rounds", r.party_round_ops[i]}});
  }
  j = {{"config", r.config},
       {"all_match", r.all_match},
       {"error", r.error},
       {"rounds", r.rounds},
       {"ops_total", r.total},
       {"ops_per_party", std::move(parties)},
       {"transcript", r.config.transcript}};
}

}  // namespace privagg::harness
