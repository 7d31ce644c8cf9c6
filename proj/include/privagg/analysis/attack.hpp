#pragma once

// Partition attack: when deleting the coalition splits the masking graph, the
// product of one component's contributions carries masks only towards
// coalition members, whose secrets are known. Stripping those terms leaves
// g^(partial sum).

#include "privagg/analysis/connectivity.hpp"
#include "privagg/dlog/dlog.hpp"
#include "privagg/protocol/party.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace privagg::analysis {

struct AttackReport {
  std::vector<std::size_t> coalition;
  std::uint64_t round = 0;
  std::vector<std::vector<std::size_t>> components;  // honest parties
  std::vector<std::optional<std::uint64_t>> recovered;  // per component
  std::vector<std::uint64_t> expected;                  // true partial sums
  bool success = false;
};

void to_json(nlohmann::json& j, const AttackReport& r);

namespace detail {

inline std::map<std::size_t, BigInt> coalition_map(
    std::span<const std::pair<std::size_t, BigInt>> secrets, std::size_t n) {
  std::map<std::size_t, BigInt> out;
  for (const auto& [j, x] : secrets) {
    if (j < 1 || j > n) throw std::out_of_range("attack: coalition member outside [1, n]");
    if (!out.emplace(j, x).second) throw std::invalid_argument("attack: duplicate coalition member");
  }
  return out;
}

// Shared driver. `cross(i, e)` returns the aggregation-group element that
// carries exponent x_i * e, built from public key u_i.
template <PrimeOrderGroup AG, class Cross>
AttackReport run_attack(const AG& agg, const typename AG::Element& base,
                        const protocol::ProtocolParams& params, const matrixgen::Seed& seed,
                        std::uint64_t round,
                        std::span<const protocol::Contribution<typename AG::Element>> contributions,
                        const std::map<std::size_t, BigInt>& coalition,
                        std::span<const std::uint64_t> messages, Cross&& cross) {
  const std::size_t n = params.n;
  if (contributions.size() != n) throw std::invalid_argument("attack: need all n contributions");
  if (messages.size() != n) throw std::invalid_argument("attack: need all n plaintexts");
  std::vector<const typename AG::Element*> v(n + 1, nullptr);
  for (const auto& c : contributions) {
    if (c.round != round || c.party < 1 || c.party > n) {
      throw std::invalid_argument("attack: contribution for the wrong round or party");
    }
    v[c.party] = &c.value;
  }

  AttackReport rep;
  rep.round = round;
  for (const auto& [j, x] : coalition) rep.coalition.push_back(j);
  const auto& plan = params.topology;
  const auto pattern = matrixgen::pattern_for(plan, seed, round);
  rep.components = components_without(pattern, rep.coalition);
  if (rep.components.size() <= 1) {
    for (const auto& comp : rep.components) {
      std::uint64_t s = 0;
      for (std::size_t i : comp) s += messages[i - 1];
      rep.expected.push_back(s);
      rep.recovered.push_back(std::nullopt);
    }
    return rep;
  }

  const BigInt& p = agg.order();
  bool all = true;
  for (const auto& comp : rep.components) {
    auto z = agg.identity();
    std::uint64_t truth = 0;
    for (std::size_t i : comp) {
      if (!v[i]) throw std::invalid_argument("attack: missing contribution");
      z = agg.mul(z, *v[i]);
      truth += messages[i - 1];
      // Remaining mask: x_i * sum over coalition neighbours j of A_ij x_j.
      const auto row = matrixgen::chi_row(plan, pattern, seed, round, i, p);
      BigInt e = 0;
      for (const auto& entry : row.entries) {
        auto it = coalition.find(entry.column);
        if (it != coalition.end()) e += entry.coefficient * it->second;
      }
      e = mod_reduce(-e, p);
      if (sgn(e) != 0) z = agg.mul(z, cross(i, e));
    }
    auto found = dlog::pollard_lambda(agg, base, z, {0, comp.size() * params.beta});
    rep.recovered.push_back(found.value);
    rep.expected.push_back(truth);
    all = all && found.value && *found.value == truth;
  }
  rep.success = all;
  return rep;
}

}  // namespace detail

// kdk1 / pcl: contributions and keys live in one group.
template <PrimeOrderGroup G>
AttackReport partition_attack(const G& group, const protocol::ProtocolParams& params,
                              std::span<const typename G::Element> keys, std::uint64_t round,
                              std::span<const protocol::Contribution<typename G::Element>> contributions,
                              std::span<const std::pair<std::size_t, BigInt>> coalition_secrets,
                              std::span<const std::uint64_t> messages) {
  params.validate();
  auto coalition = detail::coalition_map(coalition_secrets, params.n);
  for (const auto& [j, x] : coalition) {
    if (!(group.exp(group.generator(), x) == keys[j - 1])) {
      throw std::invalid_argument("attack: coalition secret does not match public key");
    }
  }
  const auto seed = protocol::detail::seed_from_keys(group, keys, group.order());
  return detail::run_attack(group, group.generator(), params, seed, round, contributions,
                            coalition, messages, [&](std::size_t i, const BigInt& e) {
                              return group.exp(keys[i - 1], e);
                            });
}

// kdkm: keys in G1, contributions in GT; cross terms are e(e * U_i, Q_k).
template <BilinearGroup E>
AttackReport partition_attack(const E& pairing, const protocol::ProtocolParams& params,
                              std::span<const typename E::G1::Element> keys, std::uint64_t round,
                              std::span<const protocol::Contribution<typename E::GT::Element>> contributions,
                              std::span<const std::pair<std::size_t, BigInt>> coalition_secrets,
                              std::span<const std::uint64_t> messages) {
  params.validate();
  const auto& g1 = pairing.g1();
  auto coalition = detail::coalition_map(coalition_secrets, params.n);
  for (const auto& [j, x] : coalition) {
    if (!(g1.exp(pairing.p1(), x) == keys[j - 1])) {
      throw std::invalid_argument("attack: coalition secret does not match public key");
    }
  }
  const auto seed = protocol::detail::seed_from_keys(g1, keys, g1.order());
  const auto q = pairing.hash_to_g2(round);
  return detail::run_attack(pairing.gt(), pairing.gt_generator(), params, seed, round,
                            contributions, coalition, messages,
                            [&](std::size_t i, const BigInt& e) {
                              return pairing.pair(g1.exp(keys[i - 1], e), q);
                            });
}

}  // namespace privagg::analysis
