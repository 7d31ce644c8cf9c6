#pragma once

// One simulated epoch: n parties on an in-process broadcast bus. Keys are
// published, every party finalizes, then each round all parties contribute
// (optionally in parallel, one OpenMP thread per party at a time) before the
// aggregator runs. Everything is a deterministic function of the trial seed.

#include "privagg/group/bn254/bn254.hpp"
#include "privagg/group/mock_pairing.hpp"
#include "privagg/group/modp_subgroup.hpp"
#include "privagg/harness/config.hpp"
#include "privagg/protocol/party.hpp"
#include "privagg/protocol/transcript.hpp"

#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

namespace privagg::harness {

template <PrimeOrderGroup G>
const G& aggregation_group(const G& g) {
  return g;
}
template <BilinearGroup E>
const typename E::GT& aggregation_group(const E& e) {
  return e.gt();
}
template <PrimeOrderGroup G>
typename G::Element aggregation_base(const G& g) {
  return g.generator();
}
template <BilinearGroup E>
typename E::GT::Element aggregation_base(const E& e) {
  return e.gt_generator();
}
template <PrimeOrderGroup G>
const G& key_group(const G& g) {
  return g;
}
template <BilinearGroup E>
const typename E::G1& key_group(const E& e) {
  return e.g1();
}

template <class Party>
struct Session {
  using Key = typename Party::Key;
  using Element = typename Party::Element;

  std::vector<Party> parties;
  std::vector<Key> keys;
  std::vector<std::vector<std::uint64_t>> messages;  // [round - 1][party - 1]
  std::vector<std::vector<protocol::Contribution<Element>>> contributions;
  std::vector<OpCounter> setup_ops;  // per party
  std::vector<OpCounter> round_ops;  // per party, all rounds
  protocol::Transcript transcript;
};

inline Bytes party_randomness(std::uint64_t seed, std::uint64_t trial, std::size_t party) {
  HashInput in("privagg/sim-party");
  in.u64(seed).u64(trial).u64(party);
  return in.data();
}

inline std::vector<std::vector<std::uint64_t>> draw_messages(std::uint64_t seed, std::uint64_t trial,
                                                             std::size_t n, std::uint64_t beta,
                                                             std::uint64_t rounds) {
  HashInput in("privagg/sim-messages");
  in.u64(seed).u64(trial);
  HashStream stream(in.data());
  std::vector<std::vector<std::uint64_t>> out(rounds, std::vector<std::uint64_t>(n));
  for (auto& round : out) {
    for (auto& m : round) m = stream.uniform(beta + 1);
  }
  return out;
}

namespace detail {

// Runs body(i) for i in [0, count), in parallel when asked; the first
// exception thrown by any worker is rethrown afterwards.
template <class F>
void for_each_party(std::size_t count, bool parallel, F&& body) {
  std::exception_ptr error;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(privagg_party_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Setup plus `rounds` rounds of contributions; aggregation is left to the
// caller. `messages` may be supplied, otherwise they are drawn from the seed.
template <class Party, class Backend>
Session<Party> run_session(const Backend& backend, const protocol::ProtocolParams& params,
                           std::uint64_t seed, std::uint64_t trial, std::uint64_t rounds,
                           bool parallel,
                           std::optional<std::vector<std::vector<std::uint64_t>>> messages = {}) {
  const std::size_t n = params.n;
  Session<Party> s;
  s.transcript = protocol::Transcript(params.variant);
  s.setup_ops.assign(n, OpCounter{});
  s.round_ops.assign(n, OpCounter{});
  s.messages = messages ? std::move(*messages) : draw_messages(seed, trial, n, params.beta, rounds);

  std::vector<std::optional<Party>> built(n);
  detail::for_each_party(n, parallel, [&](std::size_t i) {
    CountingScope scope(s.setup_ops[i]);
    built[i].emplace(backend, params, i + 1, party_randomness(seed, trial, i + 1));
  });
  for (auto& p : built) s.parties.push_back(std::move(*p));
  for (const auto& p : s.parties) s.keys.push_back(p.public_key());

  const auto& kg = key_group(backend);
  for (std::size_t i = 0; i < n; ++i) s.transcript.add_key(i + 1, kg.encode(s.keys[i]));

  detail::for_each_party(n, parallel, [&](std::size_t i) {
    CountingScope scope(s.setup_ops[i]);
    s.parties[i].finalize_setup(s.keys);
  });

  const auto& ag = aggregation_group(backend);
  for (std::uint64_t k = 1; k <= rounds; ++k) {
    std::vector<std::optional<protocol::Contribution<typename Party::Element>>> out(n);
    detail::for_each_party(n, parallel, [&](std::size_t i) {
      CountingScope scope(s.round_ops[i]);
      out[i] = s.parties[i].compute_contribution(k, s.messages[k - 1][i]);
    });
    auto& round = s.contributions.emplace_back();
    for (auto& c : out) {
      s.transcript.add_contribution(k, c->party, ag.encode(c->value));
      round.push_back(std::move(*c));
    }
  }
  return s;
}

// Calls f(backend, std::type_identity<Party>{}) with the backend and party
// type selected by the config.
template <class F>
decltype(auto) dispatch(protocol::Variant variant, Backend backend, F&& f) {
  using protocol::GroupParty;
  using protocol::PairingParty;
  if (variant == protocol::Variant::kdk_multi) {
    if (backend == Backend::prod) {
      static const Bn254Pairing pairing;
      return f(pairing, std::type_identity<PairingParty<Bn254Pairing>>{});
    }
    // No pairing exists on the small subgroup; both test selectors use the mock.
    static const MockPairing mock = MockPairing::default_test();
    return f(mock, std::type_identity<PairingParty<MockPairing>>{});
  }
  switch (backend) {
    case Backend::prod: {
      static const Bn254G1 g1;
      return f(g1, std::type_identity<GroupParty<Bn254G1>>{});
    }
    case Backend::test: {
      static const ModpSubgroup group = ModpSubgroup::default_test();
      return f(group, std::type_identity<GroupParty<ModpSubgroup>>{});
    }
    case Backend::mock:
    default: {
      static const MockAdditiveGroup group(insecure, MockPairing::default_test().g1().order_u64());
      return f(group, std::type_identity<GroupParty<MockAdditiveGroup>>{});
    }
  }
}

}  // namespace privagg::harness
