#pragma once

// Party state machines and the aggregator. GroupParty covers kdk1 and pcl
// (keys and contributions in one group); PairingParty covers kdkm (keys in
// G1, contributions in GT).

#include "privagg/dlog/dlog.hpp"
#include "privagg/group/group.hpp"
#include "privagg/hash.hpp"
#include "privagg/matrixgen/matrixgen.hpp"
#include "privagg/protocol/params.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace privagg::protocol {

template <class Element>
struct Contribution {
  std::uint64_t round = 0;
  std::size_t party = 0;
  Element value;
};

template <class Element>
struct AggregateResult {
  std::uint64_t round = 0;
  std::uint64_t sigma = 0;
  Element product;  // prod v_j, before the discrete log
  std::uint64_t dlog_ops = 0;
};

namespace detail {

// Uniform in [1, order).
inline BigInt sample_secret(const BigInt& order, std::span<const std::uint8_t> randomness,
                            std::size_t index) {
  HashInput in("privagg/secret");
  in.u64(index).bytes(randomness);
  HashStream stream(in.data());
  return stream.uniform(BigInt(order - 1)) + 1;
}

inline BigInt checked_secret(const BigInt& order, const BigInt& x) {
  BigInt r = mod_reduce(x, order);
  if (sgn(r) == 0) throw ProtocolError("setup: secret must be non-zero mod p");
  return r;
}

// Shared round bookkeeping; throws on replay, skipped rounds, the pcl bound
// and out-of-range messages.
inline void check_round(const ProtocolParams& params, std::uint64_t expected, std::uint64_t round,
                        std::uint64_t message) {
  if (round < expected) {
    throw ProtocolError("round " + std::to_string(round) + " already contributed (replay)");
  }
  if (round > expected) {
    throw ProtocolError("round " + std::to_string(round) + " out of order, expected " +
                        std::to_string(expected));
  }
  if (params.variant != Variant::kdk_multi && round > params.max_rounds) {
    throw ProtocolError("round " + std::to_string(round) + " exceeds the limit of " +
                        std::to_string(params.max_rounds));
  }
  if (message > params.beta) {
    throw ProtocolError("message " + std::to_string(message) + " exceeds beta = " +
                        std::to_string(params.beta));
  }
}

template <class Key>
void check_key_count(const ProtocolParams& params, std::span<const Key> keys) {
  if (keys.size() != params.n) {
    throw ProtocolError("finalize: expected " + std::to_string(params.n) + " keys, got " +
                        std::to_string(keys.size()));
  }
}

template <PrimeOrderGroup G>
matrixgen::Seed seed_from_keys(const G& group, std::span<const typename G::Element> keys,
                               const BigInt& order) {
  std::vector<Bytes> enc;
  enc.reserve(keys.size());
  for (const auto& k : keys) {
    if (!group.is_element(k)) throw ProtocolError("finalize: invalid public key");
    enc.push_back(group.encode(k));
  }
  return matrixgen::derive_seed(enc, order);
}

}  // namespace detail

template <PrimeOrderGroup G>
class GroupParty {
 public:
  using KeyGroup = G;
  using AggGroup = G;
  using Key = typename G::Element;
  using Element = typename G::Element;

  GroupParty(const G& group, ProtocolParams params, std::size_t index,
             std::span<const std::uint8_t> randomness)
      : GroupParty(group, std::move(params), index,
                   detail::sample_secret(group.order(), randomness, index)) {}

  // Test hook: fixed secret.
  static GroupParty with_secret(const G& group, ProtocolParams params, std::size_t index,
                                const BigInt& x) {
    return GroupParty(group, std::move(params), index, x);
  }

  std::size_t index() const { return index_; }
  const BigInt& secret() const { return x_; }
  const Key& public_key() const { return u_; }
  std::uint64_t current_round() const { return round_; }
  bool finalized() const { return finalized_; }
  const matrixgen::Seed& seed() const { return seed_; }
  const ProtocolParams& params() const { return params_; }
  const G& key_group() const { return *group_; }
  const G& agg_group() const { return *group_; }
  Element aggregation_base() const { return group_->generator(); }

  void finalize_setup(std::span<const Key> keys) {
    detail::check_key_count(params_, keys);
    if (!(keys[index_ - 1] == u_)) throw ProtocolError("finalize: own key mismatch");
    seed_ = detail::seed_from_keys(*group_, keys, group_->order());
    keys_.assign(keys.begin(), keys.end());
    const auto& plan = params_.topology;
    if (plan.coefficients == matrixgen::Coefficients::sign) {
      // Sign matrix: u_j^{-1} for j < i, cached once so rounds only multiply.
      for (std::size_t j = 1; j < index_; ++j) keys_[j - 1] = group_->inverse(keys_[j - 1]);
    }
    if (plan.fixed) pattern_ = matrixgen::pattern_for(plan, seed_, 0);
    finalized_ = true;
  }

  Contribution<Element> compute_contribution(std::uint64_t round, std::uint64_t message) {
    if (!finalized_) throw ProtocolError("contribution before finalize_setup");
    detail::check_round(params_, round_, round, message);
    const auto& plan = params_.topology;
    const G& g = *group_;
    const auto pattern = pattern_ ? *pattern_ : matrixgen::pattern_for(plan, seed_, round);

    Element v;
    if (plan.coefficients == matrixgen::Coefficients::sign) {
      std::optional<Element> w;
      for (std::size_t j : pattern.neighbors(index_)) {
        w = w ? g.mul(*w, keys_[j - 1]) : keys_[j - 1];
      }
      v = g.exp(g.generator(), from_u64(message));
      if (w) v = g.mul(g.exp(*w, x_), v);
    } else {
      // prod_j u_j^{A_ij x_i} g^{m_i}
      const auto row = matrixgen::chi_row(plan, pattern, seed_, round, index_, g.order());
      v = g.exp(g.generator(), from_u64(message));
      BigInt e;
      for (const auto& entry : row.entries) {
        e = entry.coefficient * x_;
        v = g.mul(v, g.exp(keys_[entry.column - 1], e));
      }
    }
    ++round_;
    return {round, index_, std::move(v)};
  }

 private:
  GroupParty(const G& group, ProtocolParams params, std::size_t index, const BigInt& x)
      : group_(&group), params_(std::move(params)), index_(index) {
    params_.validate();
    if (index < 1 || index > params_.n) throw ProtocolError("setup: party index outside [1, n]");
    x_ = detail::checked_secret(group.order(), x);
    u_ = group.exp(group.generator(), x_);
  }

  const G* group_;
  ProtocolParams params_;
  std::size_t index_;
  BigInt x_;
  Key u_;
  std::vector<Key> keys_;
  matrixgen::Seed seed_;
  std::optional<matrixgen::SparsityPattern> pattern_;
  std::uint64_t round_ = 1;
  bool finalized_ = false;
};

template <BilinearGroup E>
class PairingParty {
 public:
  using KeyGroup = typename E::G1;
  using AggGroup = typename E::GT;
  using Key = typename E::G1::Element;
  using Element = typename E::GT::Element;

  PairingParty(const E& pairing, ProtocolParams params, std::size_t index,
               std::span<const std::uint8_t> randomness)
      : PairingParty(pairing, std::move(params), index,
                     detail::sample_secret(pairing.g1().order(), randomness, index)) {}

  static PairingParty with_secret(const E& pairing, ProtocolParams params, std::size_t index,
                                  const BigInt& x) {
    return PairingParty(pairing, std::move(params), index, x);
  }

  std::size_t index() const { return index_; }
  const BigInt& secret() const { return x_; }
  const Key& public_key() const { return u_; }
  std::uint64_t current_round() const { return round_; }
  bool finalized() const { return finalized_; }
  const matrixgen::Seed& seed() const { return seed_; }
  const ProtocolParams& params() const { return params_; }
  const KeyGroup& key_group() const { return e_->g1(); }
  const AggGroup& agg_group() const { return e_->gt(); }
  Element aggregation_base() const { return e_->gt_generator(); }
  // Number of keys stored negated (sign matrix, j < i).
  std::size_t negated_keys() const { return negated_; }

  void finalize_setup(std::span<const Key> keys) {
    detail::check_key_count(params_, keys);
    if (!(keys[index_ - 1] == u_)) throw ProtocolError("finalize: own key mismatch");
    const auto& g1 = e_->g1();
    const BigInt& p = g1.order();
    seed_ = detail::seed_from_keys(g1, keys, p);
    const auto& plan = params_.topology;
    const auto pattern = matrixgen::pattern_for(plan, seed_, 0);
    const auto row = matrixgen::chi_row(plan, pattern, seed_, 0, index_, p);
    // Fold the fixed coefficients into the keys now, so rounds need no
    // inversions: -U_j for a sign matrix, A_ij U_j otherwise.
    prepared_.clear();
    negated_ = 0;
    for (const auto& entry : row.entries) {
      const Key& k = keys[entry.column - 1];
      if (plan.coefficients == matrixgen::Coefficients::sign) {
        if (entry.column < index_) {
          prepared_.push_back(g1.inverse(k));
          ++negated_;
        } else {
          prepared_.push_back(k);
        }
      } else {
        prepared_.push_back(g1.exp(k, entry.coefficient));
      }
    }
    finalized_ = true;
  }

  Contribution<Element> compute_contribution(std::uint64_t round, std::uint64_t message) {
    if (!finalized_) throw ProtocolError("contribution before finalize_setup");
    detail::check_round(params_, round_, round, message);
    const auto& gt = e_->gt();
    const auto q = e_->hash_to_g2(round);
    std::optional<Element> w;
    for (const auto& k : prepared_) {
      auto term = e_->pair(k, q);
      w = w ? gt.mul(*w, term) : term;
    }
    Element v = gt.exp(e_->gt_generator(), from_u64(message));
    if (w) v = gt.mul(gt.exp(*w, x_), v);
    ++round_;
    return {round, index_, std::move(v)};
  }

 private:
  PairingParty(const E& pairing, ProtocolParams params, std::size_t index, const BigInt& x)
      : e_(&pairing), params_(std::move(params)), index_(index) {
    params_.validate();
    if (params_.variant != Variant::kdk_multi) {
      throw ProtocolError("setup: pairing parties run kdkm only");
    }
    if (index < 1 || index > params_.n) throw ProtocolError("setup: party index outside [1, n]");
    x_ = detail::checked_secret(pairing.g1().order(), x);
    u_ = pairing.g1().exp(pairing.p1(), x_);
  }

  const E* e_;
  ProtocolParams params_;
  std::size_t index_;
  BigInt x_;
  Key u_;
  std::vector<Key> prepared_;
  std::size_t negated_ = 0;
  matrixgen::Seed seed_;
  std::uint64_t round_ = 1;
  bool finalized_ = false;
};

// z = prod v_j, then sigma = dlog_base(z) in [0, n beta]. Requires exactly
// one contribution per party, all for `round`.
template <PrimeOrderGroup G>
AggregateResult<typename G::Element> aggregate(
    const G& group, const typename G::Element& base, const ProtocolParams& params,
    std::uint64_t round, std::span<const Contribution<typename G::Element>> contributions,
    const dlog::LambdaOptions& options = {}) {
  if (contributions.size() != params.n) {
    throw ProtocolError("aggregate: expected " + std::to_string(params.n) +
                        " contributions, got " + std::to_string(contributions.size()));
  }
  std::vector<bool> seen(params.n + 1, false);
  auto z = group.identity();
  bool first = true;
  for (const auto& c : contributions) {
    if (c.round != round) throw ProtocolError("aggregate: contribution for the wrong round");
    if (c.party < 1 || c.party > params.n) throw ProtocolError("aggregate: unknown party");
    if (seen[c.party]) {
      throw ProtocolError("aggregate: duplicate party " + std::to_string(c.party));
    }
    seen[c.party] = true;
    if (!group.is_element(c.value)) throw ProtocolError("aggregate: invalid group element");
    z = first ? c.value : group.mul(z, c.value);
    first = false;
  }
  auto found = dlog::pollard_lambda(group, base, z, {0, params.max_sum()}, options);
  if (!found.value) {
    throw ProtocolError("aggregate: no discrete log in [0, n*beta] for round " +
                        std::to_string(round));
  }
  return {round, *found.value, std::move(z), found.group_ops};
}

}  // namespace privagg::protocol
