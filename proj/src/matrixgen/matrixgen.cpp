#include "privagg/matrixgen/matrixgen.hpp"

#include "privagg/hash.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace privagg::matrixgen {

namespace {

struct PlanValidator {
  std::size_t n;
  void operator()(const FullTopology&) const {}
  void operator()(const HoleTopology& h) const {
    if (h.seekers.size() != n) throw TopologyError("holes: seeker vector must have length n");
    if (n < 2 || h.alpha >= n - 1) throw TopologyError("holes: alpha must be below n - 1");
  }
  void operator()(const NearestNeighborTopology& nn) const {
    if (nn.degree >= n) throw TopologyError("nearest-neighbor: degree must be below n");
    if (nn.degree < 2) throw TopologyError("nearest-neighbor: degree must be at least 2");
    if (nn.degree % 2 != 0) {
      throw TopologyError("nearest-neighbor: degree " + std::to_string(nn.degree) +
                          " is odd; round up to " + std::to_string(nn.degree + 1));
    }
  }
  void operator()(const ExplicitTopology& e) const {
    for (auto [i, j] : e.edges) {
      if (i < 1 || j < 1 || i > n || j > n || i == j) {
        throw TopologyError("explicit: edge endpoints must be distinct parties in [1, n]");
      }
    }
  }
};

}  // namespace

void TopologyPlan::validate() const {
  if (n == 0) throw TopologyError("topology: n must be positive");
  std::visit(PlanValidator{n}, sparsity);
}

SparsityPattern::SparsityPattern(std::size_t n, bool complete) : n_(n), adj_(n * n, 0) {
  if (complete) {
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) adj_[(i - 1) * n + (j - 1)] = i != j;
    }
  }
}

void SparsityPattern::check(std::size_t i, std::size_t j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_ || i == j) {
    throw TopologyError("pattern: invalid off-diagonal position");
  }
}

void SparsityPattern::link(std::size_t i, std::size_t j) {
  check(i, j);
  adj_[(i - 1) * n_ + (j - 1)] = 1;
  adj_[(j - 1) * n_ + (i - 1)] = 1;
}

void SparsityPattern::cut(std::size_t i, std::size_t j) {
  check(i, j);
  adj_[(i - 1) * n_ + (j - 1)] = 0;
  adj_[(j - 1) * n_ + (i - 1)] = 0;
}

std::size_t SparsityPattern::degree(std::size_t i) const {
  auto row = adj_.begin() + static_cast<std::ptrdiff_t>((i - 1) * n_);
  return static_cast<std::size_t>(std::count(row, row + static_cast<std::ptrdiff_t>(n_), 1));
}

std::vector<std::size_t> SparsityPattern::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= n_; ++j) {
    if (j != i && linked(i, j)) out.push_back(j);
  }
  return out;
}

bool SparsityPattern::symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (adj_[i * n_ + i]) return false;
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (adj_[i * n_ + j] != adj_[j * n_ + i]) return false;
    }
  }
  return true;
}

Seed derive_seed(std::span<const Bytes> encoded_keys, const BigInt& p) {
  if (encoded_keys.empty()) throw std::invalid_argument("derive_seed: empty key list");
  HashInput in("privagg/seed");
  in.u64(encoded_keys.size());
  for (const auto& k : encoded_keys) in.u32(static_cast<std::uint32_t>(k.size())).bytes(k);
  return Seed{hash_to_zp(in.data(), p)};
}

BigInt upper_coefficient(const Seed& seed, std::uint64_t round, std::size_t i, std::size_t j,
                         const BigInt& p) {
  const std::size_t width = byte_width(p);
  for (std::uint32_t retry = 0;; ++retry) {
    HashInput in("privagg/chi");
    in.integer(seed.value, width).u64(round).u64(i).u64(j).u32(retry);
    BigInt c = hash_to_zp(in.data(), p);
    if (sgn(c) != 0) return c;
  }
}

SparsityPattern nearest_neighbor_pattern(std::size_t n, std::size_t degree) {
  TopologyPlan{n, NearestNeighborTopology{degree}}.validate();
  SparsityPattern pattern(n);
  const std::size_t reach = degree / 2;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const std::size_t d = std::min(j - i, n - (j - i));
      if (d <= reach) pattern.link(i, j);
    }
  }
  return pattern;
}

HolePlacement place_holes(const TopologyPlan& plan, const Seed& seed, std::uint64_t round) {
  plan.validate();
  const auto* holes = std::get_if<HoleTopology>(&plan.sparsity);
  if (!holes) throw TopologyError("place_holes: plan does not use the holes strategy");
  const std::size_t n = plan.n;
  const std::uint64_t k = plan.effective_round(round);

  HolePlacement out{SparsityPattern(n, true), {}};
  std::vector<long long> budget(n + 1, static_cast<long long>(holes->alpha));
  for (std::size_t i = 1; i <= n; ++i) {
    if (!holes->seekers[i - 1]) continue;
    std::vector<std::size_t> candidates;
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (!holes->seekers_only || holes->seekers[j - 1]) candidates.push_back(j);
    }
    const auto want = static_cast<std::size_t>(std::max<long long>(budget[i], 0));
    if (want > candidates.size()) out.shortfall.push_back(i);
    const std::size_t take = std::min(want, candidates.size());

    HashInput in("privagg/holes");
    in.integer(seed.value, std::max<std::size_t>(1, byte_width(seed.value))).u64(k).u64(i);
    HashStream stream(in.data());
    // Partial Fisher-Yates: the first `take` slots form the sampled subset.
    for (std::size_t s = 0; s < take; ++s) {
      const std::size_t pick = s + stream.uniform(candidates.size() - s);
      std::swap(candidates[s], candidates[pick]);
      const std::size_t j = candidates[s];
      out.pattern.cut(i, j);
      --budget[j];
    }
  }
  return out;
}

SparsityPattern pattern_for(const TopologyPlan& plan, const Seed& seed, std::uint64_t round) {
  plan.validate();
  struct Builder {
    const TopologyPlan& plan;
    const Seed& seed;
    std::uint64_t round;
    SparsityPattern operator()(const FullTopology&) const { return SparsityPattern(plan.n, true); }
    SparsityPattern operator()(const HoleTopology&) const {
      return place_holes(plan, seed, round).pattern;
    }
    SparsityPattern operator()(const NearestNeighborTopology& nn) const {
      return nearest_neighbor_pattern(plan.n, nn.degree);
    }
    SparsityPattern operator()(const ExplicitTopology& e) const {
      SparsityPattern p(plan.n);
      for (auto [i, j] : e.edges) p.link(i, j);
      return p;
    }
  };
  return std::visit(Builder{plan, seed, round}, plan.sparsity);
}

MatrixRow chi_row(const TopologyPlan& plan, const SparsityPattern& pattern, const Seed& seed,
                  std::uint64_t round, std::size_t party, const BigInt& p) {
  if (party < 1 || party > plan.n) throw std::out_of_range("chi_row: party outside [1, n]");
  if (pattern.size() != plan.n) throw TopologyError("chi_row: pattern size mismatch");
  const std::uint64_t k = plan.effective_round(round);
  MatrixRow row{round, party, {}};
  for (std::size_t j = 1; j <= plan.n; ++j) {
    if (j == party || !pattern.linked(party, j)) continue;
    BigInt c;
    if (plan.coefficients == Coefficients::sign) {
      c = j > party ? BigInt(1) : p - 1;
    } else if (party < j) {
      c = upper_coefficient(seed, k, party, j, p);
    } else {
      c = p - upper_coefficient(seed, k, j, party, p);
    }
    row.entries.push_back({j, std::move(c)});
  }
  return row;
}

MatrixRow chi_row(const TopologyPlan& plan, const Seed& seed, std::uint64_t round,
                  std::size_t party, const BigInt& p) {
  return chi_row(plan, pattern_for(plan, seed, round), seed, round, party, p);
}

DenseMatrix assemble_matrix(const TopologyPlan& plan, const Seed& seed, std::uint64_t round,
                            const BigInt& p) {
  auto pattern = pattern_for(plan, seed, round);
  DenseMatrix m{plan.n, std::vector<BigInt>(plan.n * plan.n, BigInt(0))};
  for (std::size_t i = 1; i <= plan.n; ++i) {
    for (auto& e : chi_row(plan, pattern, seed, round, i, p).entries) {
      m.at(i, e.column) = std::move(e.coefficient);
    }
  }
  return m;
}

}  // namespace privagg::matrixgen
