#include "privagg/matrixgen/matrixgen.hpp"
#include "privagg/matrixgen/serialize.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace privagg;
using namespace privagg::matrixgen;

namespace {

const BigInt kSmallP("2305843009213693951");  // 2^61 - 1
const BigInt kToyP(101);

Seed seed_of(std::uint64_t v) { return Seed{from_u64(v)}; }

TopologyPlan full_plan(std::size_t n) { return TopologyPlan{n, FullTopology{}}; }

TopologyPlan holes_plan(std::size_t n, std::size_t alpha, bool fixed = false) {
  return TopologyPlan{n, HoleTopology{alpha, std::vector<bool>(n, true), false},
                      Coefficients::pseudorandom, fixed};
}

// Independent circular-distance oracle: sort by (distance, index), keep m.
std::set<std::size_t> nn_oracle(std::size_t n, std::size_t m, std::size_t i) {
  std::vector<std::pair<std::size_t, std::size_t>> cand;
  for (std::size_t j = 1; j <= n; ++j) {
    if (j == i) continue;
    std::size_t d = i > j ? i - j : j - i;
    cand.emplace_back(std::min(d, n - d), j);
  }
  std::sort(cand.begin(), cand.end());
  std::set<std::size_t> out;
  for (std::size_t k = 0; k < m; ++k) out.insert(cand[k].second);
  return out;
}

// Every pattern the hole algorithm can output for some sampler behaviour.
void enumerate_holes(std::size_t n, std::size_t i, std::vector<long long> budget,
                     SparsityPattern pattern, std::set<std::vector<bool>>& out) {
  if (i > n) {
    std::vector<bool> flat;
    for (std::size_t a = 1; a <= n; ++a) {
      for (std::size_t b = 1; b <= n; ++b) flat.push_back(a != b && pattern.linked(a, b));
    }
    out.insert(flat);
    return;
  }
  std::vector<std::size_t> cand;
  for (std::size_t j = i + 1; j <= n; ++j) cand.push_back(j);
  const std::size_t take = std::min<std::size_t>(std::max<long long>(budget[i], 0), cand.size());
  // all subsets of cand with `take` elements
  for (unsigned mask = 0; mask < (1u << cand.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != take) continue;
    auto p = pattern;
    auto w = budget;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (mask >> k & 1) {
        p.cut(i, cand[k]);
        --w[cand[k]];
      }
    }
    enumerate_holes(n, i + 1, w, p, out);
  }
}

std::vector<bool> flatten(const SparsityPattern& p) {
  std::vector<bool> flat;
  for (std::size_t a = 1; a <= p.size(); ++a) {
    for (std::size_t b = 1; b <= p.size(); ++b) flat.push_back(a != b && p.linked(a, b));
  }
  return flat;
}

}  // namespace

TEST(MatrixGen, FullRowHasNMinusOneEntries) {
  auto row = chi_row(full_plan(5), seed_of(7), 1, 3, kSmallP);
  EXPECT_EQ(row.entries.size(), 4u);
  for (const auto& e : row.entries) {
    EXPECT_NE(e.column, 3u);
    EXPECT_NE(sgn(e.coefficient), 0);
  }
}

TEST(MatrixGen, UpperEntriesAreTheHashAndLowerAreNegated) {
  const auto s = seed_of(99);
  auto row2 = chi_row(full_plan(4), s, 3, 2, kSmallP);
  for (const auto& e : row2.entries) {
    if (e.column > 2) {
      EXPECT_EQ(e.coefficient, upper_coefficient(s, 3, 2, e.column, kSmallP));
    } else {
      EXPECT_EQ(e.coefficient, kSmallP - upper_coefficient(s, 3, e.column, 2, kSmallP));
    }
  }
}

TEST(MatrixGen, SkewSymmetricForEveryStrategyUpToSixteen) {
  for (std::size_t n = 2; n <= 16; ++n) {
    std::vector<TopologyPlan> plans{full_plan(n), holes_plan(n, (n - 2) / 2)};
    if (n >= 3) plans.push_back(TopologyPlan{n, NearestNeighborTopology{2}});
    TopologyPlan sign = full_plan(n);
    sign.coefficients = Coefficients::sign;
    sign.fixed = true;
    plans.push_back(sign);
    for (const auto& plan : plans) {
      for (const BigInt& p : {kToyP, kSmallP}) {
        auto a = assemble_matrix(plan, seed_of(n), 2, p);
        for (std::size_t i = 1; i <= n; ++i) {
          EXPECT_EQ(a.at(i, i), 0);
          for (std::size_t j = 1; j <= n; ++j) {
            EXPECT_EQ(mod_reduce(a.at(i, j) + a.at(j, i), p), 0) << n << " " << i << " " << j;
          }
        }
      }
    }
  }
}

TEST(MatrixGen, RowsAreIdenticalAcrossFreshCalls) {
  auto plan = holes_plan(9, 3);
  for (std::size_t i = 1; i <= 9; ++i) {
    auto a = chi_row(plan, seed_of(5), 4, i, kSmallP);
    auto b = chi_row(plan, seed_of(5), 4, i, kSmallP);
    EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
  }
}

TEST(MatrixGen, MasksCancelForRandomInputs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    auto a = assemble_matrix(holes_plan(n, rng() % (n - 1)), seed_of(rng()), 1 + rng() % 5, kSmallP);
    BigInt total = 0;
    std::vector<BigInt> x(n + 1);
    for (auto& v : x) v = from_u64(rng() % 1000000007);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) total += a.at(i, j) * x[i] * x[j];
    }
    EXPECT_EQ(mod_reduce(total, kSmallP), 0);
  }
}

TEST(MatrixGen, RoundChangesPcLMatrixButNotFixedOne) {
  auto plan = full_plan(6);
  EXPECT_NE(chi_row(plan, seed_of(1), 1, 1, kSmallP), chi_row(plan, seed_of(1), 2, 1, kSmallP));
  plan.fixed = true;
  auto r1 = chi_row(plan, seed_of(1), 1, 1, kSmallP);
  auto r2 = chi_row(plan, seed_of(1), 2, 1, kSmallP);
  EXPECT_EQ(r1.entries, r2.entries);
}

TEST(MatrixGen, SignCoefficientsFollowTheTriangle) {
  TopologyPlan plan = full_plan(5);
  plan.coefficients = Coefficients::sign;
  auto row = chi_row(plan, seed_of(1), 9, 3, kToyP);
  ASSERT_EQ(row.entries.size(), 4u);
  EXPECT_EQ(row.entries[0].coefficient, 100);  // -1
  EXPECT_EQ(row.entries[1].coefficient, 100);
  EXPECT_EQ(row.entries[2].coefficient, 1);
  EXPECT_EQ(row.entries[3].coefficient, 1);
}

TEST(MatrixGen, NearestNeighborMatchesDistanceOracle) {
  auto row = chi_row(TopologyPlan{10, NearestNeighborTopology{4}}, seed_of(1), 1, 1, kSmallP);
  std::set<std::size_t> cols;
  for (const auto& e : row.entries) cols.insert(e.column);
  EXPECT_EQ(cols, (std::set<std::size_t>{2, 3, 9, 10}));

  for (std::size_t n = 3; n <= 16; ++n) {
    for (std::size_t m = 2; m < n; m += 2) {
      auto p = nearest_neighbor_pattern(n, m);
      EXPECT_TRUE(p.symmetric());
      for (std::size_t i = 1; i <= n; ++i) {
        auto nb = p.neighbors(i);
        EXPECT_EQ(std::set<std::size_t>(nb.begin(), nb.end()), nn_oracle(n, m, i)) << n << " " << m;
      }
    }
  }
}

TEST(MatrixGen, NearestNeighborFiveFourIsComplete) {
  EXPECT_EQ(nearest_neighbor_pattern(5, 4), SparsityPattern(5, true));
}

TEST(MatrixGen, OddOrOversizedDegreeRejected) {
  EXPECT_THROW(nearest_neighbor_pattern(10, 3), TopologyError);
  EXPECT_THROW(nearest_neighbor_pattern(10, 10), TopologyError);
  EXPECT_THROW(nearest_neighbor_pattern(10, 0), TopologyError);
  try {
    nearest_neighbor_pattern(10, 5);
  } catch (const TopologyError& e) {
    EXPECT_NE(std::string(e.what()).find("round up to 6"), std::string::npos);
  }
}

TEST(MatrixGen, HolesAlphaZeroIsFull) {
  auto placed = place_holes(holes_plan(7, 0), seed_of(3), 1);
  EXPECT_EQ(placed.pattern, SparsityPattern(7, true));
  EXPECT_FALSE(placed.has_shortfall());
}

TEST(MatrixGen, HolesOnFourPartiesAgreeWithExhaustiveOutcomes) {
  std::set<std::vector<bool>> possible;
  enumerate_holes(4, 1, std::vector<long long>(5, 1), SparsityPattern(4, true), possible);
  for (const auto& flat : possible) {
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(flat[a * 4 + b], flat[b * 4 + a]);
    }
  }
  std::set<std::vector<bool>> seen;
  for (std::uint64_t s = 0; s < 300; ++s) {
    auto placed = place_holes(holes_plan(4, 1), seed_of(s), 1);
    auto flat = flatten(placed.pattern);
    EXPECT_TRUE(possible.contains(flat));
    seen.insert(flat);
    // A perfect matching leaves exactly one hole per row.
    std::size_t total = 0;
    bool all_one = true;
    for (std::size_t i = 1; i <= 4; ++i) {
      total += placed.pattern.holes(i);
      all_one = all_one && placed.pattern.holes(i) == 1;
    }
    if (all_one) EXPECT_EQ(total, 4u);
  }
  EXPECT_GT(seen.size(), 1u);
}

TEST(MatrixGen, SeekerHoleForcesReverseHole) {
  auto placed = place_holes(holes_plan(12, 4), seed_of(11), 2);
  EXPECT_TRUE(placed.pattern.symmetric());
  for (std::size_t i = 1; i <= 12; ++i) {
    if (std::find(placed.shortfall.begin(), placed.shortfall.end(), i) == placed.shortfall.end()) {
      EXPECT_GE(placed.pattern.holes(i), 4u) << i;
    }
  }
}

TEST(MatrixGen, LateSeekersReportShortfall) {
  TopologyPlan plan{6, HoleTopology{3, {false, false, false, false, true, true}, false}};
  auto placed = place_holes(plan, seed_of(1), 1);
  EXPECT_EQ(placed.shortfall, (std::vector<std::size_t>{5, 6}));
  EXPECT_EQ(placed.pattern.holes(5), 1u);
}

TEST(MatrixGen, SeekersOnlyRestrictsTargets) {
  TopologyPlan plan{8, HoleTopology{2, {true, false, true, false, true, false, true, true}, true}};
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto p = place_holes(plan, seed_of(s), 1).pattern;
    for (std::size_t i = 1; i <= 8; ++i) {
      for (std::size_t j = 1; j <= 8; ++j) {
        if (i != j && !p.linked(i, j)) {
          EXPECT_TRUE(std::get<HoleTopology>(plan.sparsity).seekers[i - 1]);
          EXPECT_TRUE(std::get<HoleTopology>(plan.sparsity).seekers[j - 1]);
        }
      }
    }
  }
}

TEST(MatrixGen, HolePatternIsDeterministicPerRound) {
  auto plan = holes_plan(10, 3);
  EXPECT_EQ(place_holes(plan, seed_of(4), 2).pattern, place_holes(plan, seed_of(4), 2).pattern);
  bool differs = false;
  for (std::uint64_t k = 2; k < 10 && !differs; ++k) {
    differs = !(place_holes(plan, seed_of(4), 1).pattern == place_holes(plan, seed_of(4), k).pattern);
  }
  EXPECT_TRUE(differs);
}

TEST(MatrixGen, SeedIsOrderSensitiveAndDeterministic) {
  std::vector<Bytes> keys{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  auto s1 = derive_seed(keys, kSmallP);
  EXPECT_EQ(s1, derive_seed(keys, kSmallP));
  auto changed = keys;
  changed[1][2] = 7;
  EXPECT_NE(s1, derive_seed(changed, kSmallP));
  auto permuted = keys;
  std::swap(permuted[0], permuted[2]);
  EXPECT_NE(s1, derive_seed(permuted, kSmallP));
  EXPECT_LT(s1.value, kSmallP);
  EXPECT_THROW(derive_seed(std::vector<Bytes>{}, kSmallP), std::invalid_argument);
}

TEST(MatrixGen, InvalidPlansRejected) {
  EXPECT_THROW(TopologyPlan(5, HoleTopology{4, std::vector<bool>(5, true)}).validate(), TopologyError);
  EXPECT_THROW(TopologyPlan(5, HoleTopology{1, std::vector<bool>(4, true)}).validate(), TopologyError);
  EXPECT_THROW(TopologyPlan(5, ExplicitTopology{{{1, 1}}}).validate(), TopologyError);
}

TEST(MatrixGen, JsonRoundTrip) {
  auto row = chi_row(full_plan(6), seed_of(2), 3, 4, kSmallP);
  nlohmann::json j = row;
  EXPECT_EQ(j["round"], 3);
  EXPECT_EQ(j["party"], 4);
  EXPECT_TRUE(j["entries"][0][1].is_string());
  EXPECT_EQ(j.get<MatrixRow>(), row);

  auto pattern = nearest_neighbor_pattern(8, 2);
  nlohmann::json pj = pattern;
  EXPECT_EQ(pj["edges"].size(), 8u);
  EXPECT_EQ(pj.get<SparsityPattern>(), pattern);
}
