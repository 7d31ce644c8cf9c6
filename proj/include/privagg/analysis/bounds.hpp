#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace privagg::analysis {

struct PclBounds {
  std::size_t n = 0;
  std::size_t t = 0;
  std::uint64_t rounds = 0;      // l, defaults to max_rounds
  std::uint64_t max_rounds = 0;  // floor((n - t) / 2)
  bool feasible = false;         // rounds <= max_rounds
  std::uint64_t min_nonholes = 0;               // 2l + t
  std::uint64_t exponentiations_per_round = 0;  // 2l + t + 1
  // Largest alpha with l <= (n - t - alpha) / 2; negative when infeasible.
  std::int64_t max_alpha = 0;
};

// Requires t < n and rounds >= 1 when given.
PclBounds pcl_bounds(std::size_t n, std::size_t t, std::optional<std::uint64_t> rounds = {});

// Least x with x(x-1)/2 >= n-1: the non-hole count needed beyond the
// coalition, equal to ceil((1 + sqrt(8n - 7)) / 2).
std::uint64_t kdk_nonholes_extra(std::size_t n);

struct KdkHoleBounds {
  std::size_t n = 0;
  double tau = 0;
  std::uint64_t nonholes_extra = 0;
  std::int64_t max_alpha = 0;  // floor((1 - tau) n - (1 + sqrt(8n - 7)) / 2)
  bool holes_possible = false;
  double load_fraction = 0;  // tau + nonholes_extra / n
  double alpha_bound = 0;          // (1 - tau) n - sqrt(8n - 7)/2 - 1/2
  double alpha_bound_literal = 0;  // (tau - 1) n - sqrt(8n - 7)/2 - 1/2, as printed
};

// Requires n >= 1 and 0 <= tau < 1.
KdkHoleBounds kdk_hole_bounds(std::size_t n, double tau);

void to_json(nlohmann::json& j, const PclBounds& b);
void to_json(nlohmann::json& j, const KdkHoleBounds& b);

}  // namespace privagg::analysis
