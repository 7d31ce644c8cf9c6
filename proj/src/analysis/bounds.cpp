#include "privagg/analysis/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace privagg::analysis {

PclBounds pcl_bounds(std::size_t n, std::size_t t, std::optional<std::uint64_t> rounds) {
  if (n == 0 || t >= n) throw std::invalid_argument("pcl bounds: need 0 <= t < n");
  if (rounds && *rounds == 0) throw std::invalid_argument("pcl bounds: rounds must be positive");
  PclBounds b;
  b.n = n;
  b.t = t;
  b.max_rounds = (n - t) / 2;
  b.rounds = rounds.value_or(b.max_rounds);
  b.feasible = b.rounds >= 1 && b.rounds <= b.max_rounds;
  b.min_nonholes = 2 * b.rounds + t;
  b.exponentiations_per_round = b.min_nonholes + 1;
  b.max_alpha = static_cast<std::int64_t>(n - t) - 2 * static_cast<std::int64_t>(b.rounds);
  return b;
}

std::uint64_t kdk_nonholes_extra(std::size_t n) {
  if (n == 0) throw std::invalid_argument("kdk bounds: n must be positive");
  const std::uint64_t need = 2 * (static_cast<std::uint64_t>(n) - 1);
  auto x = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(need)));
  while (x > 1 && x * (x - 1) >= need) --x;
  if (x == 0) x = 1;
  while (x * (x - 1) < need) ++x;
  return x;
}

KdkHoleBounds kdk_hole_bounds(std::size_t n, double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("kdk bounds: tau must be in [0, 1)");
  KdkHoleBounds b;
  b.n = n;
  b.tau = tau;
  b.nonholes_extra = kdk_nonholes_extra(n);
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(8.0 * nn - 7.0);
  b.alpha_bound = (1.0 - tau) * nn - root / 2.0 - 0.5;
  b.alpha_bound_literal = (tau - 1.0) * nn - root / 2.0 - 0.5;
  // Small slack so that exact integers are not lost to rounding.
  b.max_alpha = static_cast<std::int64_t>(std::floor(b.alpha_bound + 1e-9));
  b.holes_possible = b.max_alpha >= 1;
  b.load_fraction = tau + static_cast<double>(b.nonholes_extra) / nn;
  return b;
}

void to_json(nlohmann::json& j, const PclBounds& b) {
  j = {{"protocol", "pcl"},
       {"n", b.n},
       {"t", b.t},
       {"rounds", b.rounds},
       {"max_rounds", b.max_rounds},
       {"feasible", b.feasible},
       {"min_nonholes_per_round", b.min_nonholes},
       {"exponentiations_per_round", b.exponentiations_per_round},
       {"max_alpha", b.max_alpha}};
}

void to_json(nlohmann::json& j, const KdkHoleBounds& b) {
  j = {{"protocol", "kdkm"},
       {"n", b.n},
       {"tau", b.tau},
       {"nonholes_extra", b.nonholes_extra},
       {"kdk_max_alpha", b.max_alpha},
       {"holes_possible", b.holes_possible},
       {"kdk_load_fraction", b.load_fraction},
       {"alpha_bound", b.alpha_bound},
       {"alpha_bound_literal", b.alpha_bound_literal}};
}

}  // namespace privagg::analysis
