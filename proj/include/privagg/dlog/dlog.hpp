#pragma once

// Discrete logs over a known interval: Pollard's lambda (kangaroo) for real
// use, baby-step/giant-step and linear scan as exact oracles.

#include "privagg/group/group.hpp"
#include "privagg/hash.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace privagg::dlog {

class DlogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DlogRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t width() const { return hi - lo; }
};

struct LambdaOptions {
  std::uint64_t seed = 1;
  int attempts = 8;
  double budget_factor = 100.0;  // walk steps per attempt, times sqrt(width + 1)
};

struct DlogResult {
  std::optional<std::uint64_t> value;
  std::uint64_t group_ops = 0;  // multiplications spent walking or scanning
  int attempts = 0;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t isqrt_ceil(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v ? r : r + 1;
}

inline void check_range(const BigInt& order, const DlogRange& range) {
  if (range.hi < range.lo) throw DlogError("dlog: hi below lo");
  if (from_u64(range.width()) >= order) throw DlogError("dlog: range wider than the group order");
}

template <PrimeOrderGroup G>
DlogResult linear_scan(const G& group, const typename G::Element& base,
                       const typename G::Element& target, const DlogRange& range) {
  DlogResult out;
  auto cur = group.exp(base, from_u64(range.lo));
  for (std::uint64_t s = range.lo;; ++s) {
    if (cur == target) {
      out.value = s;
      return out;
    }
    if (s == range.hi) return out;
    cur = group.mul(cur, base);
    ++out.group_ops;
  }
}

}  // namespace detail

// Exponent of `target` to `base` inside [lo, hi], or nothing once every
// attempt has spent its budget. Jumps are fixed per attempt by the seed.
template <PrimeOrderGroup G>
DlogResult pollard_lambda(const G& group, const typename G::Element& base,
                          const typename G::Element& target, const DlogRange& range,
                          const LambdaOptions& options = {}) {
  detail::check_range(group.order(), range);
  const std::uint64_t width = range.width();
  if (width <= 64) return detail::linear_scan(group, base, target, range);

  const std::uint64_t root = detail::isqrt_ceil(width);
  const int log2w = std::bit_width(width);
  const std::size_t k = static_cast<std::size_t>((log2w + 1) / 2 + 2);
  const auto budget = static_cast<std::uint64_t>(options.budget_factor *
                                                 std::sqrt(static_cast<double>(width) + 1.0));
  const auto hi_elem = group.exp(base, from_u64(range.hi));

  DlogResult out;
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    out.attempts = attempt + 1;
    HashInput in("privagg/kangaroo");
    in.u64(options.seed).u64(static_cast<std::uint64_t>(attempt)).u64(range.lo).u64(range.hi);
    HashStream stream(in.data());
    std::vector<std::uint64_t> jumps(k);
    std::vector<typename G::Element> steps;
    steps.reserve(k);
    for (auto& s : jumps) {
      s = 1 + stream.uniform(root);
      steps.push_back(group.exp(base, from_u64(s)));
    }
    const std::uint64_t salt = stream.next_u64();
    auto pick = [&](const typename G::Element& e) {
      return static_cast<std::size_t>(detail::splitmix(group.fingerprint(e) ^ salt) % k);
    };

    // Tame kangaroo from g^hi; its resting point is the trap.
    auto tame = hi_elem;
    std::uint64_t tame_dist = 0;
    for (std::uint64_t i = 0; i < 2 * root; ++i) {
      const std::size_t j = pick(tame);
      tame = group.mul(tame, steps[j]);
      tame_dist += jumps[j];
    }
    out.group_ops += 2 * root;

    // Wild kangaroo from the target; give up once it is past the trap.
    auto wild = target;
    std::uint64_t wild_dist = 0;
    const std::uint64_t limit = width + tame_dist;
    for (std::uint64_t i = 0; i < budget && wild_dist <= limit; ++i) {
      if (wild == tame) {
        // lo <= hi + tame_dist - wild_dist <= hi when the answer is in range
        if (wild_dist >= tame_dist && wild_dist - tame_dist <= width) {
          out.value = range.hi - (wild_dist - tame_dist);
          return out;
        }
        break;
      }
      const std::size_t j = pick(wild);
      wild = group.mul(wild, steps[j]);
      wild_dist += jumps[j];
      ++out.group_ops;
    }
  }
  return out;
}

template <PrimeOrderGroup G>
DlogResult pollard_lambda(const G& group, const typename G::Element& target,
                          const DlogRange& range, const LambdaOptions& options = {}) {
  return pollard_lambda(group, group.generator(), target, range, options);
}

inline constexpr std::uint64_t kOracleMaxWidth = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kLinearScanWidth = std::uint64_t{1} << 16;

// Exact answer: linear scan for narrow ranges, baby-step/giant-step otherwise.
template <PrimeOrderGroup G>
DlogResult dlog_oracle(const G& group, const typename G::Element& base,
                       const typename G::Element& target, const DlogRange& range) {
  detail::check_range(group.order(), range);
  const std::uint64_t width = range.width();
  if (width > kOracleMaxWidth) throw DlogError("dlog oracle: range too large");
  if (width <= kLinearScanWidth) return detail::linear_scan(group, base, target, range);

  DlogResult out;
  const std::uint64_t m = detail::isqrt_ceil(width + 1);
  // Baby steps base^j, j < m, bucketed by fingerprint.
  std::unordered_multimap<std::uint64_t, std::uint64_t> table;
  std::vector<typename G::Element> baby;
  baby.reserve(m);
  auto cur = group.identity();
  for (std::uint64_t j = 0; j < m; ++j) {
    table.emplace(group.fingerprint(cur), j);
    baby.push_back(cur);
    cur = group.mul(cur, base);
    ++out.group_ops;
  }
  // Giant steps: gamma = target * base^(-lo - i m).
  const BigInt& order = group.order();
  const auto giant = group.exp(base, mod_reduce(order - from_u64(m), order));
  auto gamma = group.mul(target, group.exp(base, mod_reduce(order - from_u64(range.lo), order)));
  for (std::uint64_t i = 0; i * m <= width; ++i) {
    auto [first, last] = table.equal_range(group.fingerprint(gamma));
    for (auto it = first; it != last; ++it) {
      if (baby[it->second] == gamma) {
        const std::uint64_t s = i * m + it->second;
        if (s <= width) out.value = range.lo + s;
        return out;
      }
    }
    gamma = group.mul(gamma, giant);
    ++out.group_ops;
  }
  return out;
}

template <PrimeOrderGroup G>
DlogResult dlog_oracle(const G& group, const typename G::Element& target, const DlogRange& range) {
  return dlog_oracle(group, group.generator(), target, range);
}

}  // namespace privagg::dlog
