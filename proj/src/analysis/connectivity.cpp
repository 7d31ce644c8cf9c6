#include "privagg/analysis/connectivity.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace privagg::analysis {

using matrixgen::SparsityPattern;

namespace {

void require_symmetric(const SparsityPattern& pattern) {
  if (!pattern.symmetric()) throw std::invalid_argument("connectivity: pattern is not symmetric");
}

// Unit vertex capacities: vertex v becomes in = 2v, out = 2v + 1.
class VertexFlow {
 public:
  explicit VertexFlow(const SparsityPattern& g) : n_(g.size()), cap_(4 * n_ * n_, 0) {
    for (std::size_t v = 0; v < n_; ++v) at(in(v), out(v)) = 1;
    for (std::size_t a = 1; a <= n_; ++a) {
      for (std::size_t b = 1; b <= n_; ++b) {
        if (a != b && g.linked(a, b)) at(out(a - 1), in(b - 1)) = kInf;
      }
    }
  }

  // Maximum number of internally vertex-disjoint s-t paths (0-based).
  int max_flow(std::size_t s, std::size_t t) {
    auto cap = cap_;
    const std::size_t V = 2 * n_;
    auto c = [&](std::size_t a, std::size_t b) -> int& { return cap[a * V + b]; };
    const std::size_t src = out(s), sink = in(t);
    int flow = 0;
    std::vector<std::ptrdiff_t> parent(V);
    for (;;) {
      std::fill(parent.begin(), parent.end(), -1);
      parent[src] = static_cast<std::ptrdiff_t>(src);
      std::queue<std::size_t> q;
      q.push(src);
      while (!q.empty() && parent[sink] < 0) {
        std::size_t a = q.front();
        q.pop();
        for (std::size_t b = 0; b < V; ++b) {
          if (parent[b] < 0 && c(a, b) > 0) {
            parent[b] = static_cast<std::ptrdiff_t>(a);
            q.push(b);
          }
        }
      }
      if (parent[sink] < 0) return flow;
      for (std::size_t b = sink; b != src; b = static_cast<std::size_t>(parent[b])) {
        auto a = static_cast<std::size_t>(parent[b]);
        c(a, b) -= 1;
        c(b, a) += 1;
      }
      ++flow;
    }
  }

 private:
  static constexpr int kInf = 1 << 20;
  static std::size_t in(std::size_t v) { return 2 * v; }
  static std::size_t out(std::size_t v) { return 2 * v + 1; }
  int& at(std::size_t a, std::size_t b) { return cap_[a * 2 * n_ + b]; }

  std::size_t n_;
  std::vector<int> cap_;
};

bool disconnected_without(const SparsityPattern& g, const std::vector<bool>& removed) {
  const std::size_t n = g.size();
  std::size_t start = 0, alive = 0;
  for (std::size_t v = 1; v <= n; ++v) {
    if (!removed[v]) {
      ++alive;
      if (!start) start = v;
    }
  }
  if (alive < 2) return false;
  std::vector<bool> seen(n + 1, false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b = 1; b <= n; ++b) {
      if (!seen[b] && !removed[b] && b != a && g.linked(a, b)) {
        seen[b] = true;
        ++reached;
        stack.push_back(b);
      }
    }
  }
  return reached < alive;
}

}  // namespace

std::vector<std::vector<std::size_t>> components_without(const SparsityPattern& pattern,
                                                         const std::vector<std::size_t>& removed) {
  require_symmetric(pattern);
  const std::size_t n = pattern.size();
  std::vector<bool> gone(n + 1, false);
  for (std::size_t r : removed) {
    if (r < 1 || r > n) throw std::out_of_range("components: party outside [1, n]");
    gone[r] = true;
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(n + 1, false);
  for (std::size_t s = 1; s <= n; ++s) {
    if (gone[s] || seen[s]) continue;
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      comp.push_back(a);
      for (std::size_t b = 1; b <= n; ++b) {
        if (!seen[b] && !gone[b] && b != a && pattern.linked(a, b)) {
          seen[b] = true;
          stack.push_back(b);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool partitions(const SparsityPattern& pattern, const std::vector<std::size_t>& coalition) {
  return components_without(pattern, coalition).size() > 1;
}

std::size_t vertex_connectivity(const SparsityPattern& pattern) {
  require_symmetric(pattern);
  const std::size_t n = pattern.size();
  if (n <= 1) return 0;
  VertexFlow flow(pattern);
  std::size_t kappa = n - 1;
  for (std::size_t i = 0; i < n && i <= kappa; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pattern.linked(i + 1, j + 1)) continue;
      kappa = std::min(kappa, static_cast<std::size_t>(flow.max_flow(i, j)));
    }
  }
  return kappa;
}

std::size_t vertex_connectivity_bruteforce(const SparsityPattern& pattern) {
  require_symmetric(pattern);
  const std::size_t n = pattern.size();
  if (n > 20) throw std::invalid_argument("connectivity oracle: n must be at most 20");
  if (n <= 1) return 0;
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    const std::uint64_t total = binomial(n, k);
    for (std::uint64_t r = 0; r < total; ++r) {
      std::vector<bool> removed(n + 1, false);
      for (std::size_t v : unrank_combination(r, n, k)) removed[v] = true;
      if (disconnected_without(pattern, removed)) return k;
    }
  }
  return n - 1;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t next = 1;
  for (std::size_t slot = 0; slot < k; ++slot) {
    // Skip whole blocks of combinations that start with `next`.
    for (;; ++next) {
      const std::uint64_t block = binomial(n - next, k - slot - 1);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(next++);
  }
  return out;
}

namespace {

template <bool Parallel>
CoalitionScan scan(const SparsityPattern& pattern, std::size_t max_size) {
  require_symmetric(pattern);
  const std::size_t n = pattern.size();
  CoalitionScan out;
  for (std::size_t k = 1; k <= max_size && k <= n; ++k) {
    const std::uint64_t total = binomial(n, k);
    std::uint64_t hits = 0;
    std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
    auto body = [&](std::uint64_t r, std::uint64_t& h, std::uint64_t& f) {
      std::vector<bool> removed(n + 1, false);
      for (std::size_t v : unrank_combination(r, n, k)) removed[v] = true;
      if (disconnected_without(pattern, removed)) {
        ++h;
        f = std::min(f, r);
      }
    };
    if constexpr (Parallel) {
      const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : hits) reduction(min : first)
      for (std::int64_t r = 0; r < count; ++r) body(static_cast<std::uint64_t>(r), hits, first);
    } else {
      for (std::uint64_t r = 0; r < total; ++r) body(r, hits, first);
    }
    out.coalitions += total;
    out.partitioning += hits;
    if (!out.first && hits > 0) out.first = unrank_combination(first, n, k);
  }
  return out;
}

}  // namespace

CoalitionScan scan_coalitions_serial(const SparsityPattern& pattern, std::size_t max_size) {
  return scan<false>(pattern, max_size);
}

CoalitionScan scan_coalitions_parallel(const SparsityPattern& pattern, std::size_t max_size) {
  return scan<true>(pattern, max_size);
}

}  // namespace privagg::analysis
