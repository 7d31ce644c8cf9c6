#include "privagg/analysis/rank.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace privagg::analysis {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  for (; e; e >>= 1, b = mulmod(b, b, p)) {
    if (e & 1) r = mulmod(r, b, p);
  }
  return r;
}

}  // namespace

std::size_t rank_mod_p(ModMatrix m, std::uint64_t p) {
  if (p < 2 || p >> 63) throw std::invalid_argument("rank: modulus must be in [2, 2^63)");
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, c) % p == 0) ++pivot;
    if (pivot == m.rows) continue;
    for (std::size_t k = 0; k < m.cols; ++k) std::swap(m.at(pivot, k), m.at(rank, k));
    const std::uint64_t inv = powmod(m.at(rank, c) % p, p - 2, p);  // p prime
    for (std::size_t k = c; k < m.cols; ++k) m.at(rank, k) = mulmod(m.at(rank, k) % p, inv, p);
    for (std::size_t r = rank + 1; r < m.rows; ++r) {
      const std::uint64_t f = m.at(r, c) % p;
      if (f == 0) continue;
      for (std::size_t k = c; k < m.cols; ++k) {
        const std::uint64_t sub = mulmod(f, m.at(rank, k), p);
        const std::uint64_t cur = m.at(r, k) % p;
        m.at(r, k) = cur >= sub ? cur - sub : cur + (p - sub);
      }
    }
    ++rank;
  }
  return rank;
}

ModMatrix coefficient_matrix(std::span<const matrixgen::DenseMatrix> rounds,
                             std::span<const std::size_t> honest, std::uint64_t p) {
  std::vector<std::size_t> h(honest.begin(), honest.end());
  std::sort(h.begin(), h.end());
  if (std::adjacent_find(h.begin(), h.end()) != h.end()) {
    throw std::invalid_argument("coefficient matrix: duplicate honest party");
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> column;
  for (std::size_t a = 0; a < h.size(); ++a) {
    for (std::size_t b = a + 1; b < h.size(); ++b) column.emplace(std::pair{h[a], h[b]}, column.size());
  }
  const std::size_t per_round = h.empty() ? 0 : h.size() - 1;
  ModMatrix m{rounds.size() * per_round, column.size(), {}};
  m.cells.assign(m.rows * m.cols, 0);
  const BigInt bp = from_u64(p);
  std::size_t row = 0;
  for (const auto& A : rounds) {
    for (std::size_t a = 0; a < per_round; ++a, ++row) {
      const std::size_t i = h[a];
      if (i > A.n) throw std::out_of_range("coefficient matrix: party outside matrix");
      for (std::size_t j : h) {
        if (j == i) continue;
        const BigInt c = mod_reduce(A.at(i, j), bp);
        m.at(row, column.at({std::min(i, j), std::max(i, j)})) = to_u64(c);
      }
    }
  }
  return m;
}

std::size_t coeff_rank(std::span<const matrixgen::DenseMatrix> rounds,
                       std::span<const std::size_t> honest, std::uint64_t p) {
  return rank_mod_p(coefficient_matrix(rounds, honest, p), p);
}

}  // namespace privagg::analysis
