#pragma once

#include "privagg/matrixgen/matrixgen.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace privagg::analysis {

// Row-major matrix over Z_p with p < 2^63.
struct ModMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> cells;

  std::uint64_t& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
};

// Exact rank by Gaussian elimination mod p.
std::size_t rank_mod_p(ModMatrix m, std::uint64_t p);

// Stacks, for each round's matrix A, the rows of the honest parties except
// the last one, rewritten over the monomials x_i x_j (i < j, both honest,
// lexicographic). Row i holds A_ij at column (min(i,j), max(i,j)).
ModMatrix coefficient_matrix(std::span<const matrixgen::DenseMatrix> rounds,
                             std::span<const std::size_t> honest, std::uint64_t p);

std::size_t coeff_rank(std::span<const matrixgen::DenseMatrix> rounds,
                       std::span<const std::size_t> honest, std::uint64_t p);

}  // namespace privagg::analysis
