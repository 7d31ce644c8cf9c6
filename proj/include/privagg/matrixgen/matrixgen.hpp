#pragma once

// Per-round masking matrices. Party indices are 1-based throughout, matching
// protocol transcripts; index 0 is never a party.

#include "privagg/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace privagg::matrixgen {

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FullTopology {};

struct HoleTopology {
  std::size_t alpha = 0;
  std::vector<bool> seekers;  // seekers[i-1] is true when party i sets holes
  // Restrict hole targets to other seekers instead of all later parties.
  bool seekers_only = false;
};

struct NearestNeighborTopology {
  std::size_t degree = 2;  // even, below n
};

// Hand-built masking graph; edges are unordered 1-based pairs.
struct ExplicitTopology {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

using Sparsity = std::variant<FullTopology, HoleTopology, NearestNeighborTopology, ExplicitTopology>;

enum class Coefficients {
  pseudorandom,  // A_ij = H(s, k, i, j) in Z_p for i < j
  sign,          // +1 above the diagonal, -1 below
};

struct TopologyPlan {
  std::size_t n = 0;
  Sparsity sparsity = FullTopology{};
  Coefficients coefficients = Coefficients::pseudorandom;
  // One matrix for every round: derivation ignores the round number.
  bool fixed = false;

  void validate() const;
  // Round number actually fed to derivation.
  std::uint64_t effective_round(std::uint64_t round) const { return fixed ? 0 : round; }
};

// Symmetric adjacency with an empty diagonal.
class SparsityPattern {
 public:
  SparsityPattern() = default;
  explicit SparsityPattern(std::size_t n, bool complete = false);

  std::size_t size() const { return n_; }
  bool linked(std::size_t i, std::size_t j) const { return adj_[(i - 1) * n_ + (j - 1)] != 0; }
  void link(std::size_t i, std::size_t j);
  void cut(std::size_t i, std::size_t j);
  std::size_t degree(std::size_t i) const;
  std::size_t holes(std::size_t i) const { return n_ - 1 - degree(i); }
  std::vector<std::size_t> neighbors(std::size_t i) const;
  bool symmetric() const;

  bool operator==(const SparsityPattern&) const = default;

 private:
  void check(std::size_t i, std::size_t j) const;
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

struct HolePlacement {
  SparsityPattern pattern;
  // Seekers that could not place all W[i] forward holes.
  std::vector<std::size_t> shortfall;
  bool has_shortfall() const { return !shortfall.empty(); }
};

struct Seed {
  BigInt value;  // in Z_p
  bool operator==(const Seed&) const = default;
};

struct MatrixEntry {
  std::size_t column;
  BigInt coefficient;  // non-zero, reduced mod p
  bool operator==(const MatrixEntry&) const = default;
};

struct MatrixRow {
  std::uint64_t round = 0;
  std::size_t party = 0;
  std::vector<MatrixEntry> entries;  // ascending columns
  bool operator==(const MatrixRow&) const = default;
};

// Dense n x n matrix over Z_p, row-major, 0-based storage.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<BigInt> cells;
  const BigInt& at(std::size_t i, std::size_t j) const { return cells[(i - 1) * n + (j - 1)]; }
  BigInt& at(std::size_t i, std::size_t j) { return cells[(i - 1) * n + (j - 1)]; }
};

// Hash of the concatenated canonical key encodings, in index order, mod p.
Seed derive_seed(std::span<const Bytes> encoded_keys, const BigInt& p);

// H(s, k, i, j) for i < j; a zero output is resampled with a retry counter.
BigInt upper_coefficient(const Seed& seed, std::uint64_t round, std::size_t i, std::size_t j,
                         const BigInt& p);

SparsityPattern nearest_neighbor_pattern(std::size_t n, std::size_t degree);
HolePlacement place_holes(const TopologyPlan& plan, const Seed& seed, std::uint64_t round);
SparsityPattern pattern_for(const TopologyPlan& plan, const Seed& seed, std::uint64_t round);

MatrixRow chi_row(const TopologyPlan& plan, const Seed& seed, std::uint64_t round,
                  std::size_t party, const BigInt& p);
// Row from an already computed pattern; avoids recomputing hole placement.
MatrixRow chi_row(const TopologyPlan& plan, const SparsityPattern& pattern, const Seed& seed,
                  std::uint64_t round, std::size_t party, const BigInt& p);

DenseMatrix assemble_matrix(const TopologyPlan& plan, const Seed& seed, std::uint64_t round,
                            const BigInt& p);

}  // namespace privagg::matrixgen
