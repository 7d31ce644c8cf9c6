#pragma once

#include "privagg/matrixgen/matrixgen.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace privagg::analysis {

// Connected components of the pattern's graph after deleting `removed`
// (1-based party indices). Components are listed by smallest member.
std::vector<std::vector<std::size_t>> components_without(const matrixgen::SparsityPattern& pattern,
                                                         const std::vector<std::size_t>& removed);

// True when deleting `coalition` leaves at least two honest components.
bool partitions(const matrixgen::SparsityPattern& pattern, const std::vector<std::size_t>& coalition);

// Exact vertex connectivity by unit-capacity max-flow (Menger) over
// non-adjacent pairs, using Even's source restriction. K_n gives n - 1.
std::size_t vertex_connectivity(const matrixgen::SparsityPattern& pattern);

// Smallest vertex set whose removal disconnects the graph, by enumerating
// subsets. Only for n <= 20.
std::size_t vertex_connectivity_bruteforce(const matrixgen::SparsityPattern& pattern);

struct CoalitionScan {
  std::uint64_t coalitions = 0;  // coalitions examined, sizes 1..max_size
  std::uint64_t partitioning = 0;
  // Smallest partitioning coalition, by size then lexicographically.
  std::optional<std::vector<std::size_t>> first;

  bool operator==(const CoalitionScan&) const = default;
};

// Every coalition of size 1..max_size; serial reference and OpenMP version
// return identical results.
CoalitionScan scan_coalitions_serial(const matrixgen::SparsityPattern& pattern, std::size_t max_size);
CoalitionScan scan_coalitions_parallel(const matrixgen::SparsityPattern& pattern,
                                       std::size_t max_size);

// k-subset of {1..n} with the given rank in lexicographic order.
std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k);
std::uint64_t binomial(std::size_t n, std::size_t k);

}  // namespace privagg::analysis
