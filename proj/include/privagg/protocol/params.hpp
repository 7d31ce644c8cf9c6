#pragma once

#include "privagg/matrixgen/matrixgen.hpp"

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace privagg::protocol {

enum class Variant { kdk1, kdk_multi, pcl };

// Short names used on the command line and in transcripts: kdk1, kdkm, pcl.
std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view name);

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// n * beta must stay below this so aggregate recovery remains tractable.
inline constexpr std::uint64_t kMaxAggregate = std::uint64_t{1} << 48;

struct ProtocolParams {
  Variant variant = Variant::pcl;
  std::size_t n = 0;
  std::uint64_t beta = 0;
  std::uint64_t max_rounds = 1;  // ignored for kdk_multi
  std::size_t tolerance = 0;     // t
  matrixgen::TopologyPlan topology;

  // Throws ProtocolError or TopologyError.
  void validate() const;
  std::uint64_t max_sum() const { return n * beta; }
  // floor((n - t) / 2); the pcl round limit.
  std::uint64_t pcl_round_limit() const { return (n - tolerance) / 2; }
};

// Plan with the coefficient mode and round handling each variant expects:
// pcl derives a fresh pseudorandom matrix per round, the KDK variants use one
// fixed sign matrix.
matrixgen::TopologyPlan standard_plan(Variant v, std::size_t n, matrixgen::Sparsity sparsity);

}  // namespace privagg::protocol
