#pragma once

// Round and discrete-log benchmarks. CSV columns:
//   experiment,n_or_bits,trial,ms,exps,muls,pairings
// Round experiments are named round-<protocol>-<backend>; dlog experiments
// dlog-curve / dlog-gt, with a "-miss" suffix on failed recoveries.

#include "privagg/harness/config.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace privagg::harness {

struct BenchRecord {
  std::string experiment;
  std::uint64_t n_or_bits = 0;
  std::uint64_t trial = 0;
  double ms = 0;
  std::uint64_t exps = 0;
  std::uint64_t muls = 0;
  std::uint64_t pairings = 0;
  bool ok = true;
};

struct BenchSummary {
  std::string experiment;
  std::uint64_t n_or_bits = 0;
  std::size_t reps = 0;
  double mean_ms = 0;
  double stddev_ms = 0;
  double median_ms = 0;
  double median_muls = 0;
  std::size_t failures = 0;
};

struct RoundBenchOptions {
  protocol::Variant protocol = protocol::Variant::pcl;
  Backend backend = Backend::prod;
  std::vector<std::size_t> ns{10, 100, 1000};
  std::uint64_t reps = 100;
  std::uint64_t warmup = 3;
  std::uint64_t seed = 1;
  std::string topology = "full";
  std::size_t tolerance = 0;
};

// Per rep: a pseudorandom party index, party rebuilt and finalized untimed,
// then compute_contribution for round 1 is timed and its ops counted.
std::vector<BenchRecord> bench_round(const RoundBenchOptions& options);

struct DlogBenchOptions {
  std::vector<unsigned> bits{10, 20, 30};
  std::uint64_t reps = 30;
  std::uint64_t seed = 1;
  bool curve = true;  // series in G1
  bool gt = true;     // series in the pairing target group
};

// m uniform in [2^(b-2), 2^b], recovered over [0, 2^b] on the production
// curve and in GT. Requires b <= 34.
std::vector<BenchRecord> bench_dlog(const DlogBenchOptions& options);

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records);
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

// Least-squares fit y = a + b x; returns the coefficient of determination.
double linear_r2(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace privagg::harness
