// Serial reference vs OpenMP for the two parallel kernels: the coalition scan
// over a masking graph and a simulated session (parties on threads). Each pair
// must agree exactly; timings go to stdout as CSV.

#include "privagg/analysis/connectivity.hpp"
#include "privagg/harness/session.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace privagg;

namespace {

template <class F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

bool scan(std::size_t n, std::size_t degree, std::size_t t) {
  const auto g = matrixgen::nearest_neighbor_pattern(n, degree);
  analysis::CoalitionScan a, b;
  const double ts = time_ms([&] { a = analysis::scan_coalitions_serial(g, t); });
  const double tp = time_ms([&] { b = analysis::scan_coalitions_parallel(g, t); });
  std::cout << "coalition-scan,n=" << n << " m=" << degree << " t=" << t << "," << ts << "," << tp << ","
            << (a == b ? "equal" : "DIFFERENT") << "\n";
  return a == b;
}

bool session(protocol::Variant v, harness::Backend backend, std::size_t n, std::uint64_t rounds) {
  harness::SimulationConfig c;
  c.protocol = v;
  c.backend = backend;
  c.n = n;
  c.beta = 100;
  c.rounds = rounds;
  const auto params = c.params();
  std::string serial, parallel;
  double ts = 0, tp = 0;
  harness::dispatch(v, backend, [&](const auto& be, auto tag) {
    using Party = typename decltype(tag)::type;
    ts = time_ms([&] { serial = harness::run_session<Party>(be, params, 7, 0, rounds, false).transcript.to_jsonl(); });
    tp = time_ms([&] { parallel = harness::run_session<Party>(be, params, 7, 0, rounds, true).transcript.to_jsonl(); });
  });
  std::cout << "session-" << protocol::to_string(v) << "-" << harness::to_string(backend) << ",n=" << n
            << " rounds=" << rounds << "," << ts << "," << tp << ","
            << (serial == parallel ? "equal" : "DIFFERENT") << "\n";
  return serial == parallel;
}

}  // namespace

int main() {
  std::cout << "# threads=" << omp_get_max_threads() << "\n";
  std::cout << "kernel,size,serial_ms,parallel_ms,result\n";
  bool ok = true;
  ok &= scan(20, 4, 3);
  ok &= scan(30, 6, 4);
  ok &= scan(40, 8, 4);
  ok &= session(protocol::Variant::pcl, harness::Backend::prod, 32, 2);
  ok &= session(protocol::Variant::kdk_multi, harness::Backend::prod, 16, 1);
  ok &= session(protocol::Variant::pcl, harness::Backend::test, 200, 3);
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
