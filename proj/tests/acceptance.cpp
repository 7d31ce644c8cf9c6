// End-to-end acceptance checks, one PASS/FAIL line each. With no arguments all
// nine run; `acceptance 4` runs just one. Exit status is non-zero if any fail.

#include "privagg/analysis/bounds.hpp"
#include "privagg/analysis/connectivity.hpp"
#include "privagg/analysis/rank.hpp"
#include "privagg/harness/bench.hpp"
#include "privagg/harness/session.hpp"
#include "privagg/harness/simulation.hpp"
#include "privagg/matrixgen/serialize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

using namespace privagg;
using harness::Backend;
using protocol::Variant;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(prec);
  s << v;
  return s.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// ---- 1: every variant sums correctly -------------------------------------------

Outcome correctness() {
  std::size_t rounds_checked = 0;
  for (auto v : {Variant::kdk1, Variant::kdk_multi, Variant::pcl}) {
    for (auto b : {Backend::test, Backend::mock}) {
      for (std::size_t n : {2u, 3u, 5u, 10u}) {
        harness::SimulationConfig c;
        c.protocol = v;
        c.backend = b;
        c.n = n;
        c.beta = 1000;
        c.trials = 100;
        c.seed = 1000 + n;
        c.rounds = v == Variant::kdk1 ? 1 : v == Variant::pcl ? std::max<std::uint64_t>(1, n / 2) : 3;
        auto r = harness::run_simulation(c);
        const bool exact = std::all_of(r.rounds.begin(), r.rounds.end(),
                                       [](const auto& o) { return o.match && o.product_matches; });
        if (!r.all_match || !exact || r.rounds.size() != 100 * c.rounds) {
          return {false, std::string(protocol::to_string(v)) + "/" + std::string(harness::to_string(b)) +
                             " n=" + std::to_string(n) + ": " + r.error};
        }
        rounds_checked += r.rounds.size();
      }
    }
  }
  return {true, std::to_string(rounds_checked) + " rounds, sums and element products exact"};
}

// ---- 2: round bound ------------------------------------------------------------

Outcome round_bound() {
  const auto b = analysis::pcl_bounds(100, 33);
  harness::SimulationConfig c;
  c.protocol = Variant::pcl;
  c.n = 100;
  c.tolerance = 33;
  c.rounds = 33;
  bool accepted = true;
  try {
    c.params();
  } catch (const std::exception&) {
    accepted = false;
  }
  c.rounds = 34;
  bool rejected = false;
  try {
    c.params();
  } catch (const protocol::ProtocolError&) {
    rejected = true;
  }
  // A party set up for 33 rounds also refuses to contribute to a 34th.
  c.rounds = 33;
  const auto params = c.params();
  auto g = ModpSubgroup::default_test();
  protocol::GroupParty<ModpSubgroup> p(g, params, 1, Bytes{1, 2, 3});
  std::vector<ModpSubgroup::Element> keys;
  for (std::size_t i = 1; i <= 100; ++i) {
    keys.push_back(i == 1 ? p.public_key() : g.exp(g.generator(), from_u64(i + 10)));
  }
  p.finalize_setup(keys);
  for (std::uint64_t k = 1; k <= 33; ++k) p.compute_contribution(k, 0);
  bool party_refused = false;
  try {
    p.compute_contribution(34, 0);
  } catch (const protocol::ProtocolError&) {
    party_refused = true;
  }
  const bool ok = b.max_rounds == 33 && accepted && rejected && party_refused;
  return {ok, "max_rounds=" + std::to_string(b.max_rounds) + ", 33 accepted=" + (accepted ? "yes" : "no") +
                  ", 34 rejected=" + (rejected ? "yes" : "no") + ", party refuses round 34=" +
                  (party_refused ? "yes" : "no")};
}

// ---- 3: work per round -----------------------------------------------------------

Outcome work_count() {
  auto per_round = [](const std::string& topology, std::size_t t, std::uint64_t rounds) {
    harness::SimulationConfig c;
    c.protocol = Variant::pcl;
    c.backend = Backend::prod;
    c.n = 10;
    c.beta = 50;
    c.tolerance = t;
    c.rounds = rounds;
    c.topology = topology;
    auto r = harness::run_simulation(c);
    std::vector<std::uint64_t> exps;
    for (const auto& ops : r.party_round_ops) exps.push_back(ops.exponentiations);
    return std::make_pair(r.all_match, exps);
  };
  auto [ok_nn, nn] = per_round("nn:8", 2, 3);
  auto [ok_full, full] = per_round("full", 0, 3);
  const bool nn_ok = std::all_of(nn.begin(), nn.end(), [](auto e) { return e == 27; });
  const bool full_ok = std::all_of(full.begin(), full.end(), [](auto e) { return e == 30; });
  return {ok_nn && ok_full && nn_ok && full_ok,
          "degree 8: " + std::to_string(nn.front() / 3) + " exps/party/round (want 9); full: " +
              std::to_string(full.front() / 3) + " (want 10)"};
}

// ---- 4: coefficient rank ---------------------------------------------------------

Outcome rank() {
  const std::uint64_t p = ModpSubgroup::default_test().order_u64();
  std::ostringstream detail;
  bool ok = true;
  for (std::size_t n : {6u, 8u, 10u}) {
    for (std::size_t t : {0u, 2u}) {
      const std::size_t l = (n - t) / 2;
      const std::size_t degree = 2 * l + t;
      matrixgen::Sparsity sparsity = matrixgen::FullTopology{};
      if (degree < n - 1) sparsity = matrixgen::NearestNeighborTopology{degree};
      const auto plan = protocol::standard_plan(Variant::pcl, n, sparsity);
      int full_at_bound = 0, deficient_past = 0;
      for (std::uint64_t s = 0; s < 100; ++s) {
        std::vector<Bytes> keys;
        for (std::size_t i = 1; i <= n; ++i) keys.push_back(harness::party_randomness(s, n * 10 + t, i));
        const auto seed = matrixgen::derive_seed(keys, from_u64(p));
        std::vector<matrixgen::DenseMatrix> ms;
        for (std::uint64_t k = 1; k <= l + 1; ++k) ms.push_back(matrixgen::assemble_matrix(plan, seed, k, from_u64(p)));
        // pseudorandom coalition of size t
        HashStream pick(harness::party_randomness(s, 999, n + t));
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i + 1;
        for (std::size_t i = 0; i < t; ++i) std::swap(all[i], all[i + pick.uniform(n - i)]);
        std::vector<std::size_t> honest(all.begin() + t, all.end());
        std::sort(honest.begin(), honest.end());
        std::span<const matrixgen::DenseMatrix> at(ms.data(), l);
        if (analysis::coeff_rank(at, honest, p) == l * (n - t - 1)) ++full_at_bound;
        if (analysis::coeff_rank(ms, honest, p) < (l + 1) * (n - t - 1)) ++deficient_past;
      }
      detail << " n=" << n << ",t=" << t << ": " << full_at_bound << "/100 full, " << deficient_past
             << "/100 deficient past;";
      ok = ok && full_at_bound >= 95 && deficient_past == 100;
    }
  }
  return {ok, detail.str()};
}

// ---- 5: partition attack and connectivity ---------------------------------------------

Outcome partition() {
  harness::SimulationConfig c;
  c.protocol = Variant::pcl;
  c.backend = Backend::prod;
  c.n = 6;
  c.beta = 1000;
  c.topology = "edges:1-2,2-3,1-3,4-5,1-6,3-6,4-6,5-6";
  auto r = harness::attack_simulation(c, {6}, 1);
  bool attack_ok = r.success && r.components.size() == 2;
  for (std::size_t i = 0; i < r.recovered.size(); ++i) attack_ok = attack_ok && r.recovered[i] == r.expected[i];

  std::uint64_t graphs = 0, coalitions = 0, partitions = 0;
  for (std::size_t n = 3; n <= 12; ++n) {
    for (std::size_t t = 1; t <= 3 && t + 1 < n; ++t) {
      for (std::size_t m = t + 1 + (t + 1) % 2; m < n; m += 2) {
        auto g = matrixgen::nearest_neighbor_pattern(n, m);
        auto scan = analysis::scan_coalitions_parallel(g, t);
        ++graphs;
        coalitions += scan.coalitions;
        partitions += scan.partitioning;
      }
    }
  }
  return {attack_ok && partitions == 0,
          "bridge graph: " + std::to_string(r.components.size()) + " components, partial sums " +
              (attack_ok ? "recovered exactly" : "NOT recovered") + "; " + std::to_string(graphs) +
              " nearest-neighbour graphs, " + std::to_string(coalitions) + " coalitions, " +
              std::to_string(partitions) + " partitions"};
}

// ---- 6: hole bounds -----------------------------------------------------------------

Outcome hole_bounds() {
  bool extra_ok = true;
  for (double tau = 0.0; tau < 0.95; tau += 0.05) extra_ok = extra_ok && analysis::kdk_hole_bounds(100, tau).nonholes_extra == 15;
  const double lf = analysis::kdk_hole_bounds(100, 0.33).load_fraction;
  const bool lf_ok = std::abs(lf - 0.48) <= 0.001;
  std::optional<std::size_t> first_rise;
  for (std::size_t n = 11; n <= 2000 && !first_rise; ++n) {
    if (analysis::kdk_hole_bounds(n, 0.33).load_fraction > analysis::kdk_hole_bounds(n - 1, 0.33).load_fraction) first_rise = n;
  }
  std::string detail = "nonholes_extra(100)=15 for all tau: " + std::string(extra_ok ? "yes" : "no") +
                       ", load_fraction(0.33)=" + fmt(lf, 4) + "; non-increasing in n: ";
  if (first_rise) {
    detail += "no, rises at n=" + std::to_string(*first_rise) + " (" +
              fmt(analysis::kdk_hole_bounds(*first_rise - 1, 0.33).load_fraction, 4) + " -> " +
              fmt(analysis::kdk_hole_bounds(*first_rise, 0.33).load_fraction, 4) +
              ", the ceiling steps up); the unrounded tau + (1+sqrt(8n-7))/(2n) does decrease";
  } else {
    detail += "yes";
  }
  return {extra_ok && lf_ok && !first_rise, detail};
}

// ---- 7: Pollard lambda scaling --------------------------------------------------------

Outcome dlog_scaling() {
  harness::DlogBenchOptions o;
  o.bits = {10, 20, 30};
  o.reps = 30;
  o.seed = 7;
  const auto recs = harness::bench_dlog(o);
  std::size_t failures = 0;
  std::map<std::string, std::map<unsigned, std::vector<double>>> ops, ms;
  for (const auto& r : recs) {
    if (!r.ok) {
      ++failures;
      continue;
    }
    ops[r.experiment][r.n_or_bits].push_back(static_cast<double>(r.muls));
    ms[r.experiment][r.n_or_bits].push_back(r.ms);
  }
  bool ok = failures == 0;
  std::ostringstream d;
  d << failures << " failed recoveries;";
  for (const char* series : {"dlog-curve", "dlog-gt"}) {
    d << " " << series << " op ratios";
    for (auto [lo, hi] : {std::pair{10u, 20u}, std::pair{20u, 30u}}) {
      const double ratio = median(ops[series][hi]) / median(ops[series][lo]);
      d << " " << fmt(ratio, 1);
      ok = ok && ratio >= 16 && ratio <= 64;
    }
    d << ";";
  }
  d << " mean ms curve/gt:";
  for (unsigned b : {10u, 20u, 30u}) {
    auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
    const double c = mean(ms["dlog-curve"][b]), g = mean(ms["dlog-gt"][b]);
    d << " b=" << b << " " << fmt(c, 2) << "/" << fmt(g, 2);
    ok = ok && g > c;
  }
  return {ok, d.str()};
}

// ---- 8: round cost ---------------------------------------------------------------------

Outcome round_cost() {
  harness::RoundBenchOptions o;
  o.backend = Backend::prod;
  o.ns = {100};
  o.reps = 100;
  o.protocol = Variant::pcl;
  const auto pcl = harness::summarize(harness::bench_round(o)).front();
  o.protocol = Variant::kdk_multi;
  const auto kdkm = harness::summarize(harness::bench_round(o)).front();
  const double ratio = pcl.mean_ms / kdkm.mean_ms;

  o.protocol = Variant::pcl;
  o.ns = {10, 100, 1000};
  o.reps = 30;
  std::vector<double> x, y;
  for (const auto& r : harness::bench_round(o)) {
    x.push_back(static_cast<double>(r.n_or_bits));
    y.push_back(r.ms);
  }
  const double r2 = harness::linear_r2(x, y);
  return {ratio <= 0.1 && r2 >= 0.9,
          "n=100 mean pcl " + fmt(pcl.mean_ms, 2) + " ms vs kdkm " + fmt(kdkm.mean_ms, 2) + " ms (ratio " +
              fmt(ratio, 4) + ", 1/" + fmt(1 / ratio, 1) + "); pcl linear fit over n=10,100,1000: R^2 " + fmt(r2, 4)};
}

// ---- 9: determinism --------------------------------------------------------------------------

std::string matrices_text(const harness::SimulationConfig& c) {
  const auto params = c.params();
  std::string out;
  harness::dispatch(c.protocol, c.backend, [&](const auto& backend, auto tag) {
    using Party = typename decltype(tag)::type;
    auto s = harness::run_session<Party>(backend, params, c.seed, 0, 1, true);
    const auto& party = s.parties.front();
    for (std::uint64_t k = 1; k <= c.rounds; ++k) {
      const auto pattern = matrixgen::pattern_for(params.topology, party.seed(), k);
      out += nlohmann::json(pattern).dump() + "\n";
      for (std::size_t i = 1; i <= params.n; ++i) {
        out += nlohmann::json(matrixgen::chi_row(params.topology, party.seed(), k, i,
                                                 harness::key_group(backend).order()))
                   .dump() +
               "\n";
      }
    }
  });
  return out;
}

Outcome determinism() {
  std::vector<harness::SimulationConfig> configs;
  {
    harness::SimulationConfig c;
    c.protocol = Variant::pcl;
    c.backend = Backend::prod;
    c.n = 9;
    c.beta = 100;
    c.rounds = 3;
    c.tolerance = 1;
    c.topology = "holes:2";
    c.seed = 2024;
    configs.push_back(c);
    c.protocol = Variant::kdk_multi;
    c.n = 5;
    c.tolerance = 0;
    c.topology = "full";
    configs.push_back(c);
    c.protocol = Variant::kdk1;
    c.backend = Backend::test;
    c.n = 12;
    c.rounds = 1;
    c.topology = "nn:6";
    c.trials = 5;
    configs.push_back(c);
  }
  std::size_t bytes = 0;
  for (const auto& c : configs) {
    std::string first[3], second[3];
    for (auto* out : {first, second}) {
      auto r = harness::run_simulation(c);
      if (!r.all_match) return {false, "simulation failed: " + r.error};
      out[0] = r.transcript->to_jsonl();
      out[1] = nlohmann::json(r).dump();
      out[2] = matrices_text(c);
    }
    for (int i = 0; i < 3; ++i) {
      if (first[i] != second[i]) {
        static const char* what[] = {"transcript", "report", "matrices"};
        return {false, std::string(what[i]) + " differs for " + std::string(protocol::to_string(c.protocol))};
      }
      bytes += first[i].size();
    }
  }
  return {true, "transcripts, reports and matrices byte-identical across two runs (" + std::to_string(bytes) +
                    " bytes compared per run)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"correctness", correctness}, {"round bound", round_bound},  {"work per round", work_count},
      {"coefficient rank", rank},   {"partition attack", partition}, {"hole bounds", hole_bounds},
      {"dlog scaling", dlog_scaling}, {"round cost", round_cost},  {"determinism", determinism},
  };
  std::vector<std::size_t> selected;
  for (int a = 1; a < argc; ++a) {
    const auto k = static_cast<std::size_t>(std::atoi(argv[a]));
    if (k < 1 || k > criteria.size()) {
      std::cerr << "usage: acceptance [1-9 ...]\n";
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty()) {
    for (std::size_t k = 1; k <= criteria.size(); ++k) selected.push_back(k);
  }

  bool all = true;
  for (std::size_t k : selected) {
    const auto& [name, check] = criteria[k - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << k << " (" << name << "): " << (o.pass ? "PASS" : "FAIL") << " [" << fmt(secs, 1)
              << " s] " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
