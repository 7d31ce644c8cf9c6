#include "privagg/harness/bench.hpp"

#include "privagg/harness/session.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

namespace privagg::harness {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

}  // namespace

std::vector<BenchRecord> bench_round(const RoundBenchOptions& o) {
  std::vector<BenchRecord> out;
  const std::string name =
      "round-" + std::string(protocol::to_string(o.protocol)) + "-" + std::string(to_string(o.backend));
  for (std::size_t n : o.ns) {
    SimulationConfig cfg;
    cfg.protocol = o.protocol;
    cfg.backend = o.backend;
    cfg.n = n;
    cfg.beta = 1000;
    cfg.rounds = 1;
    cfg.tolerance = o.tolerance;
    cfg.topology = o.topology;
    const auto params = cfg.params();

    dispatch(o.protocol, o.backend, [&](const auto& backend, auto party_tag) {
      using Party = typename decltype(party_tag)::type;
      using Key = typename Party::Key;
      // Public keys only; each rep rebuilds the chosen party from the same
      // randomness, so its key matches.
      std::vector<std::optional<Key>> keys(n);
      detail::for_each_party(n, true, [&](std::size_t i) {
        UncountedScope quiet;
        keys[i] = Party(backend, params, i + 1, party_randomness(o.seed, n, i + 1)).public_key();
      });
      std::vector<Key> key_list;
      for (auto& k : keys) key_list.push_back(std::move(*k));

      HashInput in("privagg/bench-round");
      in.u64(o.seed).u64(n);
      HashStream pick(in.data());
      for (std::uint64_t rep = 0; rep < o.warmup + o.reps; ++rep) {
        const std::size_t i = 1 + pick.uniform(n);
        const std::uint64_t m = pick.uniform(params.beta + 1);
        std::optional<Party> party;
        {
          UncountedScope quiet;
          party.emplace(backend, params, i, party_randomness(o.seed, n, i));
          party->finalize_setup(key_list);
        }
        OpCounter ops;
        const auto start = Clock::now();
        {
          CountingScope scope(ops);
          auto c = party->compute_contribution(1, m);
          (void)c;
        }
        const double ms = elapsed_ms(start);
        if (rep < o.warmup) continue;
        out.push_back({name, n, rep - o.warmup, ms, ops.exponentiations, ops.multiplications,
                       ops.pairings, true});
      }
    });
  }
  return out;
}

std::vector<BenchRecord> bench_dlog(const DlogBenchOptions& o) {
  static const Bn254Pairing pairing;
  std::vector<BenchRecord> out;
  for (unsigned b : o.bits) {
    if (b < 2 || b > 34) throw std::invalid_argument("bench dlog: bits must be in [2, 34]");
    const std::uint64_t lo = std::uint64_t{1} << (b - 2);
    const std::uint64_t hi = std::uint64_t{1} << b;
    HashInput in("privagg/bench-dlog");
    in.u64(o.seed).u64(b);
    HashStream stream(in.data());
    for (std::uint64_t rep = 0; rep < o.reps; ++rep) {
      const std::uint64_t m = lo + stream.uniform(hi - lo + 1);
      dlog::LambdaOptions lopts;
      lopts.seed = o.seed * 1000003 + b * 1009 + rep;
      auto run = [&](const auto& group, const auto& base, const char* series) {
        const auto target = [&] {
          UncountedScope quiet;
          return group.exp(base, from_u64(m));
        }();
        OpCounter ops;
        const auto start = Clock::now();
        dlog::DlogResult r;
        {
          CountingScope scope(ops);
          r = dlog::pollard_lambda(group, base, target, {0, hi}, lopts);
        }
        const double ms = elapsed_ms(start);
        const bool ok = r.value && *r.value == m;
        out.push_back({std::string("dlog-") + series + (ok ? "" : "-miss"), b, rep, ms,
                       ops.exponentiations, ops.multiplications, ops.pairings, ok});
      };
      if (o.curve) run(pairing.g1(), pairing.p1(), "curve");
      if (o.gt) run(pairing.gt(), pairing.gt_generator(), "gt");
    }
  }
  return out;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::pair<std::string, std::uint64_t>, std::vector<const BenchRecord*>> groups;
  std::vector<std::pair<std::string, std::uint64_t>> order;
  for (const auto& r : records) {
    std::string base = r.experiment;
    if (base.size() > 5 && base.ends_with("-miss")) base.resize(base.size() - 5);
    auto key = std::pair{base, r.n_or_bits};
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<BenchSummary> out;
  for (const auto& key : order) {
    const auto& g = groups[key];
    BenchSummary s{key.first, key.second, g.size()};
    std::vector<double> ms, muls;
    for (const auto* r : g) {
      ms.push_back(r->ms);
      muls.push_back(static_cast<double>(r->muls));
      if (!r->ok) ++s.failures;
    }
    s.mean_ms = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
    double var = 0;
    for (double v : ms) var += (v - s.mean_ms) * (v - s.mean_ms);
    s.stddev_ms = ms.size() > 1 ? std::sqrt(var / static_cast<double>(ms.size() - 1)) : 0.0;
    s.median_ms = median(ms);
    s.median_muls = median(muls);
    out.push_back(s);
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "experiment,n_or_bits,trial,ms,exps,muls,pairings\n";
  for (const auto& r : records) {
    out << r.experiment << ',' << r.n_or_bits << ',' << r.trial << ',' << r.ms << ',' << r.exps
        << ',' << r.muls << ',' << r.pairings << '\n';
  }
}

double linear_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("r2: need paired samples");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return 1.0;
  return sxy * sxy / (sxx * syy);
}

}  // namespace privagg::harness
