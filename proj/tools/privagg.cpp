// privagg: simulate the aggregation protocols, print bounds, run the partition
// attack, and benchmark rounds and discrete-log recovery.
//
// Any option can also come from a JSON file passed with --config; keys are the
// long option names ({"n": 10, "topology": "nn:8"}) and apply to the
// subcommand given on the command line. Command-line values win.

#include "privagg/analysis/bounds.hpp"
#include "privagg/harness/bench.hpp"
#include "privagg/harness/simulation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

using namespace privagg;
using nlohmann::json;

namespace {

class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const auto& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        auto res = opt->reduced_results();
        j[name] = res.size() == 1 ? json(res.front()) : json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, active_path(), items);
    return items;
  }

 private:
  // Subcommands selected on the command line, outermost first.
  std::vector<std::string> active_path() const {
    std::vector<std::string> path;
    const CLI::App* cur = root_;
    for (;;) {
      auto subs = cur->get_subcommands();
      if (subs.empty()) break;
      cur = subs.front();
      path.push_back(cur->get_name());
    }
    return path;
  }

  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_null()) continue;
      if (value.is_object()) {
        auto deeper = parents;
        deeper.push_back(key);
        flatten(value, deeper, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      out.push_back(std::move(item));
    }
  }

  const CLI::App* root_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

const std::vector<std::string> kProtocols{"kdk1", "kdkm", "kdk-multi", "pcl"};
const std::vector<std::string> kBackends{"prod", "test", "mock"};

struct SimArgs {
  harness::SimulationConfig cfg;
  std::string protocol = "pcl";
  std::string backend = "test";

  harness::SimulationConfig resolve() const {
    auto c = cfg;
    c.protocol = protocol::variant_from_string(protocol);
    c.backend = harness::backend_from_string(backend);
    return c;
  }
};

void add_sim_options(CLI::App* sub, SimArgs& a) {
  auto& c = a.cfg;
  sub->add_option("--protocol", a.protocol, "kdk1 | kdkm | pcl")
      ->check(CLI::IsMember(kProtocols))
      ->required();
  sub->add_option("--backend", a.backend, "prod (BN254) | test (small subgroup) | mock")
      ->check(CLI::IsMember(kBackends))
      ->capture_default_str();
  sub->add_option("--n", c.n, "number of parties")->check(CLI::Range(2, 100000))->capture_default_str();
  sub->add_option("--beta", c.beta, "largest per-party message")->capture_default_str();
  sub->add_option("--rounds", c.rounds, "rounds after one setup")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--tolerance", c.tolerance, "collusion tolerance t")->capture_default_str();
  sub->add_option("--topology", c.topology, "full | holes:A | nn:M | edges:1-2,2-3,...")->capture_default_str();
  sub->add_option("--seekers", c.seekers, "hole seekers: all or 1,3,4")->capture_default_str();
  sub->add_flag("--seekers-only", c.seekers_only, "holes only between seekers");
  sub->add_option("--coefficients", c.coefficients, "auto | sign | pseudorandom")
      ->check(CLI::IsMember({"auto", "sign", "pseudorandom"}))
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "simulation seed")->capture_default_str();
  sub->add_option("--trials", c.trials, "independent setups")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_flag("--parallel,!--serial", c.parallel, "run parties on OpenMP threads (default on)");
  sub->add_option("--out", c.out, "write the JSON report here");
  sub->add_option("--transcript", c.transcript, "write the first trial's JSONL transcript here");
}

int cmd_simulate(const SimArgs& args) {
  const auto cfg = args.resolve();
  auto report = harness::run_simulation(cfg);
  const std::string text = json(report).dump(2) + "\n";
  if (!cfg.out.empty()) write_text(cfg.out, text);
  if (!cfg.transcript.empty() && report.transcript) write_text(cfg.transcript, report.transcript->to_jsonl());
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::cout << (report.all_match ? "ok" : "MISMATCH") << ": " << report.rounds.size()
              << " rounds checked, report in " << cfg.out << "\n";
  }
  if (!report.all_match) {
    std::cerr << "error: " << report.error << "\n";
    return 1;
  }
  return 0;
}

struct BoundsArgs {
  std::string protocol = "pcl";
  std::size_t n = 0;
  std::optional<std::size_t> t;
  std::optional<double> tau;
  std::optional<std::uint64_t> rounds;
  std::string out;
};

int cmd_bounds(const BoundsArgs& a) {
  if (!a.t && !a.tau) throw CLI::ValidationError("bounds", "one of --t or --tau is required");
  json j;
  bool ok = true;
  if (a.protocol == "pcl") {
    const std::size_t t = a.t ? *a.t : static_cast<std::size_t>(std::floor(*a.tau * static_cast<double>(a.n)));
    auto b = analysis::pcl_bounds(a.n, t, a.rounds);
    j = b;
    ok = b.feasible;
    if (!ok) {
      std::cerr << "error: " << b.rounds << " rounds exceed the limit of " << b.max_rounds << " for n=" << a.n
                << ", t=" << t << "\n";
    }
  } else {
    const double tau = a.tau ? *a.tau : static_cast<double>(*a.t) / static_cast<double>(a.n);
    j = analysis::kdk_hole_bounds(a.n, tau);
    if (a.t) j["t"] = *a.t;
  }
  const std::string text = j.dump(2) + "\n";
  if (!a.out.empty()) write_text(a.out, text);
  std::cout << text;
  return ok ? 0 : 1;
}

struct AttackArgs {
  SimArgs sim;
  std::vector<std::size_t> coalition;
  std::uint64_t round = 1;
};

int cmd_attack(const AttackArgs& a) {
  auto cfg = a.sim.resolve();
  auto report = harness::attack_simulation(cfg, a.coalition, a.round);
  const std::string text = json(report).dump(2) + "\n";
  if (!cfg.out.empty()) write_text(cfg.out, text);
  std::cout << text;
  return 0;
}

void emit_csv(const std::string& out, const std::vector<harness::BenchRecord>& recs) {
  if (out.empty()) {
    harness::write_csv(std::cout, recs);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + out + " for writing");
  harness::write_csv(f, recs);
}

void print_summary(const std::vector<harness::BenchRecord>& recs) {
  for (const auto& s : harness::summarize(recs)) {
    std::cerr << s.experiment << " " << s.n_or_bits << ": mean " << s.mean_ms << " ms, median "
              << s.median_ms << " ms, sd " << s.stddev_ms << ", median muls " << s.median_muls;
    if (s.failures) std::cerr << ", " << s.failures << " failed";
    std::cerr << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privagg: private aggregation protocols, bounds, attacks and benchmarks"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file with option values, keyed by long option name");
  app.allow_config_extras(CLI::config_extras_mode::error);

  SimArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run setup and rounds, aggregate, check every sum");
  simulate->fallthrough();
  add_sim_options(simulate, sim);

  BoundsArgs bounds;
  auto* bnd = app.add_subcommand("bounds", "round and hole bounds");
  bnd->fallthrough();
  bnd->add_option("--protocol", bounds.protocol, "pcl | kdkm")->check(CLI::IsMember({"pcl", "kdkm"}))->required();
  bnd->add_option("--n", bounds.n, "number of parties")->required()->check(CLI::PositiveNumber);
  auto* t_opt = bnd->add_option("--t", bounds.t, "collusion tolerance");
  auto* tau_opt = bnd->add_option("--tau", bounds.tau, "collusion fraction")->check(CLI::Range(0.0, 1.0));
  t_opt->excludes(tau_opt);
  bnd->add_option("--rounds", bounds.rounds, "rounds to check against the limit");
  bnd->add_option("--out", bounds.out, "also write the JSON here");

  AttackArgs attack;
  auto* atk = app.add_subcommand("attack", "partition attack with a known coalition");
  atk->fallthrough();
  add_sim_options(atk, attack.sim);
  atk->add_option("--coalition", attack.coalition, "colluding parties, e.g. 1,4,7")->delimiter(',')->required();
  atk->add_option("--round", attack.round, "round to attack")->check(CLI::PositiveNumber)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "timing and operation-count benchmarks");
  bench->fallthrough();
  bench->require_subcommand(1);

  harness::RoundBenchOptions round_opts;
  std::string round_protocol = "pcl", round_backend = "prod", round_out;
  auto* bround = bench->add_subcommand("round", "time one party's round contribution");
  bround->fallthrough();
  bround->add_option("--protocol", round_protocol, "kdk1 | kdkm | pcl")->check(CLI::IsMember(kProtocols))->required();
  bround->add_option("--backend", round_backend, "prod | test | mock")->check(CLI::IsMember(kBackends))->capture_default_str();
  bround->add_option("--n", round_opts.ns, "party counts, e.g. 10,100,1000")->delimiter(',')->capture_default_str();
  bround->add_option("--reps", round_opts.reps, "timed repetitions per n")->check(CLI::PositiveNumber)->capture_default_str();
  bround->add_option("--warmup", round_opts.warmup, "discarded repetitions")->capture_default_str();
  bround->add_option("--seed", round_opts.seed)->capture_default_str();
  bround->add_option("--topology", round_opts.topology)->capture_default_str();
  bround->add_option("--tolerance", round_opts.tolerance)->capture_default_str();
  bround->add_option("--out", round_out, "CSV path (stdout if omitted)");

  harness::DlogBenchOptions dlog_opts;
  std::string dlog_series = "both", dlog_out;
  auto* bdlog = bench->add_subcommand("dlog", "Pollard lambda recovery in G1 and GT");
  bdlog->fallthrough();
  bdlog->add_option("--bits", dlog_opts.bits, "range widths in bits, e.g. 10,20,30")->delimiter(',')->capture_default_str();
  bdlog->add_option("--reps", dlog_opts.reps)->check(CLI::PositiveNumber)->capture_default_str();
  bdlog->add_option("--seed", dlog_opts.seed)->capture_default_str();
  bdlog->add_option("--series", dlog_series, "curve | gt | both")->check(CLI::IsMember({"curve", "gt", "both"}))->capture_default_str();
  bdlog->add_option("--out", dlog_out, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*bnd) return cmd_bounds(bounds);
    if (*atk) return cmd_attack(attack);
    if (*bround) {
      round_opts.protocol = protocol::variant_from_string(round_protocol);
      round_opts.backend = harness::backend_from_string(round_backend);
      auto recs = harness::bench_round(round_opts);
      emit_csv(round_out, recs);
      print_summary(recs);
      return 0;
    }
    if (*bdlog) {
      dlog_opts.curve = dlog_series != "gt";
      dlog_opts.gt = dlog_series != "curve";
      auto recs = harness::bench_dlog(dlog_opts);
      emit_csv(dlog_out, recs);
      print_summary(recs);
      return std::all_of(recs.begin(), recs.end(), [](const auto& r) { return r.ok; }) ? 0 : 1;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
