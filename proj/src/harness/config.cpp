#include "privagg/harness/config.hpp"

#include <charconv>
#include <stdexcept>

namespace privagg::harness {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::prod: return "prod";
    case Backend::test: return "test";
    case Backend::mock: return "mock";
  }
  return "?";
}

Backend backend_from_string(std::string_view name) {
  if (name == "prod") return Backend::prod;
  if (name == "test") return Backend::test;
  if (name == "mock") return Backend::mock;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "' (prod, test, mock)");
}

namespace {

std::size_t parse_size(std::string_view s, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument(std::string(what) + ": expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string_view item(text.data() + start, end - start);
    if (!item.empty()) out.push_back(parse_size(item, "index list"));
    start = end + 1;
  }
  return out;
}

matrixgen::Sparsity parse_topology(const std::string& text, std::size_t n,
                                   const std::string& seekers, bool seekers_only) {
  if (text == "full") return matrixgen::FullTopology{};
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("topology: unknown form '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "nn") return matrixgen::NearestNeighborTopology{parse_size(arg, "topology nn")};
  if (kind == "holes") {
    matrixgen::HoleTopology h;
    h.alpha = parse_size(arg, "topology holes");
    h.seekers_only = seekers_only;
    if (seekers == "all") {
      h.seekers.assign(n, true);
    } else {
      h.seekers.assign(n, false);
      for (std::size_t i : parse_index_list(seekers)) {
        if (i < 1 || i > n) throw std::invalid_argument("seekers: index outside [1, n]");
        h.seekers[i - 1] = true;
      }
    }
    return h;
  }
  if (kind == "edges") {
    matrixgen::ExplicitTopology e;
    std::size_t start = 0;
    while (start < arg.size()) {
      auto end = arg.find(',', start);
      if (end == std::string::npos) end = arg.size();
      const std::string edge = arg.substr(start, end - start);
      auto dash = edge.find('-');
      if (dash == std::string::npos) throw std::invalid_argument("topology edges: expected i-j");
      e.edges.emplace_back(parse_size(edge.substr(0, dash), "edge"),
                           parse_size(edge.substr(dash + 1), "edge"));
      start = end + 1;
    }
    return e;
  }
  throw std::invalid_argument("topology: unknown form '" + text + "'");
}

protocol::ProtocolParams SimulationConfig::params() const {
  protocol::ProtocolParams p;
  p.variant = protocol;
  p.n = n;
  p.beta = beta;
  p.max_rounds = rounds;
  p.tolerance = tolerance;
  p.topology = protocol::standard_plan(protocol, n, parse_topology(topology, n, seekers, seekers_only));
  if (coefficients == "sign") {
    p.topology.coefficients = matrixgen::Coefficients::sign;
  } else if (coefficients == "pseudorandom") {
    p.topology.coefficients = matrixgen::Coefficients::pseudorandom;
  } else if (coefficients != "auto") {
    throw std::invalid_argument("coefficients: expected auto, sign or pseudorandom");
  }
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  p.validate();
  return p;
}

void to_json(nlohmann::json& j, const SimulationConfig& c) {
  j = {{"protocol", std::string(protocol::to_string(c.protocol))},
       {"backend", std::string(to_string(c.backend))},
       {"n", c.n},
       {"beta", c.beta},
       {"rounds", c.rounds},
       {"tolerance", c.tolerance},
       {"topology", c.topology},
       {"seekers", c.seekers},
       {"seekers-only", c.seekers_only},
       {"coefficients", c.coefficients},
       {"seed", c.seed},
       {"trials", c.trials},
       {"parallel", c.parallel}};
}

void from_json(const nlohmann::json& j, SimulationConfig& c) {
  SimulationConfig d;
  c.protocol = protocol::variant_from_string(j.value("protocol", std::string(protocol::to_string(d.protocol))));
  c.backend = backend_from_string(j.value("backend", std::string(to_string(d.backend))));
  c.n = j.value("n", d.n);
  c.beta = j.value("beta", d.beta);
  c.rounds = j.value("rounds", d.rounds);
  c.tolerance = j.value("tolerance", d.tolerance);
  c.topology = j.value("topology", d.topology);
  c.seekers = j.value("seekers", d.seekers);
  c.seekers_only = j.value("seekers-only", d.seekers_only);
  c.coefficients = j.value("coefficients", d.coefficients);
  c.seed = j.value("seed", d.seed);
  c.trials = j.value("trials", d.trials);
  c.parallel = j.value("parallel", d.parallel);
  c.out = j.value("out", d.out);
  c.transcript = j.value("transcript", d.transcript);
}

}  // namespace privagg::harness
