#include "privagg/protocol/transcript.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

namespace privagg::protocol {

namespace {

bool record_less(const TranscriptRecord& a, const TranscriptRecord& b) {
  if (a.round != b.round) return a.round < b.round;
  if (a.phase != b.phase) return a.phase == "key";
  return a.party < b.party;
}

}  // namespace

void Transcript::insert(TranscriptRecord r) {
  auto pos = std::upper_bound(records_.begin(), records_.end(), r, record_less);
  records_.insert(pos, std::move(r));
}

void Transcript::add_key(std::size_t party, const Bytes& encoded) {
  insert({std::string(to_string(variant_)), "key", 0, party, to_hex(encoded)});
}

void Transcript::add_contribution(std::uint64_t round, std::size_t party, const Bytes& encoded) {
  if (round == 0) throw ProtocolError("transcript: contributions start at round 1");
  insert({std::string(to_string(variant_)), "contribution", round, party, to_hex(encoded)});
}

std::vector<std::pair<std::size_t, Bytes>> Transcript::payloads(std::string_view phase,
                                                                std::uint64_t round) const {
  std::vector<std::pair<std::size_t, Bytes>> out;
  for (const auto& r : records_) {
    if (r.phase == phase && r.round == round) out.emplace_back(r.party, from_hex(r.payload_hex));
  }
  return out;
}

std::uint64_t Transcript::last_round() const {
  std::uint64_t k = 0;
  for (const auto& r : records_) k = std::max(k, r.round);
  return k;
}

std::string Transcript::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    nlohmann::ordered_json j = {{"variant", r.variant},
                                {"phase", r.phase},
                                {"round", r.round},
                                {"party", r.party},
                                {"payload_hex", r.payload_hex}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

Transcript Transcript::from_jsonl(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Transcript> t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    TranscriptRecord r{j.at("variant").get<std::string>(), j.at("phase").get<std::string>(),
                       j.at("round").get<std::uint64_t>(), j.at("party").get<std::size_t>(),
                       j.at("payload_hex").get<std::string>()};
    if (r.phase != "key" && r.phase != "contribution") {
      throw ProtocolError("transcript: unknown phase '" + r.phase + "'");
    }
    if (!t) t.emplace(variant_from_string(r.variant));
    if (r.variant != to_string(t->variant_)) throw ProtocolError("transcript: mixed variants");
    t->insert(std::move(r));
  }
  if (!t) throw ProtocolError("transcript: empty");
  return *t;
}

}  // namespace privagg::protocol
