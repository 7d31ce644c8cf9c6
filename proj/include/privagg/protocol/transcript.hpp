#pragma once

// Broadcast log, one JSON object per line:
//   {"variant":"pcl","phase":"key","round":0,"party":1,"payload_hex":"..."}
// Keys use phase "key" and round 0; contributions use phase "contribution".
// Records are kept sorted by (round, party).

#include "privagg/bigint.hpp"
#include "privagg/protocol/params.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace privagg::protocol {

struct TranscriptRecord {
  std::string variant;
  std::string phase;
  std::uint64_t round = 0;
  std::size_t party = 0;
  std::string payload_hex;

  bool operator==(const TranscriptRecord&) const = default;
};

class Transcript {
 public:
  explicit Transcript(Variant v = Variant::pcl) : variant_(v) {}

  Variant variant() const { return variant_; }
  void add_key(std::size_t party, const Bytes& encoded);
  void add_contribution(std::uint64_t round, std::size_t party, const Bytes& encoded);

  const std::vector<TranscriptRecord>& records() const { return records_; }
  // Payloads of one phase/round in party order.
  std::vector<std::pair<std::size_t, Bytes>> payloads(std::string_view phase,
                                                      std::uint64_t round) const;
  std::uint64_t last_round() const;

  std::string to_jsonl() const;
  static Transcript from_jsonl(std::string_view text);

  bool operator==(const Transcript&) const = default;

 private:
  void insert(TranscriptRecord r);
  Variant variant_;
  std::vector<TranscriptRecord> records_;
};

}  // namespace privagg::protocol
