#include "privagg/protocol/params.hpp"

#include <string>

namespace privagg::protocol {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kdk1: return "kdk1";
    case Variant::kdk_multi: return "kdkm";
    case Variant::pcl: return "pcl";
  }
  return "?";
}

Variant variant_from_string(std::string_view name) {
  if (name == "kdk1") return Variant::kdk1;
  if (name == "kdkm" || name == "kdk-multi") return Variant::kdk_multi;
  if (name == "pcl") return Variant::pcl;
  throw ProtocolError("unknown protocol '" + std::string(name) + "' (kdk1, kdkm, pcl)");
}

void ProtocolParams::validate() const {
  if (n == 0) throw ProtocolError("params: n must be positive");
  if (topology.n != n) throw ProtocolError("params: topology size differs from n");
  topology.validate();
  if (tolerance >= n && n > 1) throw ProtocolError("params: tolerance must be below n");
  if (beta != 0 && n > (kMaxAggregate - 1) / beta) {
    throw ProtocolError("params: n * beta must be below 2^48");
  }
  if (max_rounds == 0) throw ProtocolError("params: at least one round is required");
  switch (variant) {
    case Variant::kdk1:
      if (max_rounds != 1) throw ProtocolError("params: kdk1 runs exactly one round");
      if (!topology.fixed) throw ProtocolError("params: kdk1 needs a fixed matrix");
      break;
    case Variant::kdk_multi:
      if (!topology.fixed) throw ProtocolError("params: kdkm needs a fixed matrix");
      break;
    case Variant::pcl:
      if (max_rounds > pcl_round_limit()) {
        throw ProtocolError("params: pcl allows at most floor((n - t) / 2) = " +
                            std::to_string(pcl_round_limit()) + " rounds, got " +
                            std::to_string(max_rounds));
      }
      break;
  }
}

matrixgen::TopologyPlan standard_plan(Variant v, std::size_t n, matrixgen::Sparsity sparsity) {
  matrixgen::TopologyPlan plan{n, std::move(sparsity)};
  if (v == Variant::pcl) {
    plan.coefficients = matrixgen::Coefficients::pseudorandom;
    plan.fixed = false;
  } else {
    plan.coefficients = matrixgen::Coefficients::sign;
    plan.fixed = true;
  }
  return plan;
}

}  // namespace privagg::protocol
