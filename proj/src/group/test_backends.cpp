#include "privagg/group/mock_pairing.hpp"
#include "privagg/group/modp_subgroup.hpp"
#include "privagg/hash.hpp"

namespace privagg {

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::curve: return "curve";
    case GroupKind::curve_twist: return "curve-twist";
    case GroupKind::pairing_target: return "curve-pairing-target";
    case GroupKind::small_field_subgroup: return "small-field-subgroup";
    case GroupKind::mock_additive: return "mock-additive";
  }
  return "unknown";
}

namespace {

Bytes encode_u64(std::uint64_t v, std::size_t width) { return to_bytes_be(from_u64(v), width); }

std::uint64_t decode_u64(std::span<const std::uint8_t> bytes, std::size_t width) {
  if (bytes.size() != width) throw GroupError("decode: wrong encoding width");
  std::uint64_t v = 0;
  for (auto b : bytes) v = (v << 8) | b;
  return v;
}

}  // namespace

ModpSubgroup::ModpSubgroup(InsecureTag, std::uint64_t q, std::uint64_t p, std::uint64_t g)
    : q_(q), p_(p), g_(g), order_(from_u64(p)), width_(byte_width(from_u64(q))) {
  if (q >= (std::uint64_t{1} << 63)) throw GroupError("test-subgroup: q must be below 2^63");
  if (!is_probable_prime(from_u64(q))) throw GroupError("test-subgroup: q is not prime");
  if (!is_probable_prime(order_)) throw GroupError("test-subgroup: p is not prime");
  if ((q - 1) % p != 0) throw GroupError("test-subgroup: p does not divide q-1");
  if (g <= 1 || g >= q || powmod(g, p) != 1) {
    throw GroupError("test-subgroup: generator does not have order p");
  }
}

ModpSubgroup ModpSubgroup::default_test() {
  return ModpSubgroup(insecure, 4611686018427377339ULL, 2305843009213688669ULL, 9);
}

std::uint64_t ModpSubgroup::powmod(std::uint64_t base, std::uint64_t e) const {
  std::uint64_t result = 1;
  base %= q_;
  while (e) {
    if (e & 1) result = mulmod(result, base);
    base = mulmod(base, base);
    e >>= 1;
  }
  return result;
}

Bytes ModpSubgroup::encode(const Element& a) const { return encode_u64(a.value, width_); }

ModpSubgroup::Element ModpSubgroup::decode(std::span<const std::uint8_t> bytes) const {
  Element e{decode_u64(bytes, width_)};
  if (!is_element(e)) throw GroupError("test-subgroup: decoded value is not a subgroup element");
  return e;
}

MockAdditiveGroup::MockAdditiveGroup(InsecureTag, std::uint64_t p, std::uint64_t generator)
    : p_(p), g_(generator), order_(from_u64(p)), width_(byte_width(from_u64(p))) {
  if (p < 2 || !is_probable_prime(order_)) throw GroupError("mock: order is not prime");
  if (generator == 0 || generator >= p) throw GroupError("mock: generator must be in [1, p)");
}

Bytes MockAdditiveGroup::encode(const Element& a) const { return encode_u64(a.value, width_); }

MockAdditiveGroup::Element MockAdditiveGroup::decode(std::span<const std::uint8_t> bytes) const {
  Element e{decode_u64(bytes, width_)};
  if (!is_element(e)) throw GroupError("mock: decoded value out of range");
  return e;
}

MockPairing::MockPairing(InsecureTag, std::uint64_t p) : group_(insecure, p, 1) {}

MockPairing MockPairing::default_test() { return MockPairing(insecure, 2305843009213693951ULL); }

MockAdditiveGroup::Element MockPairing::hash_to_g2(std::uint64_t round) const {
  for (std::uint32_t retry = 0;; ++retry) {
    HashInput in("privagg/mock-h2");
    in.u64(round).u32(retry);
    auto v = hash_to_zp(in.data(), group_.order());
    if (sgn(v) != 0) return {to_u64(v)};
  }
}

}  // namespace privagg
