#pragma once

#include "privagg/bigint.hpp"
#include "privagg/group/op_counter.hpp"

#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

namespace privagg {

enum class GroupKind { curve, curve_twist, pairing_target, small_field_subgroup, mock_additive };

std::string_view to_string(GroupKind kind);

// Required to construct the deliberately insecure test backends.
struct InsecureTag {
  explicit InsecureTag() = default;
};
inline constexpr InsecureTag insecure{};

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A cyclic group of prime order written multiplicatively. `exp` reduces the
// scalar modulo the order, and every public arithmetic call is tallied on the
// thread's active OpCounter.
template <class G>
concept PrimeOrderGroup = requires(const G& g, const typename G::Element& a, const BigInt& s,
                                   std::span<const std::uint8_t> bytes) {
  typename G::Element;
  { g.order() } -> std::same_as<const BigInt&>;
  { g.kind() } -> std::same_as<GroupKind>;
  { g.identity() } -> std::same_as<typename G::Element>;
  { g.generator() } -> std::same_as<typename G::Element>;
  { g.mul(a, a) } -> std::same_as<typename G::Element>;
  { g.exp(a, s) } -> std::same_as<typename G::Element>;
  { g.inverse(a) } -> std::same_as<typename G::Element>;
  { g.is_element(a) } -> std::same_as<bool>;
  { g.encode(a) } -> std::same_as<Bytes>;
  { g.decode(bytes) } -> std::same_as<typename G::Element>;
  { g.encoded_size() } -> std::same_as<std::size_t>;
  // Cheap deterministic function of the canonical representation; drives
  // pseudorandom walks.
  { g.fingerprint(a) } -> std::same_as<std::uint64_t>;
  { a == a } -> std::same_as<bool>;
};

// Asymmetric bilinear map e: G1 x G2 -> GT with fixed generators.
template <class E>
concept BilinearGroup = requires(const E& e, const typename E::G1::Element& a,
                                 const typename E::G2::Element& b, std::uint64_t round) {
  requires PrimeOrderGroup<typename E::G1>;
  requires PrimeOrderGroup<typename E::G2>;
  requires PrimeOrderGroup<typename E::GT>;
  { e.g1() } -> std::same_as<const typename E::G1&>;
  { e.g2() } -> std::same_as<const typename E::G2&>;
  { e.gt() } -> std::same_as<const typename E::GT&>;
  { e.pair(a, b) } -> std::same_as<typename E::GT::Element>;
  { e.hash_to_g2(round) } -> std::same_as<typename E::G2::Element>;
};

}  // namespace privagg
