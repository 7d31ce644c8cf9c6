#pragma once

#include "privagg/group/group.hpp"

#include <cstdint>

namespace privagg {

// Additive group Z_p presented through the multiplicative group interface:
// "mul" is addition and "exp" is scalar multiplication. Discrete logs are
// trivial, so this is test-only.
class MockAdditiveGroup {
 public:
  struct Element {
    std::uint64_t value = 0;
    bool operator==(const Element&) const = default;
  };

  MockAdditiveGroup(InsecureTag, std::uint64_t p, std::uint64_t generator = 1);

  const BigInt& order() const { return order_; }
  GroupKind kind() const { return GroupKind::mock_additive; }
  std::uint64_t order_u64() const { return p_; }

  Element identity() const { return Element{0}; }
  Element generator() const { return Element{g_}; }

  Element mul(const Element& a, const Element& b) const {
    count::multiplication();
    std::uint64_t s = a.value + b.value;
    return Element{s >= p_ ? s - p_ : s};
  }
  Element exp(const Element& base, const BigInt& scalar) const {
    count::exponentiation();
    return Element{mulmod(base.value, to_u64(mod_reduce(scalar, order_)))};
  }
  Element inverse(const Element& a) const {
    count::inversion();
    return Element{a.value == 0 ? 0 : p_ - a.value};
  }
  bool is_element(const Element& a) const { return a.value < p_; }

  Bytes encode(const Element& a) const;
  Element decode(std::span<const std::uint8_t> bytes) const;
  std::size_t encoded_size() const { return width_; }
  std::uint64_t fingerprint(const Element& a) const { return a.value; }

  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }

 private:
  std::uint64_t p_;
  std::uint64_t g_;
  BigInt order_;
  std::size_t width_;
};

// e(a, b) = a*b mod p on three copies of Z_p. Generators are P = Q = 1, so
// e(P, Q) = 1, which is not the identity 0.
class MockPairing {
 public:
  using G1 = MockAdditiveGroup;
  using G2 = MockAdditiveGroup;
  using GT = MockAdditiveGroup;

  MockPairing(InsecureTag, std::uint64_t p);
  // 2^61 - 1.
  static MockPairing default_test();

  const G1& g1() const { return group_; }
  const G2& g2() const { return group_; }
  const GT& gt() const { return group_; }
  G1::Element p1() const { return group_.generator(); }
  G2::Element q2() const { return group_.generator(); }
  GT::Element gt_generator() const { return group_.generator(); }

  GT::Element pair(const G1::Element& a, const G2::Element& b) const {
    count::pairing();
    return GT::Element{group_.mulmod(a.value, b.value)};
  }

  // Nonzero hash of the round counter.
  G2::Element hash_to_g2(std::uint64_t round) const;

 private:
  MockAdditiveGroup group_;
};

}  // namespace privagg
