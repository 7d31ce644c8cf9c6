#pragma once

#include "privagg/group/group.hpp"

#include <cstdint>

namespace privagg {

// Order-p subgroup of (Z/qZ)^* with p | q-1 and q < 2^63. Insecure; exists so
// exhaustive oracles finish quickly.
class ModpSubgroup {
 public:
  struct Element {
    std::uint64_t value = 1;
    bool operator==(const Element&) const = default;
  };

  ModpSubgroup(InsecureTag, std::uint64_t q, std::uint64_t p, std::uint64_t g);

  // q = 2p+1 safe prime with a 61-bit p; large enough for any nβ < 2^48.
  static ModpSubgroup default_test();

  const BigInt& order() const { return order_; }
  GroupKind kind() const { return GroupKind::small_field_subgroup; }
  std::uint64_t modulus() const { return q_; }
  std::uint64_t order_u64() const { return p_; }

  Element identity() const { return Element{1}; }
  Element generator() const { return Element{g_}; }

  Element mul(const Element& a, const Element& b) const {
    count::multiplication();
    return Element{mulmod(a.value, b.value)};
  }
  Element exp(const Element& base, const BigInt& scalar) const {
    count::exponentiation();
    return Element{powmod(base.value, to_u64(mod_reduce(scalar, order_)))};
  }
  Element exp_u64(const Element& base, std::uint64_t scalar) const {
    count::exponentiation();
    return Element{powmod(base.value, scalar % p_)};
  }
  Element inverse(const Element& a) const {
    count::inversion();
    return Element{powmod(a.value, p_ - 1)};
  }
  bool is_element(const Element& a) const {
    return a.value != 0 && a.value < q_ && powmod(a.value, p_) == 1;
  }

  Bytes encode(const Element& a) const;
  Element decode(std::span<const std::uint8_t> bytes) const;
  std::size_t encoded_size() const { return width_; }
  std::uint64_t fingerprint(const Element& a) const { return a.value; }

 private:
  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
  }
  std::uint64_t powmod(std::uint64_t base, std::uint64_t e) const;

  std::uint64_t q_;
  std::uint64_t p_;
  std::uint64_t g_;
  BigInt order_;
  std::size_t width_;
};

}  // namespace privagg
