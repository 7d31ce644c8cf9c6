#pragma once

// Production backend: the 254-bit Barreto-Naehrig curve E: y^2 = x^3 + 3 over
// Fp (BN parameter u = 4965661367192848881), its sextic D-type twist
// E': y^2 = x^3 + 3/(9+i) over Fp2, and the optimal ate pairing into the
// order-r subgroup of Fp12^*.

#include "privagg/group/bn254/curve.hpp"
#include "privagg/group/bn254/fields.hpp"
#include "privagg/group/group.hpp"

namespace privagg {

namespace bn254 {

using G1Point = Affine<Fp>;
using G2Point = Affine<Fp2>;

const BigInt& curve_order();
std::array<u64, 4> scalar_limbs(const BigInt& scalar);  // reduced mod r

const Fp& g1_b();
const Fp2& g2_b();
G1Point g1_generator();
G2Point g2_generator();

// (x, y) -> (beta x, y) acts on G1 as multiplication by lambda (both cube
// roots of unity). k = k1 + k2 lambda mod r with |k1|, |k2| < 2^128.
const BigInt& glv_lambda();
G1Point g1_endomorphism(const G1Point& p);
std::pair<BigInt, BigInt> glv_split(const BigInt& scalar);
// Width-5 wNAF on both halves of the split; about half the doublings of the
// plain window method.
G1Point g1_mul(const G1Point& p, const BigInt& scalar);
// Fixed 4-bit window over the full scalar, kept as a reference.
G1Point g1_mul_reference(const G1Point& p, const BigInt& scalar);

// Untwist-Frobenius-twist endomorphism on E'(Fp2).
G2Point twist_frobenius(const G2Point& q);

Fp12 miller_loop(const G1Point& p, const G2Point& q);
Fp12 final_exponentiation(const Fp12& f);
// Plain exponentiation by (p^12 - 1) / r; reference for the addition chain.
Fp12 final_exponentiation_naive(const Fp12& f);
// Uncounted optimal ate pairing.
Fp12 ate_pairing(const G1Point& p, const G2Point& q);

}  // namespace bn254

class Bn254G1 {
 public:
  using Element = bn254::G1Point;

  const BigInt& order() const { return bn254::curve_order(); }
  GroupKind kind() const { return GroupKind::curve; }
  Element identity() const { return Element::at_infinity(); }
  Element generator() const { return bn254::g1_generator(); }

  Element mul(const Element& a, const Element& b) const {
    count::multiplication();
    return bn254::affine_add(a, b);
  }
  Element exp(const Element& base, const BigInt& scalar) const;
  Element inverse(const Element& a) const {
    count::inversion();
    return a.negate();
  }
  // Uncounted point negation, used for precomputed key negation.
  Element negate(const Element& a) const { return a.negate(); }
  bool is_element(const Element& a) const { return bn254::on_curve(a, bn254::g1_b()); }

  // 0x02/0x03 tag carrying the parity of y, then x big-endian; 33 zero
  // bytes encode the point at infinity.
  Bytes encode(const Element& a) const;
  Element decode(std::span<const std::uint8_t> bytes) const;
  std::size_t encoded_size() const { return 33; }
  std::uint64_t fingerprint(const Element& a) const { return a.infinity ? 0 : a.x.v[0]; }
};

class Bn254G2 {
 public:
  using Element = bn254::G2Point;

  const BigInt& order() const { return bn254::curve_order(); }
  GroupKind kind() const { return GroupKind::curve_twist; }
  Element identity() const { return Element::at_infinity(); }
  Element generator() const { return bn254::g2_generator(); }

  Element mul(const Element& a, const Element& b) const {
    count::multiplication();
    return bn254::affine_add(a, b);
  }
  Element exp(const Element& base, const BigInt& scalar) const;
  Element inverse(const Element& a) const {
    count::inversion();
    return a.negate();
  }
  // Includes the order-r subgroup check.
  bool is_element(const Element& a) const;

  // Tag byte, then x.c0 and x.c1 big-endian (65 bytes).
  Bytes encode(const Element& a) const;
  Element decode(std::span<const std::uint8_t> bytes) const;
  std::size_t encoded_size() const { return 65; }
  std::uint64_t fingerprint(const Element& a) const { return a.infinity ? 0 : a.x.c0.v[0]; }
};

class Bn254GT {
 public:
  using Element = bn254::Fp12;

  explicit Bn254GT(Element generator) : generator_(generator) {}

  const BigInt& order() const { return bn254::curve_order(); }
  GroupKind kind() const { return GroupKind::pairing_target; }
  Element identity() const { return Element::one(); }
  Element generator() const { return generator_; }

  Element mul(const Element& a, const Element& b) const {
    count::multiplication();
    return a * b;
  }
  Element exp(const Element& base, const BigInt& scalar) const;
  Element inverse(const Element& a) const {
    count::inversion();
    return a.conj();
  }
  bool is_element(const Element& a) const;

  // Twelve Fp coefficients, 32 bytes each, ordered by the tower basis.
  Bytes encode(const Element& a) const;
  Element decode(std::span<const std::uint8_t> bytes) const;
  std::size_t encoded_size() const { return 384; }
  std::uint64_t fingerprint(const Element& a) const {
    return a.c0.c0.c0.v[0] ^ (a.c1.c0.c0.v[0] << 1);
  }

 private:
  Element generator_;
};

class Bn254Pairing {
 public:
  using G1 = Bn254G1;
  using G2 = Bn254G2;
  using GT = Bn254GT;

  Bn254Pairing();

  const G1& g1() const { return g1_; }
  const G2& g2() const { return g2_; }
  const GT& gt() const { return gt_; }
  G1::Element p1() const { return g1_.generator(); }
  G2::Element q2() const { return g2_.generator(); }
  GT::Element gt_generator() const { return gt_.generator(); }

  GT::Element pair(const G1::Element& a, const G2::Element& b) const {
    count::pairing();
    return bn254::ate_pairing(a, b);
  }

  // Try-and-increment: x = SHAKE256(domain || round || counter) read as two
  // Fp coordinates, the first x on the twist wins, y's sign comes from the
  // hash, then the cofactor 2p - r is cleared. Uncounted.
  G2::Element hash_to_g2(std::uint64_t round) const;

 private:
  G1 g1_;
  G2 g2_;
  GT gt_;
};

}  // namespace privagg
