#pragma once

// Arithmetic for the BN254 tower
//   Fp2  = Fp[i]  / (i^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - xi),  xi = 9 + i
//   Fp12 = Fp6[w] / (w^2 - v)
// Fp elements are kept in Montgomery form with R = 2^256.

#include "privagg/bigint.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace privagg::bn254 {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace fp_detail {
inline constexpr std::array<u64, 4> kModulus = {0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                                                0xb85045b68181585dULL, 0x30644e72e131a029ULL};
inline constexpr std::array<u64, 4> kR2 = {0xf32cfc5b538afa89ULL, 0xb5e71911d44501fbULL,
                                           0x47ab1eff0a417ff6ULL, 0x06d89f71cab8351fULL};
inline constexpr std::array<u64, 4> kR1 = {0xd35d438dc58f0d9dULL, 0x0a78eb28f5c70b3dULL,
                                           0x666ea36f7879462cULL, 0x0e0a77c19a07df2fULL};
inline constexpr std::array<u64, 4> kR3 = {0xb1cd6dafda1530dfULL, 0x62f210e6a7283db6ULL,
                                           0xef7f0b0c0ada0afbULL, 0x20fd6e902d592544ULL};
inline constexpr u64 kInv = 0x87d20782e4866389ULL;  // -p^{-1} mod 2^64

inline bool geq_modulus(const std::array<u64, 4>& a) {
  for (int k = 3; k >= 0; --k) {
    if (a[k] != kModulus[k]) return a[k] > kModulus[k];
  }
  return true;
}

// Branch-free a - p if a >= p, for a < 2p.
inline std::array<u64, 4> reduce_once(const std::array<u64, 4>& a, u64 high = 0) {
  std::array<u64, 4> d;
  u64 borrow = 0;
  for (int k = 0; k < 4; ++k) {
    u128 t = static_cast<u128>(a[k]) - kModulus[k] - borrow;
    d[k] = static_cast<u64>(t);
    borrow = static_cast<u64>(t >> 64) & 1;
  }
  // Keep a when the subtraction borrowed past the high word.
  const u64 keep = static_cast<u64>(0) - (borrow & (high ^ 1));
  std::array<u64, 4> r;
  for (int k = 0; k < 4; ++k) r[k] = (a[k] & keep) | (d[k] & ~keep);
  return r;
}

inline std::array<u64, 4> mont_mul(const std::array<u64, 4>& a, const std::array<u64, 4>& b) {
  u64 t0 = 0, t1 = 0, t2 = 0, t3 = 0, t4 = 0;
  for (int i = 0; i < 4; ++i) {
    const u64 bi = b[i];
    u128 s = static_cast<u128>(a[0]) * bi + t0;
    t0 = static_cast<u64>(s);
    s = static_cast<u128>(a[1]) * bi + t1 + static_cast<u64>(s >> 64);
    t1 = static_cast<u64>(s);
    s = static_cast<u128>(a[2]) * bi + t2 + static_cast<u64>(s >> 64);
    t2 = static_cast<u64>(s);
    s = static_cast<u128>(a[3]) * bi + t3 + static_cast<u64>(s >> 64);
    t3 = static_cast<u64>(s);
    s = static_cast<u128>(t4) + static_cast<u64>(s >> 64);
    t4 = static_cast<u64>(s);
    const u64 t5 = static_cast<u64>(s >> 64);

    const u64 m = t0 * kInv;
    s = static_cast<u128>(m) * kModulus[0] + t0;
    s = static_cast<u128>(m) * kModulus[1] + t1 + static_cast<u64>(s >> 64);
    t0 = static_cast<u64>(s);
    s = static_cast<u128>(m) * kModulus[2] + t2 + static_cast<u64>(s >> 64);
    t1 = static_cast<u64>(s);
    s = static_cast<u128>(m) * kModulus[3] + t3 + static_cast<u64>(s >> 64);
    t2 = static_cast<u64>(s);
    s = static_cast<u128>(t4) + static_cast<u64>(s >> 64);
    t3 = static_cast<u64>(s);
    t4 = t5 + static_cast<u64>(s >> 64);
  }
  return reduce_once({t0, t1, t2, t3}, t4);
}
}  // namespace fp_detail

struct Fp {
  std::array<u64, 4> v{};  // Montgomery representation

  static Fp zero() { return Fp{}; }
  static Fp one() { return Fp{fp_detail::kR1}; }
  static Fp from_u64(u64 x) { return Fp{fp_detail::mont_mul({x, 0, 0, 0}, fp_detail::kR2)}; }
  static Fp from_bigint(const BigInt& x);
  static const BigInt& modulus();

  BigInt to_bigint() const;
  // Canonical (non-Montgomery) limbs.
  std::array<u64, 4> canonical() const { return fp_detail::mont_mul(v, {1, 0, 0, 0}); }

  bool is_zero() const { return (v[0] | v[1] | v[2] | v[3]) == 0; }
  bool is_odd() const { return canonical()[0] & 1; }
  bool operator==(const Fp&) const = default;

  friend Fp operator+(const Fp& a, const Fp& b) {
    Fp r;
    u64 carry = 0;
    for (int k = 0; k < 4; ++k) {
      u128 s = static_cast<u128>(a.v[k]) + b.v[k] + carry;
      r.v[k] = static_cast<u64>(s);
      carry = static_cast<u64>(s >> 64);
    }
    r.v = fp_detail::reduce_once(r.v);
    return r;
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    Fp r;
    u64 borrow = 0;
    for (int k = 0; k < 4; ++k) {
      u128 d = static_cast<u128>(a.v[k]) - b.v[k] - borrow;
      r.v[k] = static_cast<u64>(d);
      borrow = static_cast<u64>(d >> 64) & 1;
    }
    const u64 mask = static_cast<u64>(0) - borrow;
    u64 carry = 0;
    for (int k = 0; k < 4; ++k) {
      u128 s = static_cast<u128>(r.v[k]) + (fp_detail::kModulus[k] & mask) + carry;
      r.v[k] = static_cast<u64>(s);
      carry = static_cast<u64>(s >> 64);
    }
    return r;
  }
  friend Fp operator-(const Fp& a) { return Fp{} - a; }
  friend Fp operator*(const Fp& a, const Fp& b) { return Fp{fp_detail::mont_mul(a.v, b.v)}; }
  Fp& operator+=(const Fp& b) { return *this = *this + b; }
  Fp& operator-=(const Fp& b) { return *this = *this - b; }
  Fp& operator*=(const Fp& b) { return *this = *this * b; }

  Fp square() const { return *this * *this; }
  Fp dbl() const { return *this + *this; }
  Fp pow(const BigInt& e) const;
  // Zero maps to zero.
  Fp inverse() const;
  std::optional<Fp> sqrt() const;

  void to_bytes(std::span<std::uint8_t, 32> out) const;
  // Rejects non-canonical encodings (value >= p).
  static std::optional<Fp> from_bytes(std::span<const std::uint8_t, 32> in);
};

struct Fp2 {
  Fp c0, c1;

  static Fp2 zero() { return {}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool operator==(const Fp2&) const = default;

  friend Fp2 operator+(const Fp2& a, const Fp2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend Fp2 operator-(const Fp2& a, const Fp2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  friend Fp2 operator-(const Fp2& a) { return {-a.c0, -a.c1}; }
  friend Fp2 operator*(const Fp2& a, const Fp2& b) {
    Fp v0 = a.c0 * b.c0;
    Fp v1 = a.c1 * b.c1;
    return {v0 - v1, (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1};
  }
  friend Fp2 operator*(const Fp2& a, const Fp& s) { return {a.c0 * s, a.c1 * s}; }
  Fp2& operator+=(const Fp2& b) { return *this = *this + b; }
  Fp2& operator-=(const Fp2& b) { return *this = *this - b; }
  Fp2& operator*=(const Fp2& b) { return *this = *this * b; }

  Fp2 square() const {
    Fp t = c0 * c1;
    return {(c0 + c1) * (c0 - c1), t + t};
  }
  Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fp2 conj() const { return {c0, -c1}; }
  // Multiply by xi = 9 + i.
  Fp2 mul_by_xi() const {
    Fp a8 = c0.dbl().dbl().dbl();
    Fp b8 = c1.dbl().dbl().dbl();
    return {a8 + c0 - c1, b8 + c1 + c0};
  }
  Fp2 inverse() const {
    Fp t = (c0.square() + c1.square()).inverse();
    return {c0 * t, -(c1 * t)};
  }
  Fp2 pow(const BigInt& e) const;
  std::optional<Fp2> sqrt() const;
  // Sign convention used by point compression.
  bool sign() const { return c0.is_zero() ? c1.is_odd() : c0.is_odd(); }
};

struct Fp6 {
  Fp2 c0, c1, c2;

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  bool operator==(const Fp6&) const = default;

  friend Fp6 operator+(const Fp6& a, const Fp6& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend Fp6 operator-(const Fp6& a, const Fp6& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend Fp6 operator-(const Fp6& a) { return {-a.c0, -a.c1, -a.c2}; }
  friend Fp6 operator*(const Fp6& a, const Fp6& b) {
    Fp2 v0 = a.c0 * b.c0;
    Fp2 v1 = a.c1 * b.c1;
    Fp2 v2 = a.c2 * b.c2;
    return {v0 + ((a.c1 + a.c2) * (b.c1 + b.c2) - v1 - v2).mul_by_xi(),
            (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1 + v2.mul_by_xi(),
            (a.c0 + a.c2) * (b.c0 + b.c2) - v0 - v2 + v1};
  }
  Fp6 square() const { return *this * *this; }
  // Multiply by v.
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  Fp6 inverse() const {
    Fp2 t0 = c0.square() - (c1 * c2).mul_by_xi();
    Fp2 t1 = c2.square().mul_by_xi() - c0 * c1;
    Fp2 t2 = c1.square() - c0 * c2;
    Fp2 d = (c0 * t0 + (c2 * t1 + c1 * t2).mul_by_xi()).inverse();
    return {t0 * d, t1 * d, t2 * d};
  }
};

struct Fp12 {
  Fp6 c0, c1;

  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool operator==(const Fp12&) const = default;

  friend Fp12 operator*(const Fp12& a, const Fp12& b) {
    Fp6 v0 = a.c0 * b.c0;
    Fp6 v1 = a.c1 * b.c1;
    return {v0 + v1.mul_by_v(), (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1};
  }
  Fp12& operator*=(const Fp12& b) { return *this = *this * b; }

  Fp12 square() const {
    Fp6 ab = c0 * c1;
    Fp6 t = (c0 + c1) * (c0 + c1.mul_by_v());
    return {t - ab - ab.mul_by_v(), ab + ab};
  }
  // Equals the inverse on the cyclotomic subgroup, which contains GT.
  Fp12 conj() const { return {c0, -c1}; }
  Fp12 inverse() const {
    Fp6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }
  Fp12 frobenius() const;
  Fp12 pow(const BigInt& e) const;

  // The six Fp2 coefficients of 1, w, ..., w^5.
  std::array<Fp2, 6> coefficients() const { return {c0.c0, c1.c0, c0.c1, c1.c1, c0.c2, c1.c2}; }
  static Fp12 from_coefficients(const std::array<Fp2, 6>& k) {
    return {{k[0], k[2], k[4]}, {k[1], k[3], k[5]}};
  }
};

}  // namespace privagg::bn254
