#pragma once

#include "privagg/group/bn254/fields.hpp"

#include <array>

namespace privagg::bn254 {

// Point on y^2 = x^3 + b with a = 0, over F in {Fp, Fp2}.
template <class F>
struct Affine {
  F x{}, y{};
  bool infinity = true;

  static Affine at_infinity() { return Affine{}; }
  bool operator==(const Affine& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
  }
  Affine negate() const { return infinity ? *this : Affine{x, -y, false}; }
};

template <class F>
struct Jacobian {
  F X{}, Y{}, Z{};  // Z == 0 encodes infinity

  static Jacobian at_infinity() { return Jacobian{F::one(), F::one(), F::zero()}; }
  static Jacobian from_affine(const Affine<F>& p) {
    return p.infinity ? at_infinity() : Jacobian{p.x, p.y, F::one()};
  }
  bool is_infinity() const { return Z.is_zero(); }

  Affine<F> to_affine() const {
    if (is_infinity()) return Affine<F>::at_infinity();
    F zi = Z.inverse();
    F zi2 = zi.square();
    return Affine<F>{X * zi2, Y * zi2 * zi, false};
  }

  Jacobian dbl() const {
    if (is_infinity() || Y.is_zero()) return at_infinity();
    F a = X.square();
    F b = Y.square();
    F c = b.square();
    F d = ((X + b).square() - a - c).dbl();
    F e = a.dbl() + a;
    F f = e.square();
    F x3 = f - d.dbl();
    F c8 = c.dbl().dbl().dbl();
    return Jacobian{x3, e * (d - x3) - c8, (Y * Z).dbl()};
  }

  Jacobian add(const Jacobian& q) const {
    if (is_infinity()) return q;
    if (q.is_infinity()) return *this;
    F z1z1 = Z.square();
    F z2z2 = q.Z.square();
    F u1 = X * z2z2;
    F u2 = q.X * z1z1;
    F s1 = Y * q.Z * z2z2;
    F s2 = q.Y * Z * z1z1;
    F h = u2 - u1;
    F r = (s2 - s1).dbl();
    if (h.is_zero()) return r.is_zero() ? dbl() : at_infinity();
    F i = h.dbl().square();
    F j = h * i;
    F v = u1 * i;
    F x3 = r.square() - j - v.dbl();
    F y3 = r * (v - x3) - (s1 * j).dbl();
    F z3 = ((Z + q.Z).square() - z1z1 - z2z2) * h;
    return Jacobian{x3, y3, z3};
  }

  Jacobian add_mixed(const Affine<F>& q) const {
    if (q.infinity) return *this;
    if (is_infinity()) return from_affine(q);
    F z1z1 = Z.square();
    F u2 = q.x * z1z1;
    F s2 = q.y * Z * z1z1;
    F h = u2 - X;
    F r = (s2 - Y).dbl();
    if (h.is_zero()) return r.is_zero() ? dbl() : at_infinity();
    F hh = h.square();
    F i = hh.dbl().dbl();
    F j = h * i;
    F v = X * i;
    F x3 = r.square() - j - v.dbl();
    F y3 = r * (v - x3) - (Y * j).dbl();
    F z3 = (Z + h).square() - z1z1 - hh;
    return Jacobian{x3, y3, z3};
  }
};

template <class F>
bool on_curve(const Affine<F>& p, const F& b) {
  return p.infinity || p.y.square() == p.x.square() * p.x + b;
}

// Affine chord-and-tangent addition; one field inversion.
template <class F>
Affine<F> affine_add(const Affine<F>& p, const Affine<F>& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  F lambda;
  if (p.x == q.x) {
    if (!(p.y == q.y) || p.y.is_zero()) return Affine<F>::at_infinity();
    F x2 = p.x.square();
    lambda = (x2.dbl() + x2) * p.y.dbl().inverse();
  } else {
    lambda = (q.y - p.y) * (q.x - p.x).inverse();
  }
  F x3 = lambda.square() - p.x - q.x;
  return Affine<F>{x3, lambda * (p.x - x3) - p.y, false};
}

// Fixed 4-bit window; variable time.
template <class F>
Jacobian<F> scalar_mul(const Affine<F>& base, std::span<const u64> scalar_limbs) {
  if (base.infinity) return Jacobian<F>::at_infinity();
  std::array<Jacobian<F>, 16> table;
  table[0] = Jacobian<F>::at_infinity();
  table[1] = Jacobian<F>::from_affine(base);
  for (int k = 2; k < 16; ++k) table[k] = table[k - 1].add_mixed(base);

  Jacobian<F> acc = Jacobian<F>::at_infinity();
  bool started = false;
  for (std::size_t limb = scalar_limbs.size(); limb-- > 0;) {
    for (int nib = 15; nib >= 0; --nib) {
      const unsigned digit = (scalar_limbs[limb] >> (4 * nib)) & 0xf;
      if (started) acc = acc.dbl().dbl().dbl().dbl();
      if (digit != 0) {
        acc = started ? acc.add(table[digit]) : table[digit];
        started = true;
      }
    }
  }
  return acc;
}

}  // namespace privagg::bn254
