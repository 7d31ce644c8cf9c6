#include "privagg/group/bn254/bn254.hpp"

#include "privagg/hash.hpp"

#include <gmp.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

static_assert(sizeof(mp_limb_t) == 8, "64-bit GMP limbs required");

namespace privagg::bn254 {

namespace {

std::array<u64, 4> limbs_of(const BigInt& x) {
  if (sgn(x) < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 256) {
    throw std::out_of_range("bn254: integer does not fit in 256 bits");
  }
  std::array<u64, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = mpz_getlimbn(x.get_mpz_t(), k);
  return out;
}

BigInt bigint_of(const std::array<u64, 4>& limbs) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 4, -1, sizeof(u64), 0, 0, limbs.data());
  return r;
}

struct Constants {
  BigInt p;
  BigInt r;
  BigInt sqrt_exp;        // (p + 1) / 4
  BigInt fp2_sqrt_exp1;   // (p - 3) / 4
  BigInt fp2_sqrt_exp2;   // (p - 1) / 2
  BigInt hard_exp;        // (p^4 - p^2 + 1) / r
  BigInt g2_cofactor;     // 2p - r
  Fp g1_b;
  Fp2 g2_b;
  std::array<Fp2, 6> frob_gamma;  // xi^(i (p - 1) / 6)
  G2Point g2_gen;
  u64 ate_loop;  // 6u + 2 needs 65 bits; the top bit is implicit
  int ate_loop_bits;
};

const Constants& constants() {
  static const Constants c = [] {
    Constants k;
    k.p = BigInt("21888242871839275222246405745257275088696311157297823662689037894645226208583");
    k.r = BigInt("21888242871839275222246405745257275088548364400416034343698204186575808495617");
    k.sqrt_exp = (k.p + 1) / 4;
    k.fp2_sqrt_exp1 = (k.p - 3) / 4;
    k.fp2_sqrt_exp2 = (k.p - 1) / 2;
    BigInt p2 = k.p * k.p;
    k.hard_exp = (p2 * p2 - p2 + 1) / k.r;
    k.g2_cofactor = 2 * k.p - k.r;
    k.g1_b = Fp::from_u64(3);
    Fp2 xi{Fp::from_u64(9), Fp::one()};
    k.g2_b = Fp2{Fp::from_u64(3), Fp::zero()} * xi.inverse();
    for (int i = 0; i < 6; ++i) k.frob_gamma[i] = xi.pow(BigInt(i) * (k.p - 1) / 6);
    k.g2_gen = G2Point{
        Fp2{Fp::from_bigint(BigInt("108570469990230571359445707622328294813707563595785180869905199"
                                   "93285655852781")),
            Fp::from_bigint(BigInt("115597320329863871079910040213922857839258128618211925309174031"
                                   "51452391805634"))},
        Fp2{Fp::from_bigint(BigInt("849565392312343141760497324748927243841819058726360014877028064"
                                   "9306958101930")),
            Fp::from_bigint(BigInt("408236787586343368133220340314543556831685132759340120810574107"
                                   "6214120093531"))},
        false};
    const BigInt u("4965661367192848881");
    const BigInt loop = 6 * u + 2;
    k.ate_loop_bits = static_cast<int>(mpz_sizeinbase(loop.get_mpz_t(), 2));
    k.ate_loop = mpz_getlimbn(loop.get_mpz_t(), 0);  // bit 64 is the leading one
    return k;
  }();
  return c;
}

}  // namespace

// ---- Fp ---------------------------------------------------------------------

const BigInt& Fp::modulus() { return constants().p; }

Fp Fp::from_bigint(const BigInt& x) {
  static const BigInt p(
      "21888242871839275222246405745257275088696311157297823662689037894645226208583");
  return Fp{fp_detail::mont_mul(limbs_of(mod_reduce(x, p)), fp_detail::kR2)};
}

BigInt Fp::to_bigint() const { return bigint_of(canonical()); }

Fp Fp::pow(const BigInt& e) const {
  Fp result = one();
  for (auto bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)); bit-- > 0;) {
    result = result.square();
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) result *= *this;
  }
  return result;
}

Fp Fp::inverse() const {
  if (is_zero()) return zero();
  // For x = aR the integer inverse is a^-1 R^-1; one Montgomery product with
  // R^3 lands on a^-1 R.
  static const std::array<mp_limb_t, 4> modulus_limbs = {
      fp_detail::kModulus[0], fp_detail::kModulus[1], fp_detail::kModulus[2],
      fp_detail::kModulus[3]};
  thread_local mpz_t result;
  thread_local bool initialised = false;
  if (!initialised) {
    mpz_init2(result, 320);
    initialised = true;
  }
  mpz_t x, m;
  std::array<mp_limb_t, 4> xl = {v[0], v[1], v[2], v[3]};
  int xn = 4;
  while (xn > 0 && xl[xn - 1] == 0) --xn;
  mpz_roinit_n(x, xl.data(), xn);
  mpz_roinit_n(m, modulus_limbs.data(), 4);
  mpz_invert(result, x, m);
  std::array<u64, 4> raw{};
  for (int k = 0; k < 4; ++k) raw[k] = mpz_getlimbn(result, k);
  return Fp{fp_detail::mont_mul(raw, fp_detail::kR3)};
}

std::optional<Fp> Fp::sqrt() const {
  Fp root = pow(constants().sqrt_exp);
  if (root.square() == *this) return root;
  return std::nullopt;
}

void Fp::to_bytes(std::span<std::uint8_t, 32> out) const {
  auto c = canonical();
  for (int k = 0; k < 4; ++k) {
    for (int b = 0; b < 8; ++b) out[31 - (8 * k + b)] = static_cast<std::uint8_t>(c[k] >> (8 * b));
  }
}

std::optional<Fp> Fp::from_bytes(std::span<const std::uint8_t, 32> in) {
  std::array<u64, 4> c{};
  for (int k = 0; k < 4; ++k) {
    for (int b = 0; b < 8; ++b) c[k] |= static_cast<u64>(in[31 - (8 * k + b)]) << (8 * b);
  }
  if (fp_detail::geq_modulus(c)) return std::nullopt;
  return Fp{fp_detail::mont_mul(c, fp_detail::kR2)};
}

// ---- Fp2 / Fp12 -------------------------------------------------------------

Fp2 Fp2::pow(const BigInt& e) const {
  Fp2 result = one();
  for (auto bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)); bit-- > 0;) {
    result = result.square();
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) result *= *this;
  }
  return result;
}

std::optional<Fp2> Fp2::sqrt() const {
  // p = 3 mod 4 (Adj and Rodriguez-Henriquez, algorithm 9).
  if (is_zero()) return zero();
  const auto& k = constants();
  Fp2 a1 = pow(k.fp2_sqrt_exp1);
  Fp2 alpha = a1 * (a1 * *this);
  Fp2 a0 = alpha.conj() * alpha;
  const Fp2 minus_one = -one();
  if (a0 == minus_one) return std::nullopt;
  Fp2 x0 = a1 * *this;
  Fp2 x = alpha == minus_one ? Fp2{-x0.c1, x0.c0} : (one() + alpha).pow(k.fp2_sqrt_exp2) * x0;
  if (!(x.square() == *this)) return std::nullopt;
  return x;
}

Fp12 Fp12::frobenius() const {
  const auto& gamma = constants().frob_gamma;
  auto k = coefficients();
  for (int i = 0; i < 6; ++i) k[i] = k[i].conj() * gamma[i];
  return from_coefficients(k);
}

Fp12 Fp12::pow(const BigInt& e) const {
  std::array<Fp12, 16> table;
  table[0] = one();
  for (int k = 1; k < 16; ++k) table[k] = table[k - 1] * *this;
  const auto bits = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
  if (sgn(e) == 0) return one();
  Fp12 result = one();
  bool started = false;
  for (long top = ((bits + 3) / 4) * 4 - 1; top >= 0; top -= 4) {
    unsigned digit = 0;
    for (long b = top; b > top - 4; --b) {
      digit = (digit << 1) | static_cast<unsigned>(mpz_tstbit(e.get_mpz_t(),
                                                              static_cast<mp_bitcnt_t>(b)));
    }
    if (started) result = result.square().square().square().square();
    if (digit) {
      result = started ? result * table[digit] : table[digit];
      started = true;
    }
  }
  return result;
}

// ---- curve constants ----------------------------------------------------------

const BigInt& curve_order() { return constants().r; }

std::array<u64, 4> scalar_limbs(const BigInt& scalar) {
  return limbs_of(mod_reduce(scalar, constants().r));
}

const Fp& g1_b() { return constants().g1_b; }
const Fp2& g2_b() { return constants().g2_b; }
G1Point g1_generator() { return G1Point{Fp::one(), Fp::from_u64(2), false}; }
G2Point g2_generator() { return constants().g2_gen; }

namespace {

struct GlvConstants {
  BigInt lambda{"4407920970296243842393367215006156084916469457145843978461"};
  Fp beta = Fp::from_bigint(BigInt("2203960485148121921418603742825762020974279258880205651966"));
  // Short lattice basis (a1, b1), (a2, b2) of {(x, y) : x + y lambda = 0 mod r}; det = -r.
  BigInt a1{"147946756881789319010696353538189108491"};
  BigInt b1{"9931322734385697763"};
  BigInt a2{"9931322734385697763"};
  BigInt b2{"-147946756881789319000765030803803410728"};
};

const GlvConstants& glv() {
  static const GlvConstants c;
  return c;
}

// round(num / den) for den > 0
BigInt round_div(const BigInt& num, const BigInt& den) {
  BigInt q;
  BigInt twice = 2 * num + den;
  BigInt dd = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), dd.get_mpz_t());
  return q;
}

std::vector<std::int8_t> wnaf5(BigInt k) {
  std::vector<std::int8_t> out;
  out.reserve(mpz_sizeinbase(k.get_mpz_t(), 2) + 1);
  while (sgn(k) > 0) {
    int d = 0;
    if (mpz_odd_p(k.get_mpz_t())) {
      d = static_cast<int>(mpz_fdiv_ui(k.get_mpz_t(), 32));
      if (d >= 16) d -= 32;
      k -= d;
    }
    out.push_back(static_cast<std::int8_t>(d));
    k >>= 1;
  }
  return out;
}

// P, 3P, ..., 15P in affine form, sharing one inversion.
std::array<G1Point, 8> odd_multiples(const G1Point& p) {
  using J = Jacobian<Fp>;
  std::array<J, 8> jac;
  jac[0] = J::from_affine(p);
  const J twice = jac[0].dbl();
  for (int i = 1; i < 8; ++i) jac[i] = jac[i - 1].add(twice);
  std::array<G1Point, 8> out;
  std::array<Fp, 8> prefix;
  Fp run = Fp::one();
  for (int i = 0; i < 8; ++i) {
    prefix[i] = run;
    if (!jac[i].is_infinity()) run = run * jac[i].Z;
  }
  Fp inv = run.inverse();
  for (int i = 8; i-- > 0;) {
    if (jac[i].is_infinity()) {
      out[i] = G1Point::at_infinity();
      continue;
    }
    const Fp zi = inv * prefix[i];
    inv = inv * jac[i].Z;
    const Fp zi2 = zi.square();
    out[i] = G1Point{jac[i].X * zi2, jac[i].Y * zi2 * zi, false};
  }
  return out;
}

}  // namespace

const BigInt& glv_lambda() { return glv().lambda; }

G1Point g1_endomorphism(const G1Point& p) {
  if (p.infinity) return p;
  return G1Point{p.x * glv().beta, p.y, false};
}

std::pair<BigInt, BigInt> glv_split(const BigInt& scalar) {
  const auto& c = glv();
  const BigInt& r = curve_order();
  const BigInt k = mod_reduce(scalar, r);
  const BigInt c1 = round_div(-c.b2 * k, r);
  const BigInt c2 = round_div(c.b1 * k, r);
  return {k - c1 * c.a1 - c2 * c.a2, -c1 * c.b1 - c2 * c.b2};
}

G1Point g1_mul(const G1Point& p, const BigInt& scalar) {
  if (p.infinity) return p;
  auto [k1, k2] = glv_split(scalar);
  G1Point p1 = p, p2 = g1_endomorphism(p);
  if (sgn(k1) < 0) {
    k1 = -k1;
    p1 = p1.negate();
  }
  if (sgn(k2) < 0) {
    k2 = -k2;
    p2 = p2.negate();
  }
  const auto n1 = wnaf5(k1), n2 = wnaf5(k2);
  const auto t1 = odd_multiples(p1), t2 = odd_multiples(p2);
  auto step = [](Jacobian<Fp>& acc, int d, const std::array<G1Point, 8>& t) {
    if (d > 0) acc = acc.add_mixed(t[d / 2]);
    if (d < 0) acc = acc.add_mixed(t[-d / 2].negate());
  };
  Jacobian<Fp> acc = Jacobian<Fp>::at_infinity();
  for (std::size_t i = std::max(n1.size(), n2.size()); i-- > 0;) {
    acc = acc.dbl();
    if (i < n1.size()) step(acc, n1[i], t1);
    if (i < n2.size()) step(acc, n2[i], t2);
  }
  return acc.to_affine();
}

G1Point g1_mul_reference(const G1Point& p, const BigInt& scalar) {
  auto limbs = scalar_limbs(scalar);
  return scalar_mul(p, std::span<const u64>(limbs)).to_affine();
}

G2Point twist_frobenius(const G2Point& q) {
  if (q.infinity) return q;
  const auto& gamma = constants().frob_gamma;
  return G2Point{q.x.conj() * gamma[2], q.y.conj() * gamma[3], false};
}

// ---- pairing -----------------------------------------------------------------

namespace {

// Line through T with slope lambda (twist coordinates), evaluated at the
// untwisted image of P: yP - lambda xP w + (lambda xT - yT) w^3.
Fp12 line_value(const Fp2& lambda, const G2Point& t, const G1Point& p) {
  Fp12 l{};
  l.c0.c0 = Fp2{p.y, Fp::zero()};
  l.c1.c0 = -(lambda * p.x);
  l.c1.c1 = lambda * t.x - t.y;
  return l;
}

Fp2 tangent_slope(const G2Point& t) {
  Fp2 x2 = t.x.square();
  return (x2.dbl() + x2) * t.y.dbl().inverse();
}

Fp2 chord_slope(const G2Point& t, const G2Point& q) {
  return (q.y - t.y) * (q.x - t.x).inverse();
}

G2Point step(const Fp2& lambda, const G2Point& t, const G2Point& q) {
  Fp2 x3 = lambda.square() - t.x - q.x;
  return G2Point{x3, lambda * (t.x - x3) - t.y, false};
}

}  // namespace

Fp12 miller_loop(const G1Point& p, const G2Point& q) {
  if (p.infinity || q.infinity) return Fp12::one();
  const auto& k = constants();
  Fp12 f = Fp12::one();
  G2Point t = q;
  for (int bit = k.ate_loop_bits - 2; bit >= 0; --bit) {
    Fp2 lambda = tangent_slope(t);
    f = f.square() * line_value(lambda, t, p);
    t = step(lambda, t, t);
    if ((k.ate_loop >> bit) & 1) {
      lambda = chord_slope(t, q);
      f *= line_value(lambda, t, p);
      t = step(lambda, t, q);
    }
  }
  G2Point q1 = twist_frobenius(q);
  G2Point q2 = twist_frobenius(q1).negate();
  Fp2 lambda = chord_slope(t, q1);
  f *= line_value(lambda, t, p);
  t = step(lambda, t, q1);
  f *= line_value(chord_slope(t, q2), t, p);
  return f;
}

Fp12 final_exponentiation_naive(const Fp12& f) {
  Fp12 f1 = f.conj() * f.inverse();
  Fp12 f2 = f1.frobenius().frobenius() * f1;
  return f2.pow(constants().hard_exp);
}

Fp12 final_exponentiation(const Fp12& f) {
  Fp12 f1 = f.conj() * f.inverse();           // f^(p^6 - 1)
  Fp12 m = f1.frobenius().frobenius() * f1;   // ^(p^2 + 1)
  // Hard part (p^4 - p^2 + 1) / r as a chain in u (Devegili, Scott, Dahab).
  // m is now unitary, so conj() inverts.
  static const BigInt u("4965661367192848881");
  Fp12 fu = m.pow(u);
  Fp12 fu2 = fu.pow(u);
  Fp12 fu3 = fu2.pow(u);
  Fp12 fp = m.frobenius();
  Fp12 fp2 = fp.frobenius();
  Fp12 y0 = fp * fp2 * fp2.frobenius();
  Fp12 y1 = m.conj();
  Fp12 y2 = fu2.frobenius().frobenius();
  Fp12 y3 = fu.frobenius().conj();
  Fp12 y4 = (fu * fu2.frobenius()).conj();
  Fp12 y5 = fu2.conj();
  Fp12 y6 = (fu3 * fu3.frobenius()).conj();
  Fp12 t0 = y6.square() * y4 * y5;
  Fp12 t1 = y3 * y5 * t0;
  t0 = t0 * y2;
  t1 = (t1.square() * t0).square();
  t0 = t1 * y1;
  t1 = t1 * y0;
  return t0.square() * t1;
}

Fp12 ate_pairing(const G1Point& p, const G2Point& q) {
  return final_exponentiation(miller_loop(p, q));
}

}  // namespace privagg::bn254

namespace privagg {

using namespace bn254;

namespace {

void require_width(std::span<const std::uint8_t> bytes, std::size_t width, const char* what) {
  if (bytes.size() != width) throw GroupError(std::string(what) + ": wrong encoding width");
}

Fp read_fp(std::span<const std::uint8_t> bytes, const char* what) {
  auto v = Fp::from_bytes(bytes.first<32>());
  if (!v) throw GroupError(std::string(what) + ": non-canonical field element");
  return *v;
}

}  // namespace

Bn254G1::Element Bn254G1::exp(const Element& base, const BigInt& scalar) const {
  count::exponentiation();
  return bn254::g1_mul(base, scalar);
}

Bytes Bn254G1::encode(const Element& a) const {
  Bytes out(33, 0);
  if (a.infinity) return out;
  out[0] = a.y.is_odd() ? 0x03 : 0x02;
  a.x.to_bytes(std::span<std::uint8_t, 32>(out.data() + 1, 32));
  return out;
}

Bn254G1::Element Bn254G1::decode(std::span<const std::uint8_t> bytes) const {
  require_width(bytes, 33, "G1 decode");
  if (bytes[0] == 0) {
    if (std::any_of(bytes.begin(), bytes.end(), [](auto b) { return b != 0; })) {
      throw GroupError("G1 decode: malformed infinity encoding");
    }
    return identity();
  }
  if (bytes[0] != 0x02 && bytes[0] != 0x03) throw GroupError("G1 decode: bad tag");
  Fp x = read_fp(bytes.subspan(1, 32), "G1 decode");
  auto y = (x.square() * x + g1_b()).sqrt();
  if (!y) throw GroupError("G1 decode: x is not on the curve");
  if (y->is_odd() != (bytes[0] == 0x03)) *y = -*y;
  return Element{x, *y, false};
}

Bn254G2::Element Bn254G2::exp(const Element& base, const BigInt& scalar) const {
  count::exponentiation();
  auto limbs = scalar_limbs(scalar);
  return scalar_mul(base, std::span<const u64>(limbs)).to_affine();
}

bool Bn254G2::is_element(const Element& a) const {
  if (a.infinity) return true;
  if (!on_curve(a, g2_b())) return false;
  auto r = limbs_of(curve_order());
  return scalar_mul(a, std::span<const u64>(r)).is_infinity();
}

Bytes Bn254G2::encode(const Element& a) const {
  Bytes out(65, 0);
  if (a.infinity) return out;
  out[0] = a.y.sign() ? 0x03 : 0x02;
  a.x.c0.to_bytes(std::span<std::uint8_t, 32>(out.data() + 1, 32));
  a.x.c1.to_bytes(std::span<std::uint8_t, 32>(out.data() + 33, 32));
  return out;
}

Bn254G2::Element Bn254G2::decode(std::span<const std::uint8_t> bytes) const {
  require_width(bytes, 65, "G2 decode");
  if (bytes[0] == 0) {
    if (std::any_of(bytes.begin(), bytes.end(), [](auto b) { return b != 0; })) {
      throw GroupError("G2 decode: malformed infinity encoding");
    }
    return identity();
  }
  if (bytes[0] != 0x02 && bytes[0] != 0x03) throw GroupError("G2 decode: bad tag");
  Fp2 x{read_fp(bytes.subspan(1, 32), "G2 decode"), read_fp(bytes.subspan(33, 32), "G2 decode")};
  auto y = (x.square() * x + g2_b()).sqrt();
  if (!y) throw GroupError("G2 decode: x is not on the twist");
  if (y->sign() != (bytes[0] == 0x03)) *y = -*y;
  Element e{x, *y, false};
  if (!is_element(e)) throw GroupError("G2 decode: point outside the order-r subgroup");
  return e;
}

Bn254GT::Element Bn254GT::exp(const Element& base, const BigInt& scalar) const {
  count::exponentiation();
  return base.pow(mod_reduce(scalar, order()));
}

bool Bn254GT::is_element(const Element& a) const {
  return !a.is_zero() && a.pow(order()) == Element::one();
}

Bytes Bn254GT::encode(const Element& a) const {
  Bytes out(384, 0);
  auto k = a.coefficients();
  std::size_t off = 0;
  for (const auto& c : k) {
    c.c0.to_bytes(std::span<std::uint8_t, 32>(out.data() + off, 32));
    c.c1.to_bytes(std::span<std::uint8_t, 32>(out.data() + off + 32, 32));
    off += 64;
  }
  return out;
}

Bn254GT::Element Bn254GT::decode(std::span<const std::uint8_t> bytes) const {
  require_width(bytes, 384, "GT decode");
  std::array<Fp2, 6> k;
  for (std::size_t i = 0; i < 6; ++i) {
    k[i] = Fp2{read_fp(bytes.subspan(64 * i, 32), "GT decode"),
               read_fp(bytes.subspan(64 * i + 32, 32), "GT decode")};
  }
  Element e = Element::from_coefficients(k);
  if (!is_element(e)) throw GroupError("GT decode: element outside the order-r subgroup");
  return e;
}

namespace {
const Fp12& cached_gt_generator() {
  static const Fp12 g = ate_pairing(g1_generator(), g2_generator());
  return g;
}
}  // namespace

Bn254Pairing::Bn254Pairing() : gt_(cached_gt_generator()) {}

Bn254G2::Element Bn254Pairing::hash_to_g2(std::uint64_t round) const {
  const auto& k = constants();
  auto cofactor = limbs_of(k.g2_cofactor);
  for (std::uint32_t counter = 0;; ++counter) {
    HashInput in("privagg/H2/bn254");
    in.u64(round).u32(counter);
    Bytes h = shake256(in.data(), 129);
    Fp2 x{Fp::from_bigint(from_bytes_be(std::span(h).subspan(0, 64))),
          Fp::from_bigint(from_bytes_be(std::span(h).subspan(64, 64)))};
    auto y = (x.square() * x + g2_b()).sqrt();
    if (!y) continue;
    if (y->sign() != static_cast<bool>(h[128] & 1)) *y = -*y;
    auto cleared = scalar_mul(G2Point{x, *y, false}, std::span<const u64>(cofactor)).to_affine();
    if (!cleared.infinity) return cleared;
  }
}

}  // namespace privagg
