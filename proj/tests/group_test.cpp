#include "privagg/group/bn254/bn254.hpp"
#include "privagg/group/mock_pairing.hpp"
#include "privagg/group/modp_subgroup.hpp"

#include <gtest/gtest.h>

#include <random>

namespace privagg {
namespace {

BigInt random_scalar(std::mt19937_64& rng, const BigInt& order) {
  BigInt v = 0;
  for (int k = 0; k < 5; ++k) {
    v <<= 64;
    v += from_u64(rng());
  }
  return mod_reduce(v, order);
}

// Square-and-multiply over plain integers; independent of the backend code.
std::uint64_t reference_powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (std::uint64_t k = 0; k < e; ++k) r = r * b % m;
  return r;
}

TEST(ModpSubgroup, SmallParametersValidate) {
  EXPECT_EQ(reference_powmod(3, 6, 607), 122u);
  EXPECT_EQ(reference_powmod(122, 101, 607), 1u);
  ModpSubgroup g(insecure, 607, 101, 122);
  EXPECT_EQ(g.generator().value, 122u);
  EXPECT_TRUE(g.is_element(g.generator()));
}

TEST(ModpSubgroup, RejectsBadParameters) {
  EXPECT_THROW(ModpSubgroup(insecure, 607, 100, 122), GroupError);  // composite p
  EXPECT_THROW(ModpSubgroup(insecure, 607, 103, 122), GroupError);  // p does not divide q-1
  EXPECT_THROW(ModpSubgroup(insecure, 607, 101, 3), GroupError);    // 3 has order 606
  EXPECT_THROW(ModpSubgroup(insecure, 609, 101, 122), GroupError);  // q composite
}

TEST(ModpSubgroup, ExpExamples) {
  ModpSubgroup g(insecure, 607, 101, 122);
  EXPECT_EQ(g.exp(g.generator(), 0).value, 1u);
  EXPECT_EQ(g.exp(g.generator(), 101).value, 1u);
  EXPECT_EQ(g.exp(g.generator(), 2).value, reference_powmod(122, 2, 607));
  EXPECT_EQ(g.exp(g.generator(), 2).value, 122u * 122u % 607u);
  // Scalars reduce modulo the order.
  EXPECT_EQ(g.exp(g.generator(), 103).value, g.exp(g.generator(), 2).value);
}

TEST(MockPairing, Examples) {
  MockPairing e(insecure, 101);
  using E = MockAdditiveGroup::Element;
  EXPECT_EQ(e.pair(E{0}, E{7}).value, 0u);
  EXPECT_EQ(e.pair(E{3}, E{5}).value, 15u);
  EXPECT_EQ(e.pair(E{6}, E{20}).value, (8u * 15u) % 101u);
  EXPECT_EQ(e.hash_to_g2(1), e.hash_to_g2(1));
  EXPECT_NE(e.hash_to_g2(1), e.hash_to_g2(2));
  EXPECT_NE(e.gt_generator(), e.gt().identity());
}

TEST(OpCounter, ScriptedExponentiations) {
  auto g = ModpSubgroup::default_test();
  OpCounter counter;
  {
    CountingScope scope(counter);
    auto x = g.generator();
    for (int k = 0; k < 17; ++k) x = g.exp(x, 3);
    x = g.mul(x, x);
  }
  EXPECT_EQ(counter.exponentiations, 17u);
  EXPECT_EQ(counter.multiplications, 1u);
  auto before = counter;
  g.exp(g.generator(), 5);  // outside the scope
  EXPECT_EQ(counter, before);
  counter.reset();
  EXPECT_EQ(counter, OpCounter{});
}

template <class G>
void check_group_laws(const G& g, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EXPECT_TRUE(g.is_element(g.generator()));
  EXPECT_FALSE(g.generator() == g.identity());
  EXPECT_EQ(g.exp(g.generator(), g.order()), g.identity());
  for (int t = 0; t < trials; ++t) {
    BigInt a = random_scalar(rng, g.order());
    BigInt b = random_scalar(rng, g.order());
    auto ga = g.exp(g.generator(), a);
    auto gb = g.exp(g.generator(), b);
    EXPECT_EQ(g.exp(g.generator(), mod_reduce(a + b, g.order())), g.mul(ga, gb));
    EXPECT_EQ(g.mul(ga, g.inverse(ga)), g.identity());
    auto enc = g.encode(ga);
    ASSERT_EQ(enc.size(), g.encoded_size());
    EXPECT_EQ(g.decode(enc), ga);
  }
}

TEST(GroupLaws, TestSubgroup) { check_group_laws(ModpSubgroup::default_test(), 1000, 1); }
TEST(GroupLaws, Mock) { check_group_laws(MockPairing::default_test().g1(), 1000, 2); }
TEST(GroupLaws, Bn254G1) { check_group_laws(Bn254G1{}, 1000, 3); }
TEST(GroupLaws, Bn254G2) { check_group_laws(Bn254G2{}, 20, 4); }
TEST(GroupLaws, Bn254GT) { check_group_laws(Bn254Pairing{}.gt(), 20, 5); }

TEST(Bn254, FieldInverseAndSqrt) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto a = bn254::Fp::from_bigint(random_scalar(rng, bn254::Fp::modulus()));
    if (a.is_zero()) continue;
    EXPECT_EQ(a * a.inverse(), bn254::Fp::one());
    auto sq = a.square().sqrt();
    ASSERT_TRUE(sq.has_value());
    EXPECT_EQ(sq->square(), a.square());
    bn254::Fp2 b{a, bn254::Fp::from_u64(t + 1)};
    EXPECT_EQ(b * b.inverse(), bn254::Fp2::one());
    auto sq2 = b.square().sqrt();
    ASSERT_TRUE(sq2.has_value());
    EXPECT_EQ(sq2->square(), b.square());
  }
}

TEST(Bn254, GeneratorsHaveOrderR) {
  Bn254G2 g2;
  EXPECT_TRUE(bn254::on_curve(g2.generator(), bn254::g2_b()));
  EXPECT_TRUE(g2.is_element(g2.generator()));
}

TEST(Bn254, PairingNonDegenerateAndInGT) {
  Bn254Pairing e;
  auto g = e.gt_generator();
  EXPECT_FALSE(g == bn254::Fp12::one());
  EXPECT_TRUE(e.gt().is_element(g));
}

TEST(Bn254, PairingBilinear) {
  Bn254Pairing e;
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    BigInt a = random_scalar(rng, e.g1().order());
    BigInt b = random_scalar(rng, e.g1().order());
    auto lhs = e.pair(e.g1().exp(e.p1(), a), e.g2().exp(e.q2(), b));
    auto rhs = e.gt().exp(e.gt_generator(), mod_reduce(a * b, e.g1().order()));
    EXPECT_EQ(lhs, rhs);
  }
  EXPECT_EQ(e.pair(e.g1().identity(), e.q2()), e.gt().identity());
}

TEST(Bn254, HashToG2) {
  Bn254Pairing e;
  auto h5 = e.hash_to_g2(5);
  EXPECT_TRUE(e.g2().is_element(h5));
  EXPECT_FALSE(h5.infinity);
  EXPECT_EQ(e.g2().exp(h5, e.g2().order()), e.g2().identity());
  EXPECT_EQ(e.hash_to_g2(5), h5);
  EXPECT_FALSE(e.hash_to_g2(6) == h5);
}

TEST(Bn254, DecodeRejectsGarbage) {
  Bn254G1 g1;
  Bytes bad(33, 0xff);
  EXPECT_THROW(g1.decode(bad), GroupError);
  Bytes wrong(32, 0);
  EXPECT_THROW(g1.decode(wrong), GroupError);
  Bn254GT gt(bn254::Fp12::one());
  Bytes zero(384, 0);
  EXPECT_THROW(gt.decode(zero), GroupError);
}

}  // namespace
}  // namespace privagg

namespace privagg {
namespace {
TEST(Bn254, FinalExponentiationChainMatchesNaiveExponent) {
  Bn254Pairing e;
  auto f = bn254::miller_loop(e.g1().exp(e.p1(), 12345), e.hash_to_g2(3));
  EXPECT_EQ(bn254::final_exponentiation(f), bn254::final_exponentiation_naive(f));
}
}  // namespace
}  // namespace privagg

TEST(Bn254, EndomorphismIsMultiplicationByLambda) {
  using namespace privagg::bn254;
  using namespace privagg;
  const auto g = g1_generator();
  EXPECT_EQ(g1_endomorphism(g), g1_mul_reference(g, glv_lambda()));
  const auto& r = curve_order();
  EXPECT_EQ(mod_reduce(glv_lambda() * glv_lambda() + glv_lambda() + 1, r), 0);
}

TEST(Bn254, SplitScalarMultiplicationMatchesPlainWindow) {
  using namespace privagg::bn254;
  using namespace privagg;
  const auto& r = curve_order();
  std::mt19937_64 rng(77);
  auto g = g1_generator();
  std::vector<BigInt> scalars{0, 1, 2, 15, 16, 17, r - 1, r, r + 5, glv_lambda(), BigInt(-3)};
  for (int i = 0; i < 200; ++i) {
    BigInt k = 0;
    for (int w = 0; w < 4; ++w) k = (k << 64) + from_u64(rng());
    scalars.push_back(k);
  }
  for (const auto& k : scalars) {
    auto [k1, k2] = glv_split(k);
    EXPECT_LT(mpz_sizeinbase(k1.get_mpz_t(), 2), 129u);
    EXPECT_LT(mpz_sizeinbase(k2.get_mpz_t(), 2), 129u);
    EXPECT_EQ(mod_reduce(k1 + k2 * glv_lambda() - k, r), 0);
    ASSERT_EQ(g1_mul(g, k), g1_mul_reference(g, k)) << k.get_str();
    g = g1_mul_reference(g, 3);  // vary the base as well
  }
  EXPECT_TRUE(g1_mul(G1Point::at_infinity(), 5).infinity);
}
