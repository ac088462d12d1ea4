#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "golden.hpp"
#include "grpkc/oracle.hpp"

using namespace grpkc;

TEST(Oracle, GrdlpWorkedInstance) {
  golden::BinaryCyclic b;
  const auto res = brute_grdlp(b.u(), b.A1(), 1023);
  ASSERT_TRUE(res.found());
  EXPECT_EQ(*res.exponent, 400U);
  EXPECT_EQ(res.operations, 400U);
  EXPECT_FALSE(brute_grdlp(b.u(), b.A1(), 1).found());
  EXPECT_EQ(brute_grdlp(b.u(), GroupRingElement::one(b.G, b.R), 10).exponent, 0U);
}

TEST(Oracle, GrdlpReturnsLeastExponent) {
  golden::BinaryCyclic b;
  // 400 + 1023 also works but the least exponent is reported
  EXPECT_EQ(brute_grdlp(b.u(), gr_pow(b.u(), 1423), 5000).exponent, 400U);
  EXPECT_THROW(brute_grdlp(GroupRingElement(b.G, b.R), b.u(), 5), NotAUnit);
}

TEST(Oracle, EcdlpWorkedInstance) {
  golden::Army a;
  const EllipticCurve E(a.curve);
  const auto bsgs = bsgs_ecdlp(E, a.P, a.Q);
  ASSERT_TRUE(bsgs.found());
  EXPECT_EQ(*bsgs.exponent, a.n1);
  const auto brute = brute_ecdlp(E, a.P, a.Q, 100);
  EXPECT_EQ(brute.exponent, a.n1);
  EXPECT_EQ(brute.operations, a.n1);
  EXPECT_EQ(bsgs_ecdlp(E, a.P, CurvePoint::at_infinity()).exponent, 0U);
}

TEST(Oracle, EcdlpNotInSubgroup) {
  // On E(F_263) the subgroup generated by a small-order point misses most points.
  const EllipticCurve E(CurveParams::make(263, 2, 3));
  const auto pts = E.points();
  CurvePoint small = CurvePoint::at_infinity();
  for (const auto& p : pts)
    if (!p.infinity && E.point_order(p) < static_cast<std::uint64_t>(pts.size())) {
      small = p;
      break;
    }
  if (small.infinity) GTEST_SKIP() << "cyclic group of prime order";
  const auto ord = E.point_order(small);
  for (const auto& q : pts) {
    const auto r = bsgs_ecdlp(E, small, q);
    const auto b = brute_ecdlp(E, small, q, ord);
    EXPECT_EQ(r.exponent, b.exponent);
  }
}

TEST(Oracle, PlantedExponents) {
  std::mt19937_64 rng(12);
  const EllipticCurve E(CurveParams::make(263, 2, 3));
  const auto P = CurvePoint::affine(200, 39);
  const auto ordP = E.point_order(P);
  const auto N = E.points().size();
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = rng() % ordP;
    const auto Q = E.mul(x, P);
    const auto bsgs = bsgs_ecdlp(E, P, Q, N);
    const auto brute = brute_ecdlp(E, P, Q, ordP);
    ASSERT_EQ(bsgs.exponent, x);
    ASSERT_EQ(brute.exponent, x);
    EXPECT_LE(static_cast<double>(bsgs.operations), 3 * std::sqrt(static_cast<double>(N)));
    EXPECT_GE(brute.operations, x);
  }
}

TEST(Oracle, PlantedGroupRingExponents) {
  std::mt19937_64 rng(13);
  golden::BinaryCyclic b;
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t x = rng() % 1023;
    const auto res = brute_grdlp(b.u(), gr_pow(b.u(), x), 1023);
    ASSERT_EQ(res.exponent, x);
    EXPECT_GE(res.operations, x);
  }
}
