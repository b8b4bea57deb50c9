#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "hypergeo/special.hpp"

using namespace hypergeo;

namespace {

const Precision P60 = Precision::from_digits(60);

BigReal rel(const BigComplex& a, const BigComplex& b) { return relative_error(a, b); }

BigReal tol(Precision p, long slack_bits = 8) { return pow2(-p.bits() + slack_bits, p); }

}  // namespace

TEST(LogGamma, ClosedForms) {
  const GammaContext ctx(P60);
  EXPECT_LE(rel(log_gamma(BigComplex(5, P60), ctx), BigComplex(log(BigReal(24, P60)))), tol(P60));
  const BigComplex half = log_gamma(BigComplex(Rational(1, 2), P60), ctx);
  EXPECT_LE(rel(half, BigComplex(log(BigReal::pi(P60)) / 2)), tol(P60));
}

TEST(LogGamma, ExpMatchesProductRecursion) {
  const GammaContext ctx(P60);
  // Gamma(10/3) = (7/3)(4/3)(1/3) Gamma(1/3)
  const BigComplex g13 = gamma(BigComplex(Rational(1, 3), P60), ctx);
  const BigComplex expect = g13 * BigReal(Rational(28, 27), P60);
  EXPECT_LE(rel(exp(log_gamma(BigComplex(Rational(10, 3), P60), ctx)), expect), tol(P60));
}

TEST(LogGamma, PrincipalBranchIsContinuousAcrossLargeImaginaryParts) {
  const GammaContext ctx(P60);
  // imaginary part of log Gamma grows like y log y; no 2 pi jumps along a vertical line
  BigComplex prev = log_gamma(BigComplex(BigReal(Rational(1, 2), P60), BigReal(1, P60)), ctx);
  for (long y = 2; y <= 60; ++y) {
    const BigComplex cur = log_gamma(BigComplex(BigReal(Rational(1, 2), P60), BigReal(y, P60)), ctx);
    EXPECT_LT(abs(cur.imag() - prev.imag()), BigReal(6, P60)) << "y = " << y;
    prev = cur;
  }
}

TEST(Gamma, PoleErrorsCarryTheInteger) {
  const GammaContext ctx(P60);
  try {
    gamma(BigComplex(-3, P60), ctx);
    FAIL();
  } catch (const pole_error& e) {
    EXPECT_EQ(e.pole(), 3);  // z = -n
  }
  EXPECT_THROW(log_gamma(BigComplex(0, P60), ctx), pole_error);
  EXPECT_THROW(polygamma(2, BigComplex(-1, P60), ctx), pole_error);
}

TEST(RGamma, ZerosAndOne) {
  const GammaContext ctx(P60);
  EXPECT_TRUE(rgamma(BigComplex(0, P60), ctx).is_zero());
  EXPECT_TRUE(rgamma(BigComplex(-3, P60), ctx).is_zero());
  EXPECT_LE(rel(rgamma(BigComplex(1, P60), ctx), BigComplex(1, P60)), tol(P60));
}

TEST(Polygamma, ClassicalValues) {
  const GammaContext ctx(P60);
  const BigReal g = BigReal::euler_gamma(P60);
  EXPECT_LE(abs(digamma(BigComplex(1, P60), ctx) + g), tol(P60));
  const BigComplex psi_half = digamma(BigComplex(Rational(1, 2), P60), ctx);
  EXPECT_LE(rel(psi_half, BigComplex(-g - 2 * log(BigReal(2, P60)))), tol(P60));
  const BigReal pi = BigReal::pi(P60);
  EXPECT_LE(rel(polygamma(1, BigComplex(1, P60), ctx), BigComplex(pi * pi / 6)), tol(P60));
}

class RandomGrid : public ::testing::TestWithParam<int> {};

TEST_P(RandomGrid, FunctionalEquations) {
  const Precision p = Precision::from_digits(GetParam());
  const GammaContext ctx(p);
  std::mt19937 rng(GetParam());
  std::uniform_real_distribution<double> re(-30, 30), im(-20, 20);
  const BigReal pi = BigReal::pi(p);
  for (int k = 0; k < 10; ++k) {
    const BigComplex z(BigReal::from_double(re(rng), p), BigReal::from_double(im(rng), p));
    const BigComplex g = gamma(z, ctx);
    EXPECT_LE(rel(gamma(z + 1, ctx), z * g), tol(p, 12)) << z;
    const BigComplex refl = g * gamma(BigComplex(1, p) - z, ctx) * sin(z * pi) / pi;
    EXPECT_LE(rel(refl, BigComplex(1, p)), tol(p, 16)) << z;
    EXPECT_LE(rel(rgamma(z, ctx) * exp(log_gamma(z, ctx)), BigComplex(1, p)), tol(p, 12)) << z;
    for (unsigned n = 0; n < 4; ++n) {
      // psi^(n)(z+1) = psi^(n)(z) + (-1)^n n! / z^(n+1)
      long fact = 1;
      for (unsigned j = 2; j <= n; ++j) fact *= j;
      const BigComplex step = BigComplex(n % 2 ? -fact : fact, p) / pow_int(z, n + 1);
      const BigComplex lhs = polygamma(n, z + 1, ctx);
      const BigComplex rhs = polygamma(n, z, ctx) + step;
      EXPECT_LE(abs(lhs - rhs), tol(p, 16) * max(abs(lhs), abs(step))) << "n=" << n << " z=" << z;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Precisions, RandomGrid, ::testing::Values(20, 60, 150));

TEST(Bernoulli, ExactValuesAndConcurrentGrowth) {
  BernoulliTable table;
  EXPECT_EQ(table.even(0), Rational(1));
  EXPECT_EQ(table.even(1), Rational(1, 6));
  EXPECT_EQ(table.even(2), Rational(-1, 30));
  EXPECT_EQ(table.even(6), Rational(691, -2730));
  EXPECT_EQ(table.even(10), Rational(-174611, 330));

  std::vector<Rational> seen(8, Rational(0));
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) threads.emplace_back([&, t] { seen[t] = table.even(40 + (t % 3)); });
  for (auto& th : threads) th.join();
  for (int t = 0; t < 8; ++t) EXPECT_EQ(seen[t], table.even(40 + (t % 3)));
}

TEST(GammaContext, ConcurrentEvaluationIsDeterministic) {
  const GammaContext ctx(P60);
  const BigComplex z(BigReal::from_string("2.25", P60), BigReal::from_string("-7.5", P60));
  const BigComplex ref = gamma(z, GammaContext(P60, std::make_shared<BernoulliTable>()));
  std::vector<BigComplex> out(6, BigComplex(P60));
  std::vector<std::thread> threads;
  for (int t = 0; t < 6; ++t) threads.emplace_back([&, t] { out[t] = gamma(z, ctx); });
  for (auto& th : threads) th.join();
  for (const auto& v : out) EXPECT_EQ(v, ref);
}
