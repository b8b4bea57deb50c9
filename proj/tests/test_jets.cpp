#include <gtest/gtest.h>

#include "hypergeo/jets.hpp"

using namespace hypergeo;

namespace {

const Precision P = Precision::from_digits(80);

BigComplex c(long v) { return BigComplex(v, P); }

LaurentJet jet(int v, std::vector<BigComplex> a) { return LaurentJet(v, std::move(a)); }

void expect_close(const BigComplex& a, const BigComplex& b, const char* tol = "1e-75") {
  EXPECT_LE(abs(a - b), BigReal::from_string(tol, P) * max(abs(b), BigReal(1, P))) << a << " vs " << b;
}

}  // namespace

TEST(JetMul, Examples) {
  const LaurentJet r = jet(0, {c(1), c(1), c(0)}) * jet(0, {c(1), c(-1), c(0)});
  EXPECT_EQ(r.valuation(), 0);
  EXPECT_EQ(r.order(), 3u);
  expect_close(r.coefficient(0), c(1));
  expect_close(r.coefficient(1), c(0));
  expect_close(r.coefficient(2), c(-1));

  const LaurentJet s = jet(-1, {c(1), c(0)}) * jet(1, {c(1)});
  EXPECT_EQ(s.valuation(), 0);
  EXPECT_EQ(s.order(), 1u);
  expect_close(s.coefficient(0), c(1));

  const BigComplex g(BigReal::euler_gamma(P));
  const LaurentJet t = jet(-1, {c(1), -g}) * jet(1, {c(1), c(0)});
  expect_close(t.coefficient(0), c(1));
  expect_close(t.coefficient(1), -g);
}

TEST(JetMul, CommutativeAndAssociative) {
  const LaurentJet a = jet(-1, {c(2), c(3), c(-1), c(5)});
  const LaurentJet b = jet(0, {c(1), c(-4), c(7), c(2)});
  const LaurentJet d = jet(1, {c(-3), c(1), c(1), c(1)});
  const LaurentJet ab = a * b, ba = b * a;
  const LaurentJet l = (a * b) * d, r = a * (b * d);
  for (int k = ab.valuation(); k < ab.truncation(); ++k) expect_close(ab.coefficient(k), ba.coefficient(k));
  for (int k = l.valuation(); k < l.truncation(); ++k) expect_close(l.coefficient(k), r.coefficient(k));
}

TEST(JetExp, Examples) {
  const LaurentJet e = jet_exp(jet(0, {c(0), c(2), c(0)}));
  expect_close(e.coefficient(0), c(1));
  expect_close(e.coefficient(1), c(2));
  expect_close(e.coefficient(2), c(2));
  expect_close(jet_exp(jet(0, {c(0)})).coefficient(0), c(1));
  const BigComplex L(BigReal::from_string("0.7", P), BigReal::from_string("-2.1", P));
  const LaurentJet f = jet_exp(jet(0, {c(0), -L}));
  expect_close(f.coefficient(1), -L);
  EXPECT_THROW(jet_exp(jet(-1, {c(1), c(0), c(0)})), domain_error);
}

TEST(JetInv, RoundTrip) {
  const LaurentJet a = jet(-2, {c(3), c(1), c(-2), c(4)});
  const LaurentJet one = a * jet_inv(a);
  EXPECT_EQ(one.valuation(), 0);
  expect_close(one.coefficient(0), c(1));
  for (int k = 1; k < one.truncation(); ++k) expect_close(one.coefficient(k), c(0));
  EXPECT_THROW(jet_inv(jet(0, {c(0), c(1)})), domain_error);
}

TEST(GammaJet, RegularPoint) {
  const GammaContext ctx(P);
  const LaurentJet j = gamma_jet(c(1), Rational(1), 2, ctx);
  EXPECT_EQ(j.valuation(), 0);
  expect_close(j.coefficient(0), c(1));
  expect_close(j.coefficient(1), BigComplex(-BigReal::euler_gamma(P)));
}

TEST(GammaJet, PoleAtZeroMatchesClosedForm) {
  const GammaContext ctx(P);
  const BigReal g = BigReal::euler_gamma(P), pi = BigReal::pi(P);
  const LaurentJet j = gamma_jet(c(0), Rational(1), 3, ctx);
  EXPECT_EQ(j.valuation(), -1);
  expect_close(j.coefficient(-1), c(1));
  expect_close(j.coefficient(0), BigComplex(-g));
  expect_close(j.coefficient(1), BigComplex(g * g / 2 + pi * pi / 12));

  const LaurentJet m = gamma_jet(c(0), Rational(-1), 2, ctx);
  expect_close(m.coefficient(-1), c(-1));
  expect_close(m.coefficient(0), BigComplex(-g));
  EXPECT_THROW(gamma_jet(c(0), Rational(0), 2, ctx), domain_error);
}

TEST(GammaJet, MatchesDirectGammaAtTinyEpsilon) {
  // Gamma(z0 + a eps) evaluated directly at eps = 1e-30 with 300 digits
  const Precision hp = Precision::from_digits(300);
  const GammaContext hctx(hp);
  const GammaContext ctx(P);
  const BigReal eps = BigReal::from_string("1e-30", hp);
  struct Case {
    long z0;
    Rational a;
  };
  for (const Case& k : {Case{0, Rational(1)}, Case{-2, Rational(3, 2)}, Case{3, Rational(-2)}, Case{-1, Rational(-1)}}) {
    const std::size_t order = 3;
    const LaurentJet j = gamma_jet(c(k.z0), k.a, order, ctx);
    const BigComplex direct = gamma(BigComplex(BigReal(k.z0, hp) + BigReal(k.a, hp) * eps), hctx);
    const BigComplex series = j.evaluate(BigComplex(eps)).rounded(hp);
    // truncation error O(eps^{v + order})
    const BigReal bound = pow(eps, BigReal(j.truncation(), hp)) * 1000;
    EXPECT_LE(abs(direct - series), max(bound, abs(direct) * BigReal::from_string("1e-75", hp)))
        << "z0=" << k.z0;
  }
}

TEST(GammaJet, FunctionalEquation) {
  const GammaContext ctx(P);
  for (long z0 : {-3L, -1L, 0L, 2L}) {
    const Rational a(2, 3);
    const std::size_t n = 4;
    const LaurentJet lhs = gamma_jet(c(z0 + 1), a, n, ctx);
    const LaurentJet rhs = LaurentJet::linear(c(z0), BigComplex(a, P), n) * gamma_jet(c(z0), a, n, ctx);
    for (int k = std::max(lhs.valuation(), rhs.valuation()); k < std::min(lhs.truncation(), rhs.truncation()); ++k)
      expect_close(lhs.coefficient(k), rhs.coefficient(k), "1e-70");
  }
}

TEST(RGammaJet, ZeroDirectionIsConstant) {
  const GammaContext ctx(P);
  const LaurentJet r = rgamma_jet(c(-2), Rational(0), 3, ctx);
  EXPECT_TRUE(r.coefficient(0).is_zero());
  const LaurentJet s = rgamma_jet(c(-2), Rational(1), 3, ctx);
  EXPECT_EQ(s.valuation(), 1);
  expect_close(s.coefficient(1), c(2));  // 1/Gamma(-2 + eps) = 2 eps + ...
}

TEST(LaurentJet, CoefficientBeyondTruncationThrows) {
  const LaurentJet a = jet(-1, {c(1), c(2)});
  EXPECT_TRUE(a.coefficient(-5).is_zero());
  EXPECT_THROW(a.coefficient(1), domain_error);
  const LaurentJet n = jet(0, {c(0), c(0), c(3)}).normalized(BigReal::from_string("1e-70", P));
  EXPECT_EQ(n.valuation(), 2);
}
