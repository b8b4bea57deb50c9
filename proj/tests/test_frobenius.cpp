#include <gtest/gtest.h>

#include "hypergeo/connection.hpp"
#include "hypergeo/frobenius.hpp"
#include "hypergeo/oracle.hpp"

using namespace hypergeo;

namespace {

const Precision P60 = Precision::from_digits(60);

HyperParams hp(std::vector<Rational> a, std::vector<Rational> b) { return HyperParams(std::move(a), std::move(b)); }

BigComplex cz(const char* z, Precision p = P60) { return BigComplex(parse_complex(z), p); }

LogSeries unit_series(const Rational& alpha, std::size_t q, std::size_t N, std::size_t i, std::size_t j) {
  std::vector<std::vector<BigComplex>> c(N + 1, std::vector<BigComplex>(q, BigComplex(P60)));
  c[i][j] = BigComplex(1, P60);
  return {alpha, q, std::move(c)};
}

}  // namespace

TEST(BuildOdePolys, Examples) {
  const ODEPolys g = build_ode_polys(hp({Rational(1, 2), Rational(1, 4)}, {Rational(3, 4)}));
  EXPECT_EQ(g.P, RationalPoly({Rational(0), Rational(-1, 4), Rational(1)}));
  EXPECT_EQ(g.Q, RationalPoly({Rational(1, 8), Rational(3, 4), Rational(1)}));

  const ODEPolys one = build_ode_polys(hp({Rational(5, 3)}, {}));
  EXPECT_EQ(one.P, RationalPoly({Rational(0), Rational(1)}));
  EXPECT_EQ(one.Q, RationalPoly({Rational(5, 3), Rational(1)}));

  const ODEPolys t = build_ode_polys(hp({Rational(7, 2), Rational(7, 2), Rational(7, 2)}, {Rational(31, 5), Rational(36, 7)}));
  const RationalPoly lin = RationalPoly::linear(Rational(7, 2));
  EXPECT_EQ(t.Q, lin * lin * lin);
  EXPECT_EQ(t.P.degree(), 3u);
  EXPECT_TRUE(t.P(Rational(0)).is_zero());
  // indicial condition: -7/2 is a triple root
  for (std::size_t m = 0; m < 3; ++m) EXPECT_TRUE(t.Q.taylor_coefficient(m, Rational(-7, 2)).is_zero());
  EXPECT_FALSE(t.Q.taylor_coefficient(3, Rational(-7, 2)).is_zero());
}

TEST(ExtendCoefficients, SingletonMatchesPochhammerRatiosExactly) {
  struct Case {
    HyperParams params;
    std::size_t index;
  };
  const std::vector<Case> cases{{hp({Rational(1, 2), Rational(1, 4)}, {Rational(3, 4)}), 0},
                                {hp({Rational(1, 2), Rational(1, 4)}, {Rational(3, 4)}), 1},
                                {hp({Rational(1, 3), Rational(2, 7), Rational(-5, 4)}, {Rational(9, 2), Rational(1, 6)}), 2}};
  for (const auto& c : cases) {
    const ODEPolys ode = build_ode_polys(c.params);
    const Rational a = c.params.upper()[c.index];
    const auto exact = extend_coefficients_exact(ode, a, {Rational(1)}, 20);
    for (std::size_t i = 0; i <= 20; ++i) {
      // (a)_i prod_j (a - beta_j + 1)_i / (prod_{k != index} (a - alpha_k + 1)_i i!)
      Rational expect = pochhammer(a, i);
      for (const auto& b : c.params.lower()) expect *= pochhammer(a - b + Rational(1), i);
      for (std::size_t k = 0; k < c.params.p(); ++k)
        if (k != c.index) expect /= pochhammer(a - c.params.upper()[k] + Rational(1), i);
      expect /= pochhammer(Rational(1), i);
      EXPECT_EQ(exact[i][0], expect) << c.params.to_string() << " i=" << i;
    }
  }
}

TEST(ExtendCoefficients, FirstRatioExample) {
  const ODEPolys ode = build_ode_polys(hp({Rational(1, 2), Rational(1, 4)}, {Rational(3, 4)}));
  const auto exact = extend_coefficients_exact(ode, Rational(1, 2), {Rational(1)}, 3);
  EXPECT_EQ(exact[1][0], Rational(3, 10));
  const LogSeries s = extend_coefficients(ode, Rational(1, 2), 1, {BigComplex(1, P60)}, 3, P60);
  EXPECT_LE(abs(s.coeff(1, 0) - BigComplex(Rational(3, 10), P60)), BigReal::from_string("1e-60", P60));
}

TEST(ExtendCoefficients, FloatingMatchesExact) {
  const HyperParams p = hp({Rational(7, 2), Rational(7, 2), Rational(7, 2)}, {Rational(31, 5), Rational(36, 7)});
  const ODEPolys ode = build_ode_polys(p);
  const std::vector<Rational> c0{Rational(3), Rational(-1, 7), Rational(5, 2)};
  const auto exact = extend_coefficients_exact(ode, Rational(7, 2), c0, 25);
  std::vector<BigComplex> f;
  for (const auto& r : c0) f.emplace_back(r, P60);
  const LogSeries s = extend_coefficients(ode, Rational(7, 2), 3, f, 25, P60);
  for (std::size_t i = 0; i <= 25; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const BigComplex e(exact[i][j], s.precision());
      EXPECT_LE(abs(s.coeff(i, j) - e), BigReal::from_string("1e-58", P60) * max(abs(e), BigReal(1, P60)));
    }
}

TEST(ExtendCoefficients, OneF0Expansion) {
  // (1-z)^{-a} = (-z)^{-a} (1 - 1/z)^{-a}: c^i = (a)_i / i!
  const Rational a(5, 3);
  const ODEPolys ode = build_ode_polys(hp({a}, {}));
  const auto exact = extend_coefficients_exact(ode, a, {Rational(1)}, 10);
  for (std::size_t i = 0; i <= 10; ++i) EXPECT_EQ(exact[i][0], pochhammer(a, i) / pochhammer(Rational(1), i));
}

TEST(ExtendCoefficients, Errors) {
  const ODEPolys ode = build_ode_polys(hp({Rational(1, 3), Rational(4, 3)}, {Rational(3, 4)}));
  // -1/3 - 1 is a root of Q: the 4/3 parameter resonates
  EXPECT_THROW(extend_coefficients(ode, Rational(1, 3), 1, {BigComplex(1, P60)}, 5, P60), resonance_error);
  EXPECT_THROW(extend_coefficients(ode, Rational(1, 2), 1, {BigComplex(1, P60)}, 5, P60), resonance_error);
  EXPECT_THROW(extend_coefficients(ode, Rational(4, 3), 2, {BigComplex(1, P60), BigComplex(P60)}, 5, P60), resonance_error);
  EXPECT_THROW(extend_coefficients(ode, Rational(4, 3), 2, {BigComplex(1, P60)}, 5, P60), domain_error);
}

TEST(ApplyTheta, BasisImages) {
  const Rational a(10, 3);
  const LogSeries log_term = apply_theta(unit_series(a, 2, 2, 0, 1));
  EXPECT_EQ(log_term.coeff(0, 1), BigComplex(-a, P60));
  EXPECT_EQ(log_term.coeff(0, 0), BigComplex(1, P60));
  EXPECT_EQ(apply_theta(unit_series(a, 1, 2, 0, 0)).coeff(0, 0), BigComplex(-a, P60));
  EXPECT_EQ(apply_theta(unit_series(a, 1, 2, 1, 0)).coeff(1, 0), BigComplex(-a - Rational(1), P60));
}

TEST(ApplyTheta, MatchesNumericalDerivative) {
  const HyperParams p = hp({Rational(10, 3), Rational(10, 3)}, {Rational(7, 2)});
  const ConnectionExpansion e = expansion_at_infinity(p, 30, P60);
  const LogSeries& s = e.series[0];
  const BigComplex z = cz("6-9i");
  const BigReal h = abs(z) * BigReal::from_string("1e-30", P60);
  const BigComplex hc(h);
  const BigComplex deriv = (evaluate_log_series(s, z + hc) - evaluate_log_series(s, z - hc)) / (hc * 2);
  const BigComplex theta = evaluate_log_series(apply_theta(s), z);
  EXPECT_LE(abs(theta - z * deriv), abs(theta) * BigReal::from_string("1e-28", P60));
}

TEST(ContiguityRaise, OneF0ClosedForm) {
  // (theta + a)/a maps (1-z)^{-a} to (1-z)^{-a-1}
  const Rational a(2, 7);
  const ODEPolys ode = build_ode_polys(hp({a}, {}));
  const LogSeries s = extend_coefficients(ode, a, 1, {BigComplex(1, P60)}, 200, P60);
  const LogSeries raised = contiguity_raise(s, a);
  const BigComplex z = cz("-9+4i");
  const BigComplex expect =
      principal_pow(BigComplex(1, P60) - z, BigComplex(-a - Rational(1), P60), P60);
  // the raised series still has exponent a; its values match the raised function
  EXPECT_LE(abs(evaluate_log_series(raised, z) - expect), abs(expect) * BigReal::from_string("1e-55", P60));
  EXPECT_THROW(contiguity_raise(s, Rational(0)), domain_error);
}

TEST(ContiguityRaise, ZeroSeriesStaysZero) {
  const LogSeries z(Rational(1, 3), 2, std::vector<std::vector<BigComplex>>(4, std::vector<BigComplex>(2, BigComplex(P60))));
  const LogSeries r = contiguity_raise(z, Rational(1, 3));
  for (const auto& row : r.coeffs())
    for (const auto& c : row) EXPECT_TRUE(c.is_zero());
}

TEST(ContiguityRaise, CrossPathAgreement) {
  // raising every series of 2F1(1/3, 1/3; 3/4) in its second parameter gives 2F1(1/3, 4/3; 3/4)
  const Precision p = Precision::from_digits(40);
  const HyperParams base = hp({Rational(1, 3), Rational(1, 3)}, {Rational(3, 4)});
  const ConnectionExpansion e = expansion_at_infinity(base, 120, p);
  const BigComplex z = cz("10+10i", p);
  BigComplex raised(p);
  for (const auto& s : e.series) raised += evaluate_log_series(contiguity_raise(s, Rational(1, 3)), z);
  const EvalResult direct = evaluate(hp({Rational(1, 3), Rational(4, 3)}, {Rational(3, 4)}), z, 35);
  const EvalResult oracle = euler_integral_2f1_adaptive(Rational(1, 3), Rational(4, 3), Rational(3, 4), z, 35);
  EXPECT_LE(abs(raised - oracle.value), abs(oracle.value) * BigReal::from_string("1e-33", p));
  EXPECT_LE(abs(direct.value - oracle.value), abs(oracle.value) * BigReal::from_string("1e-33", p));
}

TEST(OdeResidual, DecaysAndDetectsCorruption) {
  const HyperParams p = hp({Rational(10, 3), Rational(10, 3)}, {Rational(7, 2)});
  const ODEPolys ode = build_ode_polys(p);
  const BigComplex z = cz("13+13i");
  BigReal prev = BigReal::infinity(P60);
  for (std::size_t n : {10, 20, 40}) {
    const LogSeries s = expansion_at_infinity(p, n, P60).series[0];
    const BigReal lead = abs(evaluate_log_series(s, z));
    const BigReal res = ode_residual(ode, s, z, P60) / lead;
    EXPECT_LT(res, prev);
    prev = res;
    if (n == 40) {
      EXPECT_LT(res, BigReal::from_string("1e-38", P60));
      LogSeries bad = s;
      bad.coeff(7, 1) *= BigComplex::from_strings("1.0001", "0", P60);
      EXPECT_GT(ode_residual(ode, bad, z, P60) / lead, BigReal::from_string("1e-10", P60));
    }
  }
  const LogSeries zero(Rational(10, 3), 2, std::vector<std::vector<BigComplex>>(5, std::vector<BigComplex>(2, BigComplex(P60))));
  EXPECT_TRUE(ode_residual(ode, zero, z, P60).is_zero());
}

TEST(OdeResidual, DegenerateLogCase) {
  // 2F1(1,1;2) with c0 = [0, 1] (the log(-z) solution) solves the equation
  const HyperParams p = hp({Rational(1), Rational(1)}, {Rational(2)});
  const ODEPolys ode = build_ode_polys(p);
  const LogSeries s = extend_coefficients(ode, Rational(1), 2, {BigComplex(P60), BigComplex(1, P60)}, 40, P60);
  const BigComplex z = cz("5-3i");
  const BigReal lead = abs(evaluate_log_series(s, z));
  EXPECT_LT(ode_residual(ode, s, z, P60) / lead, BigReal::from_string("1e-25", P60));
}
