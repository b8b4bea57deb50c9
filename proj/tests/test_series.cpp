#include <gtest/gtest.h>

#include "hypergeo/series.hpp"

using namespace hypergeo;

namespace {

const Precision P100 = Precision::from_digits(100);

HyperParams hp(std::vector<Rational> a, std::vector<Rational> b) { return HyperParams(std::move(a), std::move(b)); }

/// Direct term-by-term sum of t_0..t_N in exact arithmetic.
GaussianRational direct_partial_sum(const HyperParams& params, const GaussianRational& z, long N) {
  GaussianRational term{Rational(1), Rational(0)}, sum = term;
  for (long k = 0; k < N; ++k) {
    term = term * z * GaussianRational{term_ratio(params, k), Rational(0)};
    sum = sum + term;
  }
  return sum;
}

}  // namespace

TEST(HyperParams, Validation) {
  EXPECT_THROW(hp({Rational(1)}, {Rational(1)}), parameter_error);
  EXPECT_THROW(hp({}, {}), parameter_error);
  EXPECT_THROW(hp({Rational(1), Rational(2)}, {Rational(-3)}), parameter_error);
  EXPECT_THROW(hp({Rational(1), Rational(2)}, {Rational(0)}), parameter_error);
  EXPECT_NO_THROW(hp({Rational(2)}, {}));
  EXPECT_EQ(hp({Rational(10, 3), Rational(10, 3)}, {Rational(7, 2)}).to_string(), "2F1(10/3,10/3;7/2)");
}

TEST(Pochhammer, Basics) {
  EXPECT_EQ(pochhammer(Rational(1, 2), 3), Rational(15, 8));
  EXPECT_EQ(pochhammer(Rational(-2), 3), Rational(0));
  EXPECT_EQ(pochhammer(Rational(5), 0), Rational(1));
}

TEST(TaylorEval, ClosedForms) {
  const HyperParams log_case = hp({Rational(1), Rational(1)}, {Rational(2)});
  const EvalResult r = taylor_eval(log_case, BigComplex(Rational(1, 2), P100), P100, TruncationPolicy{2000, 100});
  const BigReal expect = log(BigReal(2, P100)) * 2;
  EXPECT_LE(abs(r.value - BigComplex(expect)), BigReal::from_string("1e-98", P100));
  EXPECT_EQ(r.method, Method::taylor);

  const EvalResult s = taylor_eval(hp({Rational(2)}, {}), BigComplex(Rational(1, 3), P100), P100, TruncationPolicy{2000, 100});
  EXPECT_LE(abs(s.value - BigComplex(Rational(9, 4), P100)), BigReal::from_string("1e-98", P100));
}

TEST(TaylorEval, ZeroArgumentAndDomain) {
  const HyperParams p = hp({Rational(10, 3), Rational(10, 3)}, {Rational(7, 2)});
  const EvalResult r = taylor_eval(p, BigComplex(P100), P100, TruncationPolicy{});
  EXPECT_EQ(r.value, BigComplex(1, P100));
  EXPECT_THROW(taylor_eval(p, BigComplex(1, P100), P100, TruncationPolicy{}), domain_error);
}

TEST(TaylorEval, TerminatingSeries) {
  // 2F1(-3, 1; 1; z) = (1 - z)^3
  const HyperParams p = hp({Rational(-3), Rational(1)}, {Rational(1)});
  const BigComplex z(parse_complex("1/2+1/3i"), P100);
  const EvalResult r = taylor_eval(p, z, P100, TruncationPolicy{});
  const BigComplex w = BigComplex(1, P100) - z;
  EXPECT_LE(abs(r.value - w * w * w), BigReal::from_string("1e-98", P100));
  EXPECT_TRUE(r.err_estimate <= BigReal::from_string("1e-95", P100));
}

TEST(TaylorEval, ErrorEstimateShrinksWithTerms) {
  const HyperParams p = hp({Rational(10, 3), Rational(1, 7)}, {Rational(7, 2)});
  const BigComplex z(parse_complex("0.3-0.35i"), P100);
  BigReal prev = BigReal::infinity(P100);
  for (long n : {10, 20, 40, 80}) {
    const EvalResult r = taylor_eval(p, z, P100, TruncationPolicy::fixed_terms(n));
    // |z| < 1/2: each doubling gains at least a factor 2^-n
    EXPECT_LT(r.err_estimate, prev * pow2(-n / 2, P100));
    prev = r.err_estimate;
  }
}

TEST(BinarySplitting, Examples) {
  const HyperParams p = hp({Rational(1), Rational(1)}, {Rational(2)});
  EXPECT_EQ(binary_splitting_eval(p, {Rational(1, 2), Rational(0)}, 3), (GaussianRational{Rational(131, 96), Rational(0)}));
  EXPECT_EQ(binary_splitting_eval(p, {Rational(1, 2), Rational(0)}, 0), (GaussianRational{Rational(1), Rational(0)}));
}

TEST(BinarySplitting, EqualsDirectPartialSumsExactly) {
  const std::vector<HyperParams> cases{hp({Rational(10, 3), Rational(10, 3)}, {Rational(7, 2)}),
                                       hp({Rational(7, 2), Rational(7, 2), Rational(7, 2)}, {Rational(31, 5), Rational(36, 7)}),
                                       hp({Rational(-5, 2)}, {}), hp({Rational(-4), Rational(1, 3)}, {Rational(5, 6)})};
  const GaussianRational z{Rational(1, 26), Rational(1, 26)};
  for (const auto& p : cases)
    for (long n = 0; n <= 64; n += 7) EXPECT_EQ(binary_splitting_eval(p, z, n), direct_partial_sum(p, z, n)) << n;
}

TEST(BinarySplitting, MatchesTaylorPartialSum) {
  const HyperParams p = hp({Rational(10, 3), Rational(10, 3)}, {Rational(7, 2)});
  const GaussianRational z{Rational(1, 26), Rational(1, 26)};
  const BigComplex exact(binary_splitting_eval(p, z, 40), P100);
  const EvalResult t = taylor_eval(p, BigComplex(z, P100), P100, TruncationPolicy{41, 200});
  EXPECT_EQ(t.terms_used, 41);
  EXPECT_LE(abs(exact - t.value), BigReal::from_string("1e-98", P100) * abs(exact));
}

TEST(BinarySplitting, NonRationalArgumentIsRejected) {
  BigComplex inf(BigReal::infinity(P100), BigReal(P100));
  EXPECT_THROW(to_gaussian_rational(inf), domain_error);
  const BigComplex third(Rational(1, 3), P100);
  // a binary float is a dyadic rational, not 1/3
  EXPECT_NE(to_gaussian_rational(third).re, Rational(1, 3));
}
