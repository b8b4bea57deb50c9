#pragma once

// Taylor evaluation of pFq-1 inside the unit disk, plus exact binary
// splitting of the partial sums for Gaussian-rational arguments.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hypergeo/numeric.hpp"

namespace hypergeo {

/// Upper parameters alpha_1..alpha_p and lower parameters beta_1..beta_{p-1}.
class HyperParams {
 public:
  HyperParams(std::vector<Rational> upper, std::vector<Rational> lower)
      : upper_(std::move(upper)), lower_(std::move(lower)) {
    if (upper_.empty()) throw parameter_error("at least one upper parameter is required");
    if (upper_.size() != lower_.size() + 1)
      throw parameter_error("expected " + std::to_string(lower_.size() + 1) + " upper parameters for " +
                            std::to_string(lower_.size()) + " lower ones, got " + std::to_string(upper_.size()));
    for (const auto& b : lower_)
      if (b.is_nonpositive_integer()) throw parameter_error("lower parameter " + b.to_string() + " is a nonpositive integer");
  }

  const std::vector<Rational>& upper() const noexcept { return upper_; }
  const std::vector<Rational>& lower() const noexcept { return lower_; }
  std::size_t p() const noexcept { return upper_.size(); }

  std::string to_string() const {
    std::ostringstream os;
    os << p() << 'F' << p() - 1 << '(';
    for (std::size_t i = 0; i < upper_.size(); ++i) os << (i ? "," : "") << upper_[i];
    os << ';';
    for (std::size_t j = 0; j < lower_.size(); ++j) os << (j ? "," : "") << lower_[j];
    return os.str() + ")";
  }

  friend bool operator==(const HyperParams&, const HyperParams&) = default;

 private:
  std::vector<Rational> upper_;
  std::vector<Rational> lower_;
};

struct TruncationPolicy {
  long max_terms = 1000;
  long target_digits = 30;

  /// Fixed number of terms, target = terms + 10.
  static TruncationPolicy fixed_terms(long terms) { return {terms, terms + 10}; }
  /// Terms from the convergence rate of |z|, with headroom for the stop rule.
  static TruncationPolicy automatic(long digits, double abs_z) {
    const double rate = abs_z > 0 ? -std::log10(abs_z) : 1.0;
    const long n = static_cast<long>(std::ceil(digits / std::max(rate, 1e-3)));
    return {2 * n + 50, digits};
  }
};

enum class Method { taylor, binary_splitting, connection, euler_integral };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::taylor: return "taylor";
    case Method::binary_splitting: return "binary_splitting";
    case Method::connection: return "connection";
    case Method::euler_integral: return "euler_integral";
  }
  return "?";
}

struct EvalResult {
  BigComplex value;
  BigReal err_estimate;
  long terms_used = 0;
  Method method = Method::taylor;
  std::vector<std::string> warnings;
  /// Bits lost to cancellation between summed contributions.
  long lost_bits = 0;
};

/// (a)_k = a (a+1) ... (a+k-1), exact.
inline Rational pochhammer(const Rational& a, unsigned long k) {
  Rational r(1);
  for (unsigned long j = 0; j < k; ++j) r *= a + Rational(static_cast<long>(j));
  return r;
}

/// prod(alpha_i + k) / (prod(beta_j + k) (k + 1)), the term ratio without z.
inline Rational term_ratio(const HyperParams& params, long k) {
  Rational num(1), den(k + 1);
  for (const auto& a : params.upper()) num *= a + Rational(k);
  for (const auto& b : params.lower()) den *= b + Rational(k);
  return num / den;
}

inline EvalResult taylor_eval(const HyperParams& params, const BigComplex& z, Precision prec,
                              const TruncationPolicy& policy) {
  if (policy.max_terms < 1) throw domain_error("max_terms must be >= 1");
  const BigReal az = abs(z);
  if (az >= 1) throw domain_error("series diverges for |z| >= 1");

  long guard = 32;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Precision wp = prec.with_guard(guard);
    const BigComplex zz = z.rounded(wp);
    const BigReal threshold = BigReal::from_string("1e-" + std::to_string(policy.target_digits + 2), wp);
    BigComplex term(1, wp);
    BigComplex sum(1, wp);
    BigReal max_term(1, wp);
    long small_run = 0;
    long used = 1;
    bool terminated = false;
    for (long k = 0; used < policy.max_terms; ++k) {
      const Rational r = term_ratio(params, k);
      if (r.is_zero()) {
        terminated = true;
        break;
      }
      term = term * zz * BigReal(r, wp);
      sum += term;
      ++used;
      const BigReal mag = abs(term);
      if (mag > max_term) max_term = mag;
      if (mag < threshold * abs(sum)) {
        if (++small_run >= 3) break;
      } else {
        small_run = 0;
      }
    }
    const BigReal asum = abs(sum);
    const long lost = asum.is_zero() ? guard : std::max(0L, max_term.exponent2() - asum.exponent2());
    if (lost > guard - 16 && attempt < 3) {
      guard = lost + 48;
      continue;
    }
    EvalResult res{sum.rounded(prec), BigReal(prec), used, Method::taylor, {}, lost};
    if (!terminated) {
      // Tail after the last included term t_{used-1}: first omitted term over (1 - rho).
      const long k = used - 1;
      const Rational r = term_ratio(params, k);
      const BigReal next = abs(term) * az * abs(BigReal(r, wp));
      const BigReal rho = az * abs(BigReal(term_ratio(params, k + 1), wp));
      res.err_estimate = rho < 1 ? next / (1 - rho) : BigReal::infinity(prec);
    }
    res.err_estimate = (res.err_estimate + max_term * pow2(-wp.bits() + 4, wp) * used).rounded(prec);
    return res;
  }
  throw consistency_error("taylor_eval could not control cancellation");
}

namespace detail {

struct GaussInt {
  mpz_class re, im;
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussInt operator*(const GaussInt& a, const mpz_class& s) { return {a.re * s, a.im * s}; }
  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
};

struct SplitState {
  GaussInt P;
  mpz_class Q;
  GaussInt T;
};

struct RatioFactors {
  GaussInt z_num;  // z = z_num / z_den
  mpz_class z_den;
  std::vector<Rational> upper, lower;
  mpz_class upper_dens = 1, lower_dens = 1;

  GaussInt p(long k) const {
    mpz_class prod = lower_dens;
    for (const auto& a : upper) prod *= a.num() + k * a.den();
    return z_num * prod;
  }
  mpz_class q(long k) const {
    mpz_class prod = z_den * upper_dens * (k + 1);
    for (const auto& b : lower) prod *= b.num() + k * b.den();
    return prod;
  }
};

inline SplitState split(const RatioFactors& f, long a, long b) {
  if (b - a == 1) {
    GaussInt p = f.p(a);
    return {p, f.q(a), p};
  }
  const long m = a + (b - a) / 2;
  SplitState l = split(f, a, m);
  SplitState r = split(f, m, b);
  return {l.P * r.P, l.Q * r.Q, l.T * r.Q + l.P * r.T};
}

}  // namespace detail

/// Exact sum_{k=0}^{terms} t_k by binary splitting of the term ratio.
inline GaussianRational binary_splitting_eval(const HyperParams& params, const GaussianRational& z, long terms) {
  if (terms < 0) throw domain_error("terms must be >= 0");
  if (terms == 0) return {Rational(1), Rational(0)};
  detail::RatioFactors f;
  const mpz_class dre = z.re.den(), dim = z.im.den();
  mpz_class d;
  mpz_lcm(d.get_mpz_t(), dre.get_mpz_t(), dim.get_mpz_t());
  f.z_num = {z.re.num() * (d / dre), z.im.num() * (d / dim)};
  f.z_den = d;
  f.upper = params.upper();
  f.lower = params.lower();
  for (const auto& a : f.upper) f.upper_dens *= a.den();
  for (const auto& b : f.lower) f.lower_dens *= b.den();
  const detail::SplitState s = detail::split(f, 0, terms);
  return {Rational(1) + Rational(s.T.re, s.Q), Rational(s.T.im, s.Q)};
}

/// Exact rational value of a finite BigComplex.
inline GaussianRational to_gaussian_rational(const BigComplex& z) {
  if (!z.is_finite()) throw domain_error("binary splitting needs a finite rational argument");
  mpq_class re, im;
  mpfr_get_q(re.get_mpq_t(), z.real().get());
  mpfr_get_q(im.get_mpq_t(), z.imag().get());
  return {Rational(re), Rational(im)};
}

/// Rounded binary-splitting value of the partial sum through `terms`.
inline EvalResult binary_splitting_value(const HyperParams& params, const GaussianRational& z, long terms,
                                         Precision prec) {
  const GaussianRational s = binary_splitting_eval(params, z, terms);
  return {BigComplex(s, prec), BigReal(prec), terms + 1, Method::binary_splitting, {}, 0};
}

}  // namespace hypergeo
