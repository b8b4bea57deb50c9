#pragma once

// Gamma, log-gamma, reciprocal gamma and polygamma for complex arguments.
//
// All functions shift the argument upward until |w| clears the
// context's shift threshold and then sum the Stirling (or polygamma)
// asymptotic series with exact Bernoulli numbers. Arithmetic runs with
// guard bits and the result is rounded to the context precision.

#include <cmath>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "hypergeo/numeric.hpp"

namespace hypergeo {

/// Even-index Bernoulli numbers B_0, B_2, B_4, ... as exact rationals.
/// The table only grows; concurrent readers are safe.
class BernoulliTable {
 public:
  /// B_{2k}.
  Rational even(std::size_t k) const {
    {
      std::shared_lock lock(mu_);
      if (k < b2_.size()) return b2_[k];
    }
    std::unique_lock lock(mu_);
    if (k >= b2_.size()) grow(std::max<std::size_t>(2 * k + 2, 32));
    return b2_[k];
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return b2_.size();
  }

 private:
  // Tangent numbers T_1..T_n by the integer recurrence of Brent and Harvey,
  // then B_{2n} = (-1)^(n-1) 2n T_n / (4^n (4^n - 1)).
  void grow(std::size_t count) const {
    const std::size_t n = count;
    std::vector<mpz_class> t(n + 1);
    t[1] = 1;
    for (std::size_t k = 2; k <= n; ++k) t[k] = static_cast<unsigned long>(k - 1) * t[k - 1];
    for (std::size_t k = 2; k <= n; ++k)
      for (std::size_t j = k; j <= n; ++j)
        t[j] = static_cast<unsigned long>(j - k) * t[j - 1] + static_cast<unsigned long>(j - k + 2) * t[j];
    std::vector<Rational> b(n + 1);
    b[0] = Rational(1);
    for (std::size_t m = 1; m <= n; ++m) {
      mpz_class four_m;
      mpz_ui_pow_ui(four_m.get_mpz_t(), 4, m);
      mpz_class num = 2 * static_cast<unsigned long>(m) * t[m];
      if (m % 2 == 0) num = -num;
      b[m] = Rational(num, four_m * (four_m - 1));
    }
    b2_ = std::move(b);
  }

  mutable std::shared_mutex mu_;
  mutable std::vector<Rational> b2_;
};

inline std::shared_ptr<BernoulliTable> shared_bernoulli_table() {
  static const auto table = std::make_shared<BernoulliTable>();
  return table;
}

class GammaContext {
 public:
  explicit GammaContext(Precision p, std::shared_ptr<BernoulliTable> table = shared_bernoulli_table())
      : prec_(p),
        work_(p.with_guard(40)),
        table_(std::move(table)),
        euler_(BigReal::euler_gamma(work_)),
        pi_(BigReal::pi(work_)) {}

  Precision precision() const { return prec_; }
  /// Precision used for internal arithmetic.
  Precision working_precision() const { return work_; }
  /// Euler's constant at the working precision.
  const BigReal& euler_gamma() const { return euler_; }
  const BigReal& pi() const { return pi_; }
  const BernoulliTable& bernoulli() const { return *table_; }

  /// Minimum |w| at which the asymptotic series is summed.
  double shift_threshold(long extra = 0) const { return 0.2 * static_cast<double>(work_.bits() + extra) + 8.0; }

 private:
  Precision prec_;
  Precision work_;
  std::shared_ptr<BernoulliTable> table_;
  BigReal euler_;
  BigReal pi_;
};

namespace detail {

/// z is 0, -1, -2, ...; sets n = -z.
inline bool is_gamma_pole(const BigComplex& z, long* n = nullptr) {
  if (!z.imag().is_zero() || !z.real().is_integer() || z.real().sign() > 0) return false;
  if (n != nullptr) *n = -z.real().to_long();
  return true;
}

inline long bits_of(double x) { return static_cast<long>(std::ceil(std::log2(std::max(2.0, x)))); }

/// Shift m >= 0 with Re(z + m) >= threshold.
inline long upward_shift(const BigComplex& z, double threshold) {
  const double re = z.real().to_double();
  return re >= threshold ? 0L : static_cast<long>(std::ceil(threshold - re));
}

/// Stirling series for log Gamma(w), Re w large. `wp` is the working
/// precision of the result.
inline BigComplex stirling_log_gamma(const BigComplex& w, const GammaContext& ctx, Precision wp) {
  const BigComplex ww = w.rounded(wp);
  BigComplex s = (ww - BigReal(Rational(1, 2), wp)) * principal_log(ww) - ww;
  s += BigComplex(log(BigReal::pi(wp) * 2) / 2);
  const BigComplex inv = BigComplex(1, wp) / ww;
  const BigComplex inv2 = inv * inv;
  BigComplex power = inv;  // w^{-(2k-1)}
  const BigReal tol = pow2(-wp.bits() - 4, wp) * max(abs(s), BigReal(1, wp));
  BigReal last = BigReal::infinity(wp);
  for (std::size_t k = 1;; ++k) {
    const Rational c = ctx.bernoulli().even(k) / Rational(static_cast<long>(2 * k * (2 * k - 1)));
    BigComplex term = power * BigReal(c, wp);
    BigReal mag = abs(term);
    s += term;
    if (mag < tol) break;
    if (mag > last && k > 4) throw consistency_error("Stirling series diverged before convergence");
    last = mag;
    power *= inv2;
  }
  return s;
}

}  // namespace detail

/// Principal branch of log Gamma: analytic off (-inf, 0], real on (0, inf).
inline BigComplex log_gamma(const BigComplex& z, const GammaContext& ctx) {
  long n = 0;
  if (detail::is_gamma_pole(z, &n)) throw pole_error(n, "log_gamma at pole z = -" + std::to_string(n));
  const double threshold = ctx.shift_threshold();
  const long m = detail::upward_shift(z, threshold);
  const Precision wp = ctx.working_precision().with_guard(detail::bits_of(abs(z).to_double() + threshold));
  const BigComplex zz = z.rounded(wp);
  BigComplex s = detail::stirling_log_gamma(zz + m, ctx, wp);
  // Summing logs individually keeps the principal branch.
  for (long k = 0; k < m; ++k) s -= principal_log(zz + k);
  return s.rounded(ctx.precision());
}

namespace detail {

/// Gamma(z) at working precision `wp`, z not a pole, Re z not far negative.
inline BigComplex gamma_by_shift(const BigComplex& z, const GammaContext& ctx, Precision wp) {
  const double threshold = ctx.shift_threshold();
  const long m = upward_shift(z, threshold);
  const BigComplex zz = z.rounded(wp);
  BigComplex g = exp(stirling_log_gamma(zz + m, ctx, wp));
  if (m > 0) {
    BigComplex prod(1, wp);
    for (long k = 0; k < m; ++k) prod *= zz + k;
    g /= prod;
  }
  return g;
}

inline bool far_negative(const BigComplex& z, const GammaContext& ctx) {
  return z.real().to_double() < -2.0 * ctx.shift_threshold();
}

/// Extra bits to absorb the loss in sin(pi z) near integers.
inline long reflection_guard(const BigComplex& z) {
  const double re = z.real().to_double();
  const double dist = std::abs(re - std::round(re)) + std::abs(z.imag().to_double());
  return bits_of(std::abs(re)) + (dist > 0 ? bits_of(1.0 / dist) : 64) + 16;
}

}  // namespace detail

inline BigComplex gamma(const BigComplex& z, const GammaContext& ctx) {
  long n = 0;
  if (detail::is_gamma_pole(z, &n)) throw pole_error(n, "Gamma at pole z = -" + std::to_string(n));
  const double threshold = ctx.shift_threshold();
  if (detail::far_negative(z, ctx)) {
    // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    const Precision wp = ctx.working_precision().with_guard(detail::reflection_guard(z));
    const BigComplex zz = z.rounded(wp);
    const BigReal pi = BigReal::pi(wp);
    const BigComplex g1 = detail::gamma_by_shift(BigComplex(1, wp) - zz, ctx, wp);
    return (BigComplex(pi) / (sin(zz * pi) * g1)).rounded(ctx.precision());
  }
  const Precision wp = ctx.working_precision().with_guard(2 * detail::bits_of(abs(z).to_double() + threshold));
  return detail::gamma_by_shift(z, ctx, wp).rounded(ctx.precision());
}

/// 1/Gamma(z); entire, exactly zero at 0, -1, -2, ...
inline BigComplex rgamma(const BigComplex& z, const GammaContext& ctx) {
  if (detail::is_gamma_pole(z)) return BigComplex(ctx.precision());
  const double threshold = ctx.shift_threshold();
  if (detail::far_negative(z, ctx)) {
    // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
    const Precision wp = ctx.working_precision().with_guard(detail::reflection_guard(z));
    const BigComplex zz = z.rounded(wp);
    const BigReal pi = BigReal::pi(wp);
    const BigComplex g1 = detail::gamma_by_shift(BigComplex(1, wp) - zz, ctx, wp);
    return (sin(zz * pi) * g1 / pi).rounded(ctx.precision());
  }
  const Precision wp = ctx.working_precision().with_guard(2 * detail::bits_of(abs(z).to_double() + threshold));
  return (BigComplex(1, wp) / detail::gamma_by_shift(z, ctx, wp)).rounded(ctx.precision());
}

/// psi^(n)(z), the n-th derivative of the digamma function.
inline BigComplex polygamma(unsigned n, const BigComplex& z, const GammaContext& ctx) {
  long pole = 0;
  if (detail::is_gamma_pole(z, &pole))
    throw pole_error(pole, "polygamma at pole z = -" + std::to_string(pole));
  double threshold = ctx.shift_threshold(8 * static_cast<long>(n)) + 2.0 * n;
  for (int attempt = 0; attempt < 6; ++attempt, threshold *= 2) {
    const long m = detail::upward_shift(z, threshold);
    const Precision wp = ctx.working_precision().with_guard(
        (static_cast<long>(n) + 2) * detail::bits_of(abs(z).to_double() + threshold));
    const BigComplex zz = z.rounded(wp);
    const BigComplex w = zz + m;
    const BigComplex inv = BigComplex(1, wp) / w;
    const BigComplex inv2 = inv * inv;

    // n! and (n-1)!
    mpz_class fact_n = 1;
    for (unsigned k = 2; k <= n; ++k) fact_n *= k;
    BigComplex s(wp);
    BigComplex power(wp);  // w^{-(2k+n)} at step k
    if (n == 0) {
      s = principal_log(w) - inv / 2;
      power = inv2;
    } else {
      const mpz_class fact_nm1 = fact_n / n;
      const BigComplex inv_n = pow_int(inv, static_cast<long>(n));
      s = inv_n * BigReal(fact_nm1, wp) + inv_n * inv * BigReal(fact_n, wp) / 2;
      power = inv_n * inv2;
    }
    const BigReal tol = pow2(-wp.bits() - 4, wp) * max(abs(s), BigReal(1, wp));
    BigReal last = BigReal::infinity(wp);
    bool converged = false;
    // ratio (2k+n-1)!/(2k)! maintained as an exact integer
    for (std::size_t k = 1; k < 4096; ++k) {
      mpz_class rising = 1;
      for (unsigned j = 1; j < n; ++j) rising *= static_cast<unsigned long>(2 * k + j);
      Rational c = ctx.bernoulli().even(k) * Rational(rising, mpz_class(1));
      if (n == 0) c = c / Rational(static_cast<long>(2 * k));
      BigComplex term = power * BigReal(c, wp);
      BigReal mag = abs(term);
      if (n == 0) s -= term;
      else s += term;
      if (mag < tol) {
        converged = true;
        break;
      }
      if (mag > last && k > 4) break;
      last = mag;
      power *= inv2;
    }
    if (!converged) continue;
    if (n > 0 && n % 2 == 0) s = -s;  // (-1)^{n+1}
    // psi^(n)(z) = psi^(n)(z+m) - sum_{k<m} (-1)^n n! / (z+k)^{n+1}
    BigComplex corr(wp);
    for (long k = 0; k < m; ++k) corr += pow_int(BigComplex(1, wp) / (zz + k), static_cast<long>(n) + 1);
    corr *= BigReal(fact_n, wp);
    if (n % 2 == 1) corr = -corr;
    return (s - corr).rounded(ctx.precision());
  }
  throw consistency_error("polygamma asymptotic series failed to converge");
}

inline BigComplex digamma(const BigComplex& z, const GammaContext& ctx) { return polygamma(0, z, ctx); }

}  // namespace hypergeo
