#pragma once

// Log-series solutions of the pFq-1 equation at z = infinity.
//
// The equation is [P(theta) - z Q(theta)] F = 0 with theta = z d/dz,
//   P(theta) = theta prod_j (theta + beta_j - 1),  Q(theta) = prod_k (theta + alpha_k).
// A LogSeries represents (-z)^{-alpha} sum_{i<=N} sum_{j<q} c[i][j] z^{-i} log(-z)^j.
// In that basis theta phi_{i,j} = -(alpha+i) phi_{i,j} + j phi_{i,j-1} and
// z phi_{i,j} = phi_{i-1,j}, which gives the recurrence used below.

#include <vector>

#include "hypergeo/numeric.hpp"
#include "hypergeo/series.hpp"

namespace hypergeo {

/// Polynomial in theta with exact rational coefficients, c[k] at theta^k.
class RationalPoly {
 public:
  RationalPoly() : c_{Rational(0)} {}
  explicit RationalPoly(std::vector<Rational> c) : c_(std::move(c)) {
    if (c_.empty()) c_.push_back(Rational(0));
  }
  static RationalPoly one() { return RationalPoly({Rational(1)}); }
  /// theta + r
  static RationalPoly linear(const Rational& r) { return RationalPoly({r, Rational(1)}); }

  std::size_t degree() const { return c_.size() - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }

  RationalPoly operator*(const RationalPoly& o) const {
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return RationalPoly(std::move(r));
  }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  /// p^{(m)}(x) / m!
  Rational taylor_coefficient(std::size_t m, const Rational& x) const {
    // sum_k c_k binom(k, m) x^{k-m}
    Rational acc(0);
    for (std::size_t k = c_.size(); k-- > m;) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), k, m);
      acc = acc * x + c_[k] * Rational(b, mpz_class(1));
    }
    return acc;
  }

  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

 private:
  std::vector<Rational> c_;
};

struct ODEPolys {
  RationalPoly P;
  RationalPoly Q;
};

inline ODEPolys build_ode_polys(const HyperParams& params) {
  RationalPoly P = RationalPoly::linear(Rational(0));
  for (const auto& b : params.lower()) P = P * RationalPoly::linear(b - Rational(1));
  RationalPoly Q = RationalPoly::one();
  for (const auto& a : params.upper()) Q = Q * RationalPoly::linear(a);
  return {std::move(P), std::move(Q)};
}

class LogSeries {
 public:
  LogSeries(Rational alpha, std::size_t logdeg, std::vector<std::vector<BigComplex>> c)
      : alpha_(std::move(alpha)), logdeg_(logdeg), c_(std::move(c)) {
    if (logdeg_ == 0) throw domain_error("log-series needs logdeg >= 1");
    if (c_.empty()) throw domain_error("log-series needs at least the i = 0 layer");
    for (const auto& row : c_)
      if (row.size() != logdeg_) throw domain_error("log-series row width must equal logdeg");
  }

  const Rational& alpha() const noexcept { return alpha_; }
  std::size_t logdeg() const noexcept { return logdeg_; }
  /// Truncation order N: layers i = 0..N.
  std::size_t order() const noexcept { return c_.size() - 1; }
  const BigComplex& coeff(std::size_t i, std::size_t j) const { return c_.at(i).at(j); }
  BigComplex& coeff(std::size_t i, std::size_t j) { return c_.at(i).at(j); }
  const std::vector<std::vector<BigComplex>>& coeffs() const noexcept { return c_; }
  Precision precision() const { return c_[0][0].precision(); }

  /// Keeps layers 0..n.
  LogSeries truncated(std::size_t n) const {
    std::vector<std::vector<BigComplex>> c(c_.begin(), c_.begin() + static_cast<long>(std::min(n, order()) + 1));
    return {alpha_, logdeg_, std::move(c)};
  }

  friend LogSeries operator+(const LogSeries& a, const LogSeries& b) {
    if (a.alpha_ != b.alpha_ || a.logdeg_ != b.logdeg_ || a.order() != b.order())
      throw domain_error("adding log-series of different shape");
    LogSeries r = a;
    for (std::size_t i = 0; i <= a.order(); ++i)
      for (std::size_t j = 0; j < a.logdeg_; ++j) r.c_[i][j] += b.c_[i][j];
    return r;
  }
  friend LogSeries operator*(LogSeries s, const BigComplex& f) {
    for (auto& row : s.c_)
      for (auto& c : row) c *= f;
    return s;
  }

 private:
  Rational alpha_;
  std::size_t logdeg_;
  std::vector<std::vector<BigComplex>> c_;
};

/// Value of the truncated series at z using terms i <= terms. `log_mz` is
/// principal_log(-z) and `pow_mz` is (-z)^{-alpha}; `last` receives the
/// magnitude of the i = terms layer and `largest` the largest single term
/// |c_j^i log(-z)^j z^{-i} (-z)^{-alpha}|.
inline BigComplex sum_log_series(const LogSeries& s, const BigComplex& z, const BigComplex& log_mz,
                                 const BigComplex& pow_mz, std::size_t terms, BigReal* last = nullptr,
                                 BigReal* largest = nullptr) {
  const Precision wp = max(z.precision(), log_mz.precision());
  const std::size_t n = std::min(terms, s.order());
  const BigComplex w = BigComplex(1, wp) / z;
  const auto layer = [&](std::size_t i) {
    BigComplex acc(wp);
    for (std::size_t j = s.logdeg(); j-- > 0;) acc = acc * log_mz + s.coeff(i, j);
    return acc;
  };
  BigComplex acc = layer(n);
  if (last != nullptr) *last = abs(acc) * pow(abs(w), BigReal(static_cast<long>(n), wp)) * abs(pow_mz);
  for (std::size_t i = n; i-- > 0;) acc = acc * w + layer(i);
  if (largest != nullptr) {
    const BigReal aw = abs(w), al = abs(log_mz);
    BigReal wi = abs(pow_mz);
    *largest = BigReal(wp);
    for (std::size_t i = 0; i <= n; ++i, wi *= aw) {
      BigReal lj = wi;
      for (std::size_t j = 0; j < s.logdeg(); ++j, lj *= al) *largest = max(*largest, abs(s.coeff(i, j)) * lj);
    }
  }
  return acc * pow_mz;
}

/// Point value of the whole series at z (principal branches).
inline BigComplex evaluate_log_series(const LogSeries& s, const BigComplex& z) {
  const Precision wp = max(z.precision(), s.precision());
  const BigComplex mz = -z.rounded(wp);
  const BigComplex lz = principal_log(mz);
  const BigComplex pw = principal_pow(mz, BigComplex(-s.alpha(), wp), wp);
  return sum_log_series(s, z.rounded(wp), lz, pw, s.order());
}

namespace detail {

inline mpz_class falling_ratio(std::size_t k, std::size_t m) {
  // (k+m)! / k!
  mpz_class r = 1;
  for (std::size_t t = 1; t <= m; ++t) r *= static_cast<unsigned long>(k + t);
  return r;
}

}  // namespace detail

namespace detail {

inline void check_indicial(const ODEPolys& ode, const Rational& alpha, std::size_t q) {
  for (std::size_t m = 0; m < q; ++m)
    if (!ode.Q.taylor_coefficient(m, -alpha).is_zero())
      throw resonance_error("-" + alpha.to_string() + " is not a root of Q of multiplicity " + std::to_string(q));
}

/// Runs the recurrence over layers 1..N of `c`, whose layer 0 is set.
/// `scale(value, rational)` multiplies a coefficient by an exact factor.
template <class T, class Scale>
void run_recurrence(const ODEPolys& ode, const Rational& alpha, std::vector<std::vector<T>>& c, Scale scale) {
  const std::size_t q = c[0].size();
  for (std::size_t i = 1; i < c.size(); ++i) {
    const Rational x = -alpha - Rational(static_cast<long>(i));
    const Rational q0 = ode.Q(x);
    if (q0.is_zero())
      throw resonance_error("Q(-alpha-" + std::to_string(i) + ") = 0 for alpha = " + alpha.to_string() +
                            ": another upper parameter differs by a positive integer");
    const Rational inv_q0 = Rational(1) / q0;
    const Rational xp = x + Rational(1);
    for (std::size_t k = q; k-- > 0;) {
      T rhs = scale(c[i][k], Rational(0));
      for (std::size_t m = 0; k + m < q; ++m) {
        const Rational f = ode.P.taylor_coefficient(m, xp) * Rational(falling_ratio(k, m), mpz_class(1));
        if (!f.is_zero()) rhs += scale(c[i - 1][k + m], f);
      }
      for (std::size_t m = 1; k + m < q; ++m) {
        const Rational f = ode.Q.taylor_coefficient(m, x) * Rational(falling_ratio(k, m), mpz_class(1));
        if (!f.is_zero()) rhs -= scale(c[i][k + m], f);
      }
      c[i][k] = scale(rhs, inv_q0);
    }
  }
}

}  // namespace detail

/// Fills c[i][j] for i = 1..N from the free layer c0 (length q) with
///   sum_m Q^{(m)}(-a-i)/m! (j+m)!/j! c^i_{j+m} = sum_m P^{(m)}(-a-i+1)/m! (j+m)!/j! c^{i-1}_{j+m},
/// solved for j = q-1 down to 0.
inline LogSeries extend_coefficients(const ODEPolys& ode, const Rational& alpha, std::size_t q,
                                     const std::vector<BigComplex>& c0, std::size_t N, Precision prec) {
  if (q == 0 || c0.size() != q) throw domain_error("extend_coefficients needs q >= 1 leading coefficients");
  detail::check_indicial(ode, alpha, q);
  const Precision wp = prec.with_guard(10 * static_cast<long>(q));
  std::vector<std::vector<BigComplex>> c(N + 1, std::vector<BigComplex>(q, BigComplex(wp)));
  for (std::size_t j = 0; j < q; ++j) c[0][j] = c0[j].rounded(wp);
  detail::run_recurrence(ode, alpha, c, [wp](const BigComplex& v, const Rational& f) {
    return f.is_zero() ? BigComplex(wp) : v * BigReal(f, wp);
  });
  return {alpha, q, std::move(c)};
}

/// The same recurrence in exact arithmetic, for rational leading coefficients.
inline std::vector<std::vector<Rational>> extend_coefficients_exact(const ODEPolys& ode, const Rational& alpha,
                                                                    const std::vector<Rational>& c0, std::size_t N) {
  if (c0.empty()) throw domain_error("extend_coefficients needs q >= 1 leading coefficients");
  detail::check_indicial(ode, alpha, c0.size());
  std::vector<std::vector<Rational>> c(N + 1, std::vector<Rational>(c0.size(), Rational(0)));
  c[0] = c0;
  detail::run_recurrence(ode, alpha, c, [](const Rational& v, const Rational& f) { return v * f; });
  return c;
}

/// Image of theta = z d/dz: c^i_j -> -(alpha+i) c^i_j + (j+1) c^i_{j+1}.
inline LogSeries apply_theta(const LogSeries& s) {
  const Precision wp = s.precision();
  std::vector<std::vector<BigComplex>> c(s.order() + 1, std::vector<BigComplex>(s.logdeg(), BigComplex(wp)));
  for (std::size_t i = 0; i <= s.order(); ++i) {
    const BigReal shift(-(s.alpha() + Rational(static_cast<long>(i))), wp);
    for (std::size_t j = 0; j < s.logdeg(); ++j) {
      c[i][j] = s.coeff(i, j) * shift;
      if (j + 1 < s.logdeg()) c[i][j] += s.coeff(i, j + 1) * static_cast<long>(j + 1);
    }
  }
  return {s.alpha(), s.logdeg(), std::move(c)};
}

/// F(.., a+1, ..) = (theta + a) F(.., a, ..) / a applied to an expansion.
inline LogSeries contiguity_raise(const LogSeries& s, const Rational& a) {
  if (a.is_zero()) throw domain_error("contiguity raise with a = 0");
  const Precision wp = s.precision();
  LogSeries t = apply_theta(s);
  const BigReal av(a, wp);
  const BigReal inv(Rational(1) / a, wp);
  std::vector<std::vector<BigComplex>> c = t.coeffs();
  for (std::size_t i = 0; i <= s.order(); ++i)
    for (std::size_t j = 0; j < s.logdeg(); ++j) c[i][j] = (c[i][j] + s.coeff(i, j) * av) * inv;
  return {s.alpha(), s.logdeg(), std::move(c)};
}

/// |[P(theta) - z Q(theta)] s| at z, with the operator applied term-wise to
/// the truncated series (levels i = -1..N).
inline BigReal ode_residual(const ODEPolys& ode, const LogSeries& s, const BigComplex& z, Precision prec) {
  const Precision wp = max(prec, s.precision()).with_guard(16);
  const std::size_t N = s.order();
  const std::size_t q = s.logdeg();
  // r[i+1][k] is the coefficient of phi_{i,k}, i = -1..N
  std::vector<std::vector<BigComplex>> r(N + 2, std::vector<BigComplex>(q, BigComplex(wp)));
  const auto coeff = [&](long i, std::size_t j) {
    if (i < 0 || i > static_cast<long>(N) || j >= q) return BigComplex(wp);
    return s.coeff(static_cast<std::size_t>(i), j);
  };
  for (long i = -1; i <= static_cast<long>(N); ++i) {
    const Rational xp = -s.alpha() - Rational(i);
    const Rational xq = xp - Rational(1);
    for (std::size_t k = 0; k < q; ++k) {
      BigComplex acc(wp);
      for (std::size_t m = 0; k + m < q; ++m) {
        const Rational w(detail::falling_ratio(k, m), mpz_class(1));
        const Rational fp = ode.P.taylor_coefficient(m, xp) * w;
        const Rational fq = ode.Q.taylor_coefficient(m, xq) * w;
        if (!fp.is_zero()) acc += coeff(i, k + m) * BigReal(fp, wp);
        if (!fq.is_zero()) acc -= coeff(i + 1, k + m) * BigReal(fq, wp);
      }
      r[static_cast<std::size_t>(i + 1)][k] = acc;
    }
  }
  // Evaluate sum_{i=-1}^{N} sum_k r z^{-i} L^k (-z)^{-alpha}: shift by one power of z.
  const BigComplex zz = z.rounded(wp);
  const BigComplex mz = -zz;
  const BigComplex lz = principal_log(mz);
  const BigComplex pw = principal_pow(mz, BigComplex(-s.alpha(), wp), wp);
  const LogSeries shifted(s.alpha(), q, std::move(r));
  return abs(sum_log_series(shifted, zz, lz, pw, shifted.order()) * zz).rounded(prec);
}

}  // namespace hypergeo
