#pragma once

// Truncated Laurent series ("jets") in a formal parameter eps.
//
// A jet with valuation v and coefficients [a_0 .. a_{n-1}] stands for
// sum_k a_k eps^{v+k} + O(eps^{v+n}). Parameter derivatives and limits
// of Gamma products become Taylor/Laurent coefficients of such jets.

#include <algorithm>
#include <string>
#include <vector>

#include "hypergeo/numeric.hpp"
#include "hypergeo/special.hpp"

namespace hypergeo {

class LaurentJet {
 public:
  LaurentJet(int valuation, std::vector<BigComplex> coeffs) : valuation_(valuation), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw domain_error("jet order must be >= 1");
  }

  static LaurentJet constant(const BigComplex& c, std::size_t order) {
    std::vector<BigComplex> v(order, BigComplex(c.precision()));
    v[0] = c;
    return {0, std::move(v)};
  }

  /// c0 + c1 * eps.
  static LaurentJet linear(const BigComplex& c0, const BigComplex& c1, std::size_t order) {
    LaurentJet j = constant(c0, order);
    if (order > 1) j.coeffs_[1] = c1;
    return j;
  }

  int valuation() const noexcept { return valuation_; }
  std::size_t order() const noexcept { return coeffs_.size(); }
  /// First power of eps that is not known.
  int truncation() const noexcept { return valuation_ + static_cast<int>(coeffs_.size()); }
  const std::vector<BigComplex>& coeffs() const noexcept { return coeffs_; }
  Precision precision() const {
    Precision p = coeffs_[0].precision();
    for (const auto& c : coeffs_) p = max(p, c.precision());
    return p;
  }

  /// Coefficient of eps^power; zero below the valuation.
  BigComplex coefficient(int power) const {
    if (power >= truncation())
      throw domain_error("jet coefficient eps^" + std::to_string(power) + " lies beyond the truncation order");
    if (power < valuation_) return BigComplex(precision());
    return coeffs_[static_cast<std::size_t>(power - valuation_)];
  }

  /// Drops leading coefficients with magnitude <= tol (at least one is kept).
  LaurentJet normalized(const BigReal& tol) const {
    std::size_t k = 0;
    while (k + 1 < coeffs_.size() && abs(coeffs_[k]) <= tol) ++k;
    return {valuation_ + static_cast<int>(k), std::vector<BigComplex>(coeffs_.begin() + static_cast<long>(k), coeffs_.end())};
  }

  /// sum a_k eps^{v+k} at a concrete eps.
  BigComplex evaluate(const BigComplex& eps) const {
    BigComplex acc(precision());
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * eps + coeffs_[k];
    return acc * pow_int(eps, valuation_);
  }

  LaurentJet operator-() const {
    std::vector<BigComplex> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(-c);
    return {valuation_, std::move(v)};
  }

  friend LaurentJet operator+(const LaurentJet& x, const LaurentJet& y) {
    const int v = std::min(x.valuation_, y.valuation_);
    const int t = std::min(x.truncation(), y.truncation());
    if (t <= v) throw domain_error("jet sum has no known coefficients");
    std::vector<BigComplex> out;
    out.reserve(static_cast<std::size_t>(t - v));
    for (int k = v; k < t; ++k) out.push_back(x.coefficient(k) + y.coefficient(k));
    return {v, std::move(out)};
  }
  friend LaurentJet operator-(const LaurentJet& x, const LaurentJet& y) { return x + (-y); }

  /// Cauchy product; valuations add, the relative order is the smaller one.
  friend LaurentJet operator*(const LaurentJet& x, const LaurentJet& y) {
    const std::size_t n = std::min(x.order(), y.order());
    std::vector<BigComplex> out(n, BigComplex(max(x.precision(), y.precision())));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j <= k; ++j) out[k] += x.coeffs_[j] * y.coeffs_[k - j];
    return {x.valuation_ + y.valuation_, std::move(out)};
  }
  friend LaurentJet operator*(LaurentJet x, const BigComplex& s) {
    for (auto& c : x.coeffs_) c *= s;
    return x;
  }
  friend LaurentJet operator*(const BigComplex& s, LaurentJet x) { return std::move(x) * s; }

 private:
  int valuation_;
  std::vector<BigComplex> coeffs_;
};

inline LaurentJet jet_mul(const LaurentJet& x, const LaurentJet& y) { return x * y; }

/// 1/x; the leading stored coefficient must be nonzero.
inline LaurentJet jet_inv(const LaurentJet& x) {
  const auto& a = x.coeffs();
  if (a[0].is_zero()) throw domain_error("jet inverse needs a nonzero leading coefficient");
  const std::size_t n = a.size();
  const BigComplex inv0 = BigComplex(1, a[0].precision()) / a[0];
  std::vector<BigComplex> b(n, BigComplex(x.precision()));
  b[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    BigComplex s(x.precision());
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
    b[k] = -(s * inv0);
  }
  return {-x.valuation(), std::move(b)};
}

/// exp(x) for a jet without pole part.
inline LaurentJet jet_exp(const LaurentJet& x) {
  for (int k = x.valuation(); k < std::min(0, x.truncation()); ++k)
    if (!x.coefficient(k).is_zero()) throw domain_error("exp of a jet with a pole part");
  const int t = x.truncation();
  if (t <= 0) throw domain_error("exp of a jet with no known regular coefficients");
  const std::size_t n = static_cast<std::size_t>(t);
  std::vector<BigComplex> f;
  f.reserve(n);
  for (int k = 0; k < t; ++k) f.push_back(x.coefficient(k));
  std::vector<BigComplex> y(n, BigComplex(x.precision()));
  y[0] = exp(f[0]);
  // y' = f' y  =>  k y_k = sum_{j=1..k} j f_j y_{k-j}
  for (std::size_t k = 1; k < n; ++k) {
    BigComplex s(x.precision());
    for (std::size_t j = 1; j <= k; ++j) s += f[j] * y[k - j] * static_cast<long>(j);
    y[k] = s / static_cast<long>(k);
  }
  return {0, std::move(y)};
}

/// Gamma(z0 + a*eps) to relative order n. At a pole z0 = -m the jet has
/// valuation -1 and comes from Gamma(z) = Gamma(z+m+1) / (z (z+1) ... (z+m)).
inline LaurentJet gamma_jet(const BigComplex& z0, const Rational& a, std::size_t n, const GammaContext& ctx) {
  const Precision p = ctx.precision();
  long m = 0;
  if (detail::is_gamma_pole(z0, &m)) {
    if (a.is_zero()) throw domain_error("gamma_jet at a pole needs a nonzero direction");
    const BigComplex av(a, p);
    LaurentJet num = gamma_jet(BigComplex(1, p), a, n, ctx);
    LaurentJet den = LaurentJet(1, [&] {
      std::vector<BigComplex> v(n, BigComplex(p));
      v[0] = av;
      return v;
    }());
    for (long k = 0; k < m; ++k) den = den * LaurentJet::linear(BigComplex(k - m, p), av, n);
    return num * jet_inv(den);
  }
  const BigComplex g = gamma(z0, ctx);
  if (a.is_zero() || n == 1) return LaurentJet::constant(g, n);
  // log Gamma(z0 + a eps) - log Gamma(z0) = sum_{k>=1} psi^{(k-1)}(z0) (a eps)^k / k!
  std::vector<BigComplex> lg(n, BigComplex(p));
  Rational ak(1);
  Rational fact(1);
  for (std::size_t k = 1; k < n; ++k) {
    ak *= a;
    fact *= Rational(static_cast<long>(k));
    lg[k] = polygamma(static_cast<unsigned>(k - 1), z0, ctx) * BigReal(ak / fact, p);
  }
  return jet_exp(LaurentJet(0, std::move(lg))) * g;
}

/// 1/Gamma(z0 + a*eps); a zero direction gives the constant rgamma(z0).
inline LaurentJet rgamma_jet(const BigComplex& z0, const Rational& a, std::size_t n, const GammaContext& ctx) {
  if (a.is_zero()) return LaurentJet::constant(rgamma(z0, ctx), n);
  return jet_inv(gamma_jet(z0, a, n, ctx));
}

}  // namespace hypergeo
