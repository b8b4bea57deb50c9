#pragma once

// Arbitrary-precision real/complex arithmetic and exact rationals.
//
// BigReal wraps an mpfr_t that carries its own precision; binary
// operations produce a result at the larger of the operand precisions.
// There is no global precision state: every constructor that creates a
// value from scratch takes a Precision.
//
// Branch convention for log/pow: arg in (-pi, pi]. A zero imaginary part
// is treated as +0 regardless of its sign bit, so log(-x) = ln x + i*pi.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "hypergeo/errors.hpp"

namespace hypergeo {

inline constexpr double kLog10Of2 = 0.30102999566398119521;

class Precision {
 public:
  static constexpr long kMinBits = 64;

  constexpr Precision() = default;
  constexpr explicit Precision(long bits) : bits_(bits < kMinBits ? kMinBits : bits) {}

  /// Bits needed for `digits` decimal digits: ceil(digits / log10 2).
  static Precision from_digits(long digits) {
    return Precision(static_cast<long>(std::ceil(static_cast<double>(digits) / kLog10Of2)));
  }

  constexpr long bits() const noexcept { return bits_; }
  long digits() const noexcept {
    return static_cast<long>(std::floor(static_cast<double>(bits_) * kLog10Of2));
  }
  constexpr Precision with_guard(long extra_bits) const { return Precision(bits_ + extra_bits); }

  friend constexpr auto operator<=>(Precision, Precision) = default;

 private:
  long bits_ = kMinBits;
};

inline Precision max(Precision a, Precision b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// Rational

class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw domain_error("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
    if (d == 0) throw domain_error("rational with zero denominator");
    v_.canonicalize();
  }

  /// Accepts "7", "-10/3", "1.25", "-2.5e-3". Decimal forms are read exactly.
  static Rational parse(std::string_view text, std::size_t offset = 0);

  const mpq_class& get() const noexcept { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_nonpositive_integer() const { return is_integer() && sign() <= 0; }
  /// Largest integer <= value.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }
  double to_double() const { return v_.get_d(); }
  std::string to_string() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class v_;
};

inline Rational Rational::parse(std::string_view text, std::size_t offset) {
  std::size_t i = 0;
  const auto fail = [&](const std::string& msg) -> Rational { throw parse_error(offset + i, msg); };
  if (text.empty()) return fail("empty number");
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long scale = 0;  // value = digits * 10^scale
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '/') {
    if (!seen_digit) return fail("missing numerator");
    ++i;
    std::string den;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) den += text[i++];
    if (den.empty()) return fail("missing denominator");
    if (i != text.size()) return fail("unexpected character in rational");
    mpz_class n(digits, 10), d(den, 10);
    if (d == 0) return fail("zero denominator");
    if (negative) n = -n;
    return Rational(n, d);
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) return fail("expected digits");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    std::string ex;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ex += text[i++];
    if (ex.empty() || ex.size() > 6) return fail("bad exponent");
    long e = std::stol(ex);
    scale += eneg ? -e : e;
  }
  if (i != text.size()) return fail("unexpected character in number");
  mpz_class n(digits, 10);
  if (negative) n = -n;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  return scale >= 0 ? Rational(n * p, mpz_class(1)) : Rational(n, p);
}

/// Exact complex rational re + i*im.
struct GaussianRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n.is_zero()) throw domain_error("gaussian rational division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-i" where a and b are decimal or
/// rational literals ("1/3-2/5i"). No whitespace.
inline GaussianRational parse_complex(std::string_view text) {
  if (text.empty()) throw parse_error(0, "empty complex literal");
  // Find the split between real and imaginary parts: a sign that is not at
  // position 0 and not directly after an exponent marker.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = 1; k < text.size(); ++k) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      if (split != std::string_view::npos) throw parse_error(k, "too many signs in complex literal");
      split = k;
    }
  }
  const auto imag_part = [](std::string_view t, std::size_t off) {
    // t ends with 'i'
    std::string_view body = t.substr(0, t.size() - 1);
    if (body.empty() || body == "+") return Rational(1);
    if (body == "-") return Rational(-1);
    return Rational::parse(body, off);
  };
  const bool ends_i = text.back() == 'i';
  if (split == std::string_view::npos) {
    if (ends_i) return {Rational(0), imag_part(text, 0)};
    return {Rational::parse(text, 0), Rational(0)};
  }
  if (!ends_i) throw parse_error(text.size(), "imaginary part must end with 'i'");
  return {Rational::parse(text.substr(0, split), 0), imag_part(text.substr(split), split)};
}

// ---------------------------------------------------------------------------
// BigReal

class BigReal {
 public:
  explicit BigReal(Precision p = Precision()) {
    mpfr_init2(v_, p.bits());
    mpfr_set_zero(v_, 1);
  }
  BigReal(long value, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  BigReal(const Rational& value, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_q(v_, value.get().get_mpq_t(), MPFR_RNDN);
  }
  BigReal(const mpz_class& value, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }
  /// Correctly rounded decimal conversion.
  static BigReal from_string(const std::string& text, Precision p) {
    BigReal r(p);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) throw parse_error(0, "bad decimal: " + text);
    return r;
  }
  static BigReal from_double(double d, Precision p) {
    BigReal r(p);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static BigReal pi(Precision p) {
    BigReal r(p);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static BigReal euler_gamma(Precision p) {
    BigReal r(p);
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
  }
  static BigReal infinity(Precision p = Precision()) {
    BigReal r(p);
    mpfr_set_inf(r.v_, 1);
    return r;
  }

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      if (v_[0]._mpfr_d == nullptr) mpfr_init2(v_, mpfr_get_prec(o.v_));
      else mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~BigReal() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }
  Precision precision() const { return Precision(static_cast<long>(mpfr_get_prec(v_))); }

  BigReal rounded(Precision p) const {
    BigReal r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent2() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  BigReal operator-() const {
    BigReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

#define HYPERGEO_REAL_BINOP(op, fn, fn_si)                                    \
  friend BigReal operator op(const BigReal& a, const BigReal& b) {           \
    BigReal r(max(a.precision(), b.precision()));                            \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                          \
    return r;                                                                 \
  }                                                                           \
  friend BigReal operator op(const BigReal& a, long b) {                     \
    BigReal r(a.precision());                                                 \
    fn_si(r.v_, a.v_, b, MPFR_RNDN);                                          \
    return r;                                                                 \
  }                                                                           \
  BigReal& operator op##=(const BigReal& b) { return *this = *this op b; }   \
  BigReal& operator op##=(long b) { return *this = *this op b; }

  HYPERGEO_REAL_BINOP(+, mpfr_add, mpfr_add_si)
  HYPERGEO_REAL_BINOP(-, mpfr_sub, mpfr_sub_si)
  HYPERGEO_REAL_BINOP(*, mpfr_mul, mpfr_mul_si)
  HYPERGEO_REAL_BINOP(/, mpfr_div, mpfr_div_si)
#undef HYPERGEO_REAL_BINOP

  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(long a, const BigReal& b) {
    BigReal r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b) {
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  /// Shortest-ish scientific rendering with `digits` significant digits.
  std::string to_string(int digits = 20) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(); }

 private:
  mpfr_t v_;
};

#define HYPERGEO_REAL_UNARY(name, fn)        \
  inline BigReal name(const BigReal& x) {    \
    BigReal r(x.precision());                \
    fn(r.get(), x.get(), MPFR_RNDN);         \
    return r;                                \
  }
HYPERGEO_REAL_UNARY(sqrt, mpfr_sqrt)
HYPERGEO_REAL_UNARY(exp, mpfr_exp)
HYPERGEO_REAL_UNARY(log, mpfr_log)
HYPERGEO_REAL_UNARY(log10, mpfr_log10)
HYPERGEO_REAL_UNARY(sin, mpfr_sin)
HYPERGEO_REAL_UNARY(cos, mpfr_cos)
HYPERGEO_REAL_UNARY(sinh, mpfr_sinh)
HYPERGEO_REAL_UNARY(cosh, mpfr_cosh)
HYPERGEO_REAL_UNARY(abs, mpfr_abs)
#undef HYPERGEO_REAL_UNARY

inline BigReal floor(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}
inline BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal r(max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
inline BigReal hypot(const BigReal& x, const BigReal& y) {
  BigReal r(max(x.precision(), y.precision()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
inline BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r(max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
/// x * 2^e, exact.
inline BigReal ldexp(const BigReal& x, long e) {
  BigReal r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}
inline BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
inline BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
/// 2^e at the given precision.
inline BigReal pow2(long e, Precision p) { return ldexp(BigReal(1, p), e); }

// ---------------------------------------------------------------------------
// BigComplex

class BigComplex {
 public:
  explicit BigComplex(Precision p = Precision()) : re_(p), im_(p) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit BigComplex(BigReal re) : re_(std::move(re)), im_(re_.precision()) {}
  BigComplex(long re, Precision p) : re_(re, p), im_(p) {}
  BigComplex(const Rational& re, Precision p) : re_(re, p), im_(p) {}
  BigComplex(const GaussianRational& z, Precision p) : re_(z.re, p), im_(z.im, p) {}
  static BigComplex from_strings(const std::string& re, const std::string& im, Precision p) {
    return {BigReal::from_string(re, p), BigReal::from_string(im, p)};
  }
  static BigComplex i(Precision p) { return {BigReal(p), BigReal(1, p)}; }

  const BigReal& real() const noexcept { return re_; }
  const BigReal& imag() const noexcept { return im_; }
  BigReal& real() noexcept { return re_; }
  BigReal& imag() noexcept { return im_; }
  Precision precision() const { return max(re_.precision(), im_.precision()); }
  BigComplex rounded(Precision p) const { return {re_.rounded(p), im_.rounded(p)}; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex& operator+=(const BigComplex& o) { re_ += o.re_; im_ += o.im_; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }
  BigComplex& operator*=(const BigReal& o) { re_ *= o; im_ *= o; return *this; }
  BigComplex& operator/=(const BigReal& o) { re_ /= o; im_ /= o; return *this; }
  BigComplex& operator*=(long o) { re_ *= o; im_ *= o; return *this; }
  BigComplex& operator/=(long o) { re_ /= o; im_ /= o; return *this; }

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    if (b.is_zero()) throw domain_error("complex division by zero");
    if (b.im_.is_zero()) return {a.re_ / b.re_, a.im_ / b.re_};
    BigReal d = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
  }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, long b) { return a *= b; }
  friend BigComplex operator*(long b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, long b) { return a /= b; }
  friend BigComplex operator+(BigComplex a, const BigReal& b) { a.re_ += b; return a; }
  friend BigComplex operator-(BigComplex a, const BigReal& b) { a.re_ -= b; return a; }
  friend BigComplex operator+(BigComplex a, long b) { a.re_ += b; return a; }
  friend BigComplex operator-(BigComplex a, long b) { a.re_ -= b; return a; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
    os << z.re_;
    if (z.im_.sign() >= 0) os << '+';
    return os << z.im_ << 'i';
  }

 private:
  BigReal re_;
  BigReal im_;
};

inline BigReal abs(const BigComplex& z) { return hypot(z.real(), z.imag()); }
inline BigComplex conj(const BigComplex& z) { return {z.real(), -z.imag()}; }

/// Argument in (-pi, pi]; a signed zero imaginary part counts as +0.
inline BigReal arg(const BigComplex& z) {
  if (z.imag().is_zero()) {
    BigReal r(z.precision());
    if (z.real().sign() < 0) r = BigReal::pi(z.precision());
    return r;
  }
  return atan2(z.imag(), z.real());
}

inline BigComplex principal_log(const BigComplex& z) {
  if (z.is_zero()) throw domain_error("log of zero");
  return {log(abs(z)), arg(z)};
}
inline BigComplex principal_log(const BigComplex& z, Precision p) { return principal_log(z.rounded(p)); }

inline BigComplex exp(const BigComplex& z) {
  if (z.imag().is_zero()) return BigComplex(exp(z.real()));
  BigReal m = exp(z.real());
  return {m * cos(z.imag()), m * sin(z.imag())};
}

inline BigComplex sin(const BigComplex& z) {
  return {sin(z.real()) * cosh(z.imag()), cos(z.real()) * sinh(z.imag())};
}
inline BigComplex cos(const BigComplex& z) {
  return {cos(z.real()) * cosh(z.imag()), -(sin(z.real()) * sinh(z.imag()))};
}

/// base^exponent = exp(exponent * principal_log(base)), evaluated at `p`.
inline BigComplex principal_pow(const BigComplex& base, const BigComplex& exponent, Precision p) {
  if (base.is_zero()) {
    if (exponent.real().sign() <= 0) throw domain_error("zero base with nonpositive real exponent");
    return BigComplex(p);
  }
  // |exponent * log| sets how many bits the exponential loses.
  const BigComplex lb = principal_log(base.rounded(p.with_guard(16)));
  const BigComplex wide = exponent.rounded(p.with_guard(16)) * lb;
  const long loss = std::max(0L, std::max(abs(wide).exponent2(), 0L)) + 8;
  const Precision wp = p.with_guard(loss + 16);
  const BigComplex w = exponent.rounded(wp) * principal_log(base.rounded(wp));
  return exp(w).rounded(p);
}
inline BigComplex principal_pow(const BigComplex& base, const BigComplex& exponent) {
  return principal_pow(base, exponent, max(base.precision(), exponent.precision()));
}

/// z^n for integer n by repeated squaring.
inline BigComplex pow_int(const BigComplex& z, long n) {
  if (n < 0) return BigComplex(1, z.precision()) / pow_int(z, -n);
  BigComplex result(1, z.precision());
  BigComplex b = z;
  while (n > 0) {
    if (n & 1) result *= b;
    n >>= 1;
    if (n > 0) b *= b;
  }
  return result;
}

/// Relative distance |a-b| / max(|a|, |b|), or |a-b| when both vanish.
inline BigReal relative_error(const BigComplex& a, const BigComplex& b) {
  BigReal d = abs(a - b);
  BigReal m = max(abs(a), abs(b));
  return m.is_zero() ? d : d / m;
}

/// Correctly rounded fixed-point rendering of (re, im). Both parts share the
/// number of decimals that gives the larger-magnitude part `digits`
/// significant digits.
inline std::pair<std::string, std::string> round_to_digits(const BigComplex& z, int digits) {
  if (digits < 1) throw domain_error("round_to_digits needs digits >= 1");
  const BigReal m = max(abs(z.real()), abs(z.imag()));
  long decimals = digits - 1;
  if (!m.is_zero()) {
    mpfr_exp_t e10 = 0;
    char* s = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(digits), m.get(), MPFR_RNDN);
    mpfr_free_str(s);
    decimals = std::max(0L, static_cast<long>(digits - e10));
  }
  const auto fmt = [decimals](const BigReal& x) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", static_cast<int>(decimals), x.get());
    std::string out(buf);
    mpfr_free_str(buf);
    if (out[0] == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
  };
  return {fmt(z.real()), fmt(z.imag())};
}

/// "re+imi" rendering with round_to_digits.
inline std::string to_decimal_string(const BigComplex& z, int digits) {
  auto [re, im] = round_to_digits(z, digits);
  if (im[0] == '-') return re + im + "i";
  return re + "+" + im + "i";
}

}  // namespace hypergeo
