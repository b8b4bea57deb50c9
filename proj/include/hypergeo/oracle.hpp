#pragma once

// Independent checks: Euler-integral quadrature for 2F1 and a table of
// published reference values.

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hypergeo/numeric.hpp"
#include "hypergeo/series.hpp"
#include "hypergeo/special.hpp"

namespace hypergeo {

enum class QuadratureRule { trapezoid, double_exponential };

struct QuadratureSpec {
  QuadratureRule rule = QuadratureRule::double_exponential;
  long samples = 64;
  Precision prec;

  void validate() const {
    if (samples < 8) throw domain_error("quadrature needs at least 8 samples");
  }
};

namespace detail {

struct EulerIntegrand {
  BigComplex a_minus_1, c_minus_a_minus_1, minus_b, z;
  Precision wp;

  // t^{a-1} (1-t)^{c-a-1} (1-tz)^{-b}, given t and 1-t separately
  BigComplex operator()(const BigReal& t, const BigReal& omt) const {
    const BigComplex lt(log(t)), lomt(log(omt));
    const BigComplex base = BigComplex(1, wp) - z * t;
    return exp(a_minus_1 * lt + c_minus_a_minus_1 * lomt) * principal_pow(base, minus_b, wp);
  }
};

inline BigComplex euler_prefactor(const Rational& a, const Rational& c, const GammaContext& ctx) {
  const Precision p = ctx.precision();
  return gamma(BigComplex(c, p), ctx) * rgamma(BigComplex(a, p), ctx) * rgamma(BigComplex(c - a, p), ctx);
}

inline void check_euler_domain(const Rational& a, const Rational& c, const BigComplex& z) {
  if (!(a > Rational(0)) || !(c > a))
    throw domain_error("Euler integral needs Re c > Re a > 0");
  if (z.imag().is_zero() && z.real() >= 1) throw domain_error("Euler integral needs z off the cut [1, inf)");
}

/// Sum over x = k h, k = -K..K (step `stride` in k, starting at `first`).
inline BigComplex tanh_sinh_sum(const EulerIntegrand& f, const BigReal& h, long K, long first, long stride) {
  const Precision wp = f.wp;
  const BigReal half_pi = BigReal::pi(wp) / 2;
  BigComplex s(wp);
  for (long k = first; k <= K; k += stride) {
    for (int sgn : {1, -1}) {
      if (k == 0 && sgn < 0) continue;
      const BigReal x = h * (sgn * k);
      const BigReal u = half_pi * sinh(x);
      const BigReal e = exp(u * 2);
      const BigReal t = e / (e + 1);
      const BigReal omt = BigReal(1, wp) / (e + 1);
      if (t.is_zero() || omt.is_zero()) continue;
      const BigReal ch = cosh(u);
      const BigReal w = half_pi * cosh(x) / (ch * ch * 2);
      s += f(t, omt) * w;
    }
  }
  return s * h;
}

inline long tanh_sinh_extent(const Rational& a, const Rational& c, Precision wp, const BigReal& h) {
  const double m = std::min((a).to_double(), (c - a).to_double());
  const double need = (static_cast<double>(wp.bits()) * std::log(2.0) + 40.0) / (M_PI * std::max(m, 1e-3));
  const double xmax = std::asinh(need);
  return static_cast<long>(std::ceil(xmax / h.to_double()));
}

}  // namespace detail

/// Gamma(c)/(Gamma(a)Gamma(c-a)) int_0^1 t^{a-1}(1-t)^{c-a-1}(1-tz)^{-b} dt = 2F1(a,b;c;z).
/// Double-exponential uses `samples` nodes per unit length of the tanh-sinh variable.
inline EvalResult euler_integral_2f1(const Rational& a, const Rational& b, const Rational& c, const BigComplex& z,
                                     const QuadratureSpec& spec) {
  spec.validate();
  detail::check_euler_domain(a, c, z);
  const Precision wp = spec.prec.with_guard(32);
  const GammaContext ctx(wp);
  const detail::EulerIntegrand f{BigComplex(a - Rational(1), wp), BigComplex(c - a - Rational(1), wp),
                                 BigComplex(-b, wp), z.rounded(wp), wp};
  BigComplex integral(wp);
  long used = 0;
  if (spec.rule == QuadratureRule::trapezoid) {
    const BigReal h = BigReal(1, wp) / BigReal(spec.samples, wp);
    for (long k = 1; k < spec.samples; ++k) {
      const BigReal t = BigReal(k, wp) * h;
      integral += f(t, BigReal(spec.samples - k, wp) * h);
    }
    integral = integral * h;
    used = spec.samples - 1;
  } else {
    const BigReal h = BigReal(1, wp) / BigReal(spec.samples, wp);
    const long K = detail::tanh_sinh_extent(a, c, wp, h);
    integral = detail::tanh_sinh_sum(f, h, K, 0, 1);
    used = 2 * K + 1;
  }
  EvalResult r{(integral * detail::euler_prefactor(a, c, ctx)).rounded(spec.prec), BigReal(spec.prec), used,
               Method::euler_integral, {}, 0};
  r.err_estimate = BigReal::infinity(spec.prec);
  return r;
}

/// Double-exponential quadrature refined by halving the step until two
/// successive levels agree to `digits`.
inline EvalResult euler_integral_2f1_adaptive(const Rational& a, const Rational& b, const Rational& c,
                                              const BigComplex& z, long digits, int max_levels = 12) {
  detail::check_euler_domain(a, c, z);
  const Precision prec = Precision::from_digits(digits);
  const Precision wp = prec.with_guard(32);
  const GammaContext ctx(wp);
  const detail::EulerIntegrand f{BigComplex(a - Rational(1), wp), BigComplex(c - a - Rational(1), wp),
                                 BigComplex(-b, wp), z.rounded(wp), wp};
  BigReal h(1, wp);
  long K = detail::tanh_sinh_extent(a, c, wp, h);
  BigComplex sum = detail::tanh_sinh_sum(f, h, K, 0, 1) * BigReal(1, wp);
  BigComplex integral = sum;  // sum already includes the factor h = 1
  const BigReal tol = BigReal::from_string("1e-" + std::to_string(digits + 2), wp);
  long nodes = 2 * K + 1;
  for (int level = 1; level <= max_levels; ++level) {
    h = h / 2;
    K *= 2;
    // new nodes are the odd multiples of the halved step
    const BigComplex odd = detail::tanh_sinh_sum(f, h, K, 1, 2);
    const BigComplex next = integral / 2 + odd;
    nodes += K;
    const BigReal diff = abs(next - integral);
    integral = next;
    if (level >= 3 && diff <= tol * abs(integral)) {
      const BigComplex pre = detail::euler_prefactor(a, c, ctx);
      return {(integral * pre).rounded(prec), (diff * abs(pre)).rounded(prec), nodes, Method::euler_integral, {}, 0};
    }
  }
  throw consistency_error("double-exponential quadrature did not converge");
}

struct ReferenceEntry {
  std::string case_name;  // "example1", "example2", "example3"
  HyperParams params;
  std::string z;
  std::string value_re;
  std::string value_im;
  std::string source;  // e.g. "series/terms=80", "mathematica/precision=50"
  /// Significant digits of the longer published component.
  int published_digits = 0;
  /// Truncation order and decimal precision of the run that produced the row.
  std::optional<long> terms;
  long precision_digits = 0;
  /// Leading coefficients were rounded to this many significant digits.
  std::optional<int> leading_significant_digits;
  /// Digits of the row that its own run could deliver, when fewer than published.
  std::optional<int> reliable_digits;

  BigComplex z_value(Precision p) const { return BigComplex(parse_complex(z), p); }
  BigComplex value(Precision p) const { return BigComplex::from_strings(value_re, value_im, p); }
  /// Value parsed at the precision of its published digits.
  BigComplex published_value() const { return value(Precision::from_digits(published_digits + 2)); }
};

namespace detail {

inline int significant_digits(const std::string& s) {
  int n = 0;
  bool leading = true;
  for (char ch : s) {
    if (ch == 'e' || ch == 'E') break;
    if (ch < '0' || ch > '9') continue;
    if (leading && ch == '0') continue;
    leading = false;
    ++n;
  }
  return n;
}

inline int decimal_places(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return 0;
  std::size_t end = s.find_first_of("eE", dot);
  if (end == std::string::npos) end = s.size();
  int places = static_cast<int>(end - dot - 1);
  if (end < s.size()) places -= std::stoi(s.substr(end + 1));
  return places;
}

inline ReferenceEntry make_entry(std::string case_name, const HyperParams& params, std::string z, std::string re,
                                 std::string im, std::string source, std::optional<long> terms, long precision_digits,
                                 std::optional<int> rounded_leading = std::nullopt) {
  ReferenceEntry e{std::move(case_name), params, std::move(z), std::move(re), std::move(im), std::move(source),
                   0, terms, precision_digits, rounded_leading};
  e.published_digits = std::max(significant_digits(e.value_re), significant_digits(e.value_im));
  return e;
}

}  // namespace detail

/// One unit in the last published decimal place of the coarser component.
inline BigReal published_ulp(const ReferenceEntry& e, Precision p) {
  const int places = std::min(detail::decimal_places(e.value_re), detail::decimal_places(e.value_im));
  return BigReal::from_string("1e-" + std::to_string(places), p);
}

inline const std::vector<ReferenceEntry>& reference_table() {
  static const std::vector<ReferenceEntry> table = [] {
    using detail::make_entry;
    const Rational r10_3(10, 3), r7_2(7, 2), r31_5(31, 5), r36_7(36, 7);
    const HyperParams e1({r10_3, r10_3}, {r7_2});
    const HyperParams e2({r7_2, r7_2}, {r31_5});
    const HyperParams e3({r7_2, r7_2, r7_2}, {r31_5, r36_7});
    std::vector<ReferenceEntry> t;

    const auto series1 = [&](long n, const char* re, const char* im) {
      t.push_back(make_entry("example1", e1, "13+13i", re, im, "series/terms=" + std::to_string(n), n, n + 10));
    };
    series1(5, "0.00004646545068423618485", "0.00009888637683654298440");
    series1(10, "0.00004646537447334307802263261624", "0.00009888640350652418659794640828");
    series1(20, "0.000046465374473393490391242220236585714989", "0.000098886403506421825123991664023061171848");
    series1(40, "0.0000464653744733934903912421386572707301458850337603660133374",
            "0.0000988864035064218251239916232587199904578128942387359317473");
    series1(80, "0.0000464653744733934903912421386572707301458850337603824784541",
            "0.0000988864035064218251239916232587199904578128942387442282741");
    t.push_back(make_entry("example1", e1, "13+13i", "0.0000464654", "0.0000988864", "mathematica/precision=10",
                           std::nullopt, 10));
    t.push_back(make_entry("example1", e1, "13+13i", "0.00004646537447339349039124214",
                           "0.00009888640350642182512399162", "mathematica/precision=25", std::nullopt, 25));
    t.push_back(make_entry("example1", e1, "13+13i", "0.000046465374473393490391242138657270730145885033760382",
                           "0.000098886403506421825123991623258719990457812894238744", "mathematica/precision=50",
                           std::nullopt, 50));

    const auto series2 = [&](long n, const char* re, const char* im) {
      t.push_back(make_entry("example2", e2, "1.3+1.8i", re, im, "series/terms=" + std::to_string(n), n, n + 10));
    };
    series2(5, "-0.3879786816479458591", "-0.2767543538460170368");
    series2(10, "-0.3770255218705445491", "-0.2823972087891714305");
    series2(20, "-0.3769544095052939938707251207", "-0.2822863971357611098403957229");
    series2(40, "-0.37695442761307946514230306490910664462", "-0.28228642179392542114229797454872838012");
    series2(80, "-0.376954427613081226577499361640669979083664967552834206588",
            "-0.282286421793927502415734929810558926710399341428368162640");
    const auto trap2 = [&](long n, const char* re, const char* im) {
      t.push_back(make_entry("example2", e2, "1.3+1.8i", re, im, "trapezoid/samples=" + std::to_string(n),
                             std::nullopt, 19));
    };
    trap2(2000, "-0.3769544276724114820", "-0.2822864217813210745");
    trap2(4000, "-0.3769544276222648211", "-0.2822864217919839264");
    trap2(8000, "-0.3769544276144992000", "-0.2822864217936281214");
    t.push_back(make_entry("example2", e2, "1.3+1.8i", "-0.376954", "-0.282286", "mathematica/precision=10",
                           std::nullopt, 10));
    t.push_back(make_entry("example2", e2, "1.3+1.8i", "-0.3769544276130812265774994", "-0.2822864217939275024157349",
                           "mathematica/precision=25", std::nullopt, 25));
    t.push_back(make_entry("example2", e2, "1.3+1.8i", "-0.37695442761308122657749936166305176029442543627034",
                           "-0.28228642179392750241573492983143989797240125238853", "mathematica/precision=50",
                           std::nullopt, 50));

    const auto ex3 = [&](const char* z, const char* re, const char* im, const char* mre, const char* mim,
                         std::optional<int> reliable = std::nullopt) {
      t.push_back(make_entry("example3", e3, z, re, im, "series/terms=20", 20, 19, 6));
      t.back().reliable_digits = reliable;
      t.push_back(make_entry("example3", e3, z, mre, mim, "mathematica/precision=10", std::nullopt, 10));
    };
    ex3("130+130i", "0.00001345106300346753915", "0.000006796099418228839164", "0.0000134511", "6.79615e-6");
    ex3("13+13i", "0.007350815068974895610", "-0.006282360701607166085", "0.00735089", "-0.00628229");
    // a 19-digit run of the order-20 recurrence at |z| = 1.84 keeps about 12 digits
    ex3("1.3+1.3i", "-1.097992622097576377", "0.6364759787999937697", "-1.09725", "0.636973", 12);
    return t;
  }();
  return table;
}

inline std::optional<ReferenceEntry> find_reference(const std::string& case_name, const std::string& z,
                                                    const std::string& source) {
  for (const auto& e : reference_table())
    if (e.case_name == case_name && e.z == z && e.source == source) return e;
  return std::nullopt;
}

/// Tab-separated export: params, z, value_re, value_im, source, digits.
inline void write_reference_table(std::ostream& os) {
  os << "params\tz\tvalue_re\tvalue_im\tsource\tdigits\n";
  for (const auto& e : reference_table())
    os << e.params.to_string() << '\t' << e.z << '\t' << e.value_re << '\t' << e.value_im << '\t' << e.case_name
       << '/' << e.source << '\t' << e.published_digits << '\n';
}

}  // namespace hypergeo
