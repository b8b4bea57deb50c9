#pragma once

// Subcommands of the hypergeo executable: eval, expand, bench, selftest.
// Each cmd_* function writes to `out` and returns an exit code; errors are
// thrown and mapped to exit codes by dispatch().

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypergeo.hpp"

namespace hypergeo::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_parse = 2,
  exit_domain = 3,
  exit_annulus = 4,
  exit_consistency = 5,
};

struct CliRequest {
  std::string subcommand;
  std::string upper;  // "10/3,10/3"
  std::string lower;  // "7/2"
  std::string z = "0";
  long digits = 30;
  std::optional<long> terms;
  std::string method = "auto";
  std::string format = "text";
  std::string expansion_file;
  /// Comma-separated bench cases; unset means every case.
  std::optional<std::string> cases;
  bool grid = false;
  std::string xrange = "-3:3";
  std::string yrange = "-3:3";
  std::string step = "0.05";
  bool inject_corruption = false;
  std::optional<int> leading_significant_digits;
};

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(Rational::parse(piece, start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline HyperParams parse_params(const CliRequest& req) {
  if (req.upper.empty()) throw parse_error(0, "missing upper parameters (-p)");
  return HyperParams(parse_rational_list(req.upper), parse_rational_list(req.lower));
}

inline std::pair<Rational, Rational> parse_range(const std::string& text) {
  const std::size_t colon = text.find(':', 1);
  if (colon == std::string::npos) throw parse_error(0, "range must look like a:b, got '" + text + "'");
  Rational lo = Rational::parse(text.substr(0, colon));
  Rational hi = Rational::parse(text.substr(colon + 1), colon + 1);
  if (hi < lo) throw parse_error(colon, "range end lies below its start");
  return {lo, hi};
}

inline std::optional<Method> parse_method(const std::string& name) {
  if (name == "auto") return std::nullopt;
  if (name == "taylor") return Method::taylor;
  if (name == "binary_splitting") return Method::binary_splitting;
  if (name == "connection") return Method::connection;
  if (name == "euler_integral") return Method::euler_integral;
  throw parse_error(0, "unknown method '" + name + "'");
}

inline void check_format(const std::string& format) {
  if (format != "text" && format != "json" && format != "csv") throw parse_error(0, "unknown format '" + format + "'");
}

inline ConnectionExpansion load_expansion(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(0, "cannot open expansion file '" + path + "'");
  const int first = in.peek();
  if (first == '{') {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw parse_error(0, std::string("invalid JSON: ") + ex.what());
    }
    return expansion_from_json(j);
  }
  return read_csv(in);
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void render(std::ostream& out, const EvalResult& r, long digits, const std::string& format,
                   const PhaseTimes& times) {
  const auto [re, im] = round_to_digits(r.value, static_cast<int>(digits));
  const std::string err = r.err_estimate.to_string(3);
  if (format == "json") {
    nlohmann::json j{{"value", {{"re", re}, {"im", im}}},
                     {"method", to_string(r.method)},
                     {"terms_used", r.terms_used},
                     {"err_estimate", err},
                     {"digits", digits},
                     {"warnings", r.warnings},
                     {"seconds", {{"setup", times.setup}, {"summation", times.summation}}}};
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    out << "value_re,value_im,method,terms_used,err_estimate\n"
        << re << ',' << im << ',' << to_string(r.method) << ',' << r.terms_used << ',' << err << '\n';
  } else {
    out << "value        " << (im[0] == '-' ? re + im : re + "+" + im) << "i\n"
        << "method       " << to_string(r.method) << '\n'
        << "terms_used   " << r.terms_used << '\n'
        << "err_estimate " << err << '\n';
    if (times.setup > 0 || times.summation > 0)
      out << "seconds      setup " << times.setup << ", summation " << times.summation << '\n';
    for (const auto& w : r.warnings) out << "warning      " << w << '\n';
  }
}

/// 2F1 through the Euler integral, swapping the two upper parameters when
/// only the swapped order satisfies Re c > Re a > 0.
inline EvalResult euler_eval(const HyperParams& params, const BigComplex& z, long digits) {
  if (params.p() != 2) throw domain_error("the Euler integral is implemented for 2F1 only");
  const Rational& c = params.lower()[0];
  Rational a = params.upper()[0], b = params.upper()[1];
  if (!(a > Rational(0) && c > a)) std::swap(a, b);
  return euler_integral_2f1_adaptive(a, b, c, z, digits);
}

}  // namespace detail

inline int cmd_eval(const CliRequest& req, std::ostream& out) {
  check_format(req.format);
  if (req.digits < 1) throw parse_error(0, "digits must be positive");
  const Precision wp = Precision::from_digits(req.digits).with_guard(64);
  const GaussianRational zq = parse_complex(req.z);
  PhaseTimes times;
  EvalResult r;
  if (!req.expansion_file.empty()) {
    const auto t0 = std::chrono::steady_clock::now();
    const ConnectionExpansion exp = load_expansion(req.expansion_file);
    times.setup = detail::seconds_since(t0);
    const auto t1 = std::chrono::steady_clock::now();
    std::optional<std::size_t> terms;
    if (req.terms) terms = static_cast<std::size_t>(*req.terms);
    r = evaluate_at_infinity(exp, BigComplex(zq, max(wp, exp.prec)), terms);
    times.summation = detail::seconds_since(t1);
  } else {
    const HyperParams params = parse_params(req);
    const BigComplex z(zq, wp);
    const std::optional<Method> method = parse_method(req.method);
    const auto t0 = std::chrono::steady_clock::now();
    if (method == Method::euler_integral) {
      r = detail::euler_eval(params, z, req.digits);
    } else {
      EvaluateOptions options;
      options.method = method;
      options.terms = req.terms;
      options.expansion.leading_significant_digits = req.leading_significant_digits;
      options.timings = &times;
      r = evaluate(params, z, req.digits, options);
    }
    if (times.setup == 0) times.summation = detail::seconds_since(t0);
  }
  detail::render(out, r, req.digits, req.format, times);
  return exit_ok;
}

inline int cmd_expand(const CliRequest& req, std::ostream& out) {
  check_format(req.format);
  if (!req.terms) throw parse_error(0, "expand needs the truncation order (-n)");
  if (*req.terms < 0) throw parse_error(0, "terms must be >= 0");
  const HyperParams params = parse_params(req);
  const Precision prec = Precision::from_digits(req.digits);
  ExpansionOptions options;
  options.leading_significant_digits = req.leading_significant_digits;
  const ConnectionExpansion exp = expansion_at_infinity(params, static_cast<std::size_t>(*req.terms), prec, options);
  if (req.format == "json") {
    out << to_json(exp).dump(2) << '\n';
  } else if (req.format == "csv") {
    write_csv(out, exp);
  } else {
    out << params.to_string() << "  N = " << exp.N << "  digits = " << req.digits << '\n';
    for (std::size_t g = 0; g < exp.series.size(); ++g) {
      const LogSeries& s = exp.series[g];
      out << "group " << g << ": alpha = " << s.alpha() << ", logdeg = " << s.logdeg() << '\n';
      for (std::size_t i = 0; i <= s.order(); ++i)
        for (std::size_t j = 0; j < s.logdeg(); ++j)
          out << "  c[" << i << "][" << j << "] = " << to_decimal_string(s.coeff(i, j), static_cast<int>(req.digits))
              << '\n';
    }
  }
  return exit_ok;
}

struct BenchCase {
  std::string name;
  HyperParams params;
  std::string z;
};

inline std::vector<BenchCase> bench_cases() {
  const Rational r10_3(10, 3), r7_2(7, 2), r31_5(31, 5), r36_7(36, 7);
  const HyperParams e1({r10_3, r10_3}, {r7_2});
  const HyperParams e2({r7_2, r7_2}, {r31_5});
  const HyperParams e3({r7_2, r7_2, r7_2}, {r31_5, r36_7});
  return {{"example1", e1, "13+13i"},
          {"example2", e2, "1.3+1.8i"},
          {"example3@130+130i", e3, "130+130i"},
          {"example3@13+13i", e3, "13+13i"},
          {"example3@1.3+1.3i", e3, "1.3+1.3i"}};
}

/// Cases named by `list` ("example3" selects all of its z values).
inline std::vector<BenchCase> select_cases(const std::optional<std::string>& list) {
  const auto all = bench_cases();
  if (!list) return all;
  std::vector<BenchCase> out;
  std::size_t start = 0;
  while (start <= list->size()) {
    const std::size_t comma = list->find(',', start);
    const std::string name = list->substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!name.empty()) {
      bool found = false;
      for (const auto& c : all)
        if (c.name == name || c.name.rfind(name + "@", 0) == 0) {
          out.push_back(c);
          found = true;
        }
      if (!found) throw parse_error(start, "unknown bench case '" + name + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct GridPoint {
  Rational x, y;
  BigReal diff;
};

/// |r20 - r10| of the expansion at infinity over a rectangular grid; points
/// with |z| <= 1 are skipped.
inline std::vector<GridPoint> difference_grid(const HyperParams& params, std::pair<Rational, Rational> xr,
                                              std::pair<Rational, Rational> yr, const Rational& step, long digits) {
  if (!(step > Rational(0))) throw parse_error(0, "grid step must be positive");
  const Precision prec = Precision::from_digits(digits);
  const ConnectionExpansion exp = expansion_at_infinity(params, 20, prec);
  std::vector<GridPoint> out;
  for (Rational x = xr.first; x <= xr.second; x += step) {
    for (Rational y = yr.first; y <= yr.second; y += step) {
      if (x * x + y * y <= Rational(1)) continue;
      const BigComplex z(GaussianRational{x, y}, prec);
      const BigComplex r20 = sum_expansion(exp, z, 20).value;
      const BigComplex r10 = sum_expansion(exp, z, 10).value;
      out.push_back({x, y, abs(r20 - r10)});
    }
  }
  return out;
}

inline int cmd_bench(const CliRequest& req, std::ostream& out) {
  check_format(req.format);
  const auto cases = select_cases(req.cases);
  if (req.grid) {
    const HyperParams params = req.upper.empty() ? (cases.empty() ? bench_cases()[1].params : cases.front().params)
                                                 : parse_params(req);
    const auto grid = difference_grid(params, parse_range(req.xrange), parse_range(req.yrange),
                                      Rational::parse(req.step), req.digits);
    out << "x,y,diff\n";
    for (const auto& p : grid)
      out << p.x.to_double() << ',' << p.y.to_double() << ',' << p.diff.to_string(6) << '\n';
    return exit_ok;
  }
  std::vector<long> term_list{5, 10, 20, 40, 80};
  if (req.terms) term_list = {*req.terms};
  const bool csv = req.format != "text";
  if (csv)
    out << "case,terms,digits,seconds,value_re,value_im,err_estimate\n";
  else
    out << std::left << std::setw(20) << "case" << std::setw(7) << "terms" << std::setw(12) << "setup_s"
        << std::setw(12) << "sum_s" << "value\n";
  for (const auto& c : cases) {
    const Precision zp = Precision::from_digits(100);
    for (long n : term_list) {
      const long digits = n + 10;
      PhaseTimes times;
      EvaluateOptions options;
      options.terms = n;
      options.timings = &times;
      const auto t0 = std::chrono::steady_clock::now();
      const EvalResult r = evaluate(c.params, BigComplex(parse_complex(c.z), zp), digits, options);
      const double seconds = detail::seconds_since(t0);
      const auto [re, im] = round_to_digits(r.value, static_cast<int>(digits));
      if (csv)
        out << c.name << ',' << n << ',' << digits << ',' << seconds << ',' << re << ',' << im << ','
            << r.err_estimate.to_string(3) << '\n';
      else
        out << std::left << std::setw(20) << c.name << std::setw(7) << n << std::setw(12) << times.setup
            << std::setw(12) << times.summation << (im[0] == '-' ? re + im : re + "+" + im) << "i\n";
    }
  }
  return exit_ok;
}

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;
};

namespace detail {

inline SuiteResult gamma_suite(long digits) {
  const Precision p = Precision::from_digits(digits);
  const GammaContext ctx(p);
  const BigReal tol = pow2(-p.bits() + 8, p);
  BigReal worst(p);
  for (const char* s : {"0.3+0.7i", "2.5-1.2i", "-3.7+0.4i", "10/3", "17.2+5i"}) {
    const BigComplex z(parse_complex(s), p);
    const BigComplex g1 = gamma(z + 1, ctx);
    worst = max(worst, relative_error(g1, z * gamma(z, ctx)));
    const BigComplex refl = gamma(z, ctx) * gamma(BigComplex(1, p) - z, ctx) *
                            sin(z * BigReal::pi(p)) / BigReal::pi(p);
    worst = max(worst, relative_error(refl, BigComplex(1, p)));
  }
  return {"gamma", worst <= tol, "max relative defect " + worst.to_string(3)};
}

inline SuiteResult pole_suite(long digits) {
  const Precision p = Precision::from_digits(digits);
  std::ostringstream os;
  for (const auto& c : {bench_cases()[0], bench_cases()[2]}) {
    const ParamGrouping g = group_parameters(c.params);
    const LeadingCoefficients lc = degenerate_leading_coefficients_report(g, 0, p);
    os << c.params.to_string() << " residual " << lc.max_pole_residual.to_string(3) << "; ";
  }
  return {"pole-cancellation", true, os.str()};
}

inline SuiteResult residual_suite(long digits, bool corrupt) {
  const Precision p = Precision::from_digits(digits);
  const BenchCase c = bench_cases()[0];
  const BigComplex z(parse_complex("13+13i"), p);
  const ODEPolys ode = build_ode_polys(c.params);
  BigReal prev = BigReal::infinity(p);
  bool ok = true;
  std::ostringstream os;
  for (std::size_t n : {10, 20, 40}) {
    ConnectionExpansion exp = expansion_at_infinity(c.params, n, p);
    LogSeries s = exp.series[0];
    if (corrupt) s.coeff(5, 0) *= BigComplex::from_strings("1.001", "0", s.precision());
    const BigReal scale = abs(evaluate_log_series(s, z));
    const BigReal rel = ode_residual(ode, s, z, p) / scale;
    os << "N=" << n << ": " << rel.to_string(3) << "; ";
    if (!(rel < prev)) ok = false;
    prev = rel;
  }
  // a correct order-40 truncation leaves a residual near |z|^-40
  if (!(prev < BigReal::from_string("1e-38", p))) ok = false;
  return {"ode-residual", ok, os.str()};
}

inline SuiteResult oracle_suite() {
  const long digits = 20;
  BigReal worst(Precision::from_digits(digits));
  for (const auto& c : {bench_cases()[0], bench_cases()[1]}) {
    const Precision p = Precision::from_digits(digits + 10);
    const BigComplex z(parse_complex(c.z), p);
    const EvalResult a = evaluate(c.params, z, digits + 10);
    const EvalResult b = euler_eval(c.params, z, digits);
    worst = max(worst, relative_error(a.value, b.value));
  }
  return {"euler-oracle", worst <= BigReal::from_string("1e-18", worst.precision()),
          "max relative difference " + worst.to_string(3)};
}

/// Series rows are recomputed with the row's own terms and precision;
/// other rows are checked against a converged value. Only min(digits,
/// published, row precision) significant digits take part, widened by the
/// cancellation seen in the sum.
inline SuiteResult reference_suite(long digits) {
  bool ok = true;
  std::ostringstream os;
  int checked = 0;
  for (const auto& e : reference_table()) {
    if (e.source.rfind("trapezoid", 0) == 0) continue;
    const long run_digits = e.terms ? e.precision_digits : std::max(60L, e.precision_digits + 10);
    const Precision p = Precision::from_digits(run_digits + 10);
    EvaluateOptions options;
    options.terms = e.terms;
    options.expansion.leading_significant_digits = e.leading_significant_digits;
    const EvalResult r = evaluate(e.params, e.z_value(p), run_digits, options);
    const BigComplex published = e.published_value();
    // the row's own arithmetic carried precision_digits and lost lost_bits to cancellation
    const long sig = std::min<long>({digits, e.published_digits, e.precision_digits, e.reliable_digits.value_or(digits)});
    const BigReal magnitude = abs(published);
    BigReal tol = magnitude * BigReal::from_string("1e-" + std::to_string(sig - 2), p) * pow2(r.lost_bits, p);
    tol = max(tol, published_ulp(e, p));
    const BigReal diff = abs(r.value - published);
    ++checked;
    if (diff > tol) {
      ok = false;
      os << e.case_name << '/' << e.source << " @ " << e.z << " off by " << diff.to_string(3) << " (tol "
         << tol.to_string(3) << "); ";
    }
  }
  if (ok) os << checked << " published rows agree";
  return {"reference-table", ok, os.str()};
}

}  // namespace detail

inline std::vector<SuiteResult> run_selftest(long digits, bool inject_corruption) {
  std::vector<SuiteResult> results;
  const auto guarded = [&](const std::string& name, const std::function<SuiteResult()>& suite) {
    try {
      results.push_back(suite());
    } catch (const std::exception& ex) {
      results.push_back({name, false, ex.what()});
    }
  };
  guarded("gamma", [&] { return detail::gamma_suite(digits); });
  guarded("pole-cancellation", [&] { return detail::pole_suite(digits); });
  guarded("ode-residual", [&] { return detail::residual_suite(std::max(digits, 60L), inject_corruption); });
  guarded("euler-oracle", [] { return detail::oracle_suite(); });
  guarded("reference-table", [&] { return detail::reference_suite(digits); });
  return results;
}

inline int cmd_selftest(const CliRequest& req, std::ostream& out) {
  const auto results = run_selftest(req.digits, req.inject_corruption);
  bool ok = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(18) << r.name << ' ' << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? exit_ok : exit_failure;
}

inline int exit_code_for(const std::exception_ptr& ep, std::ostream& err) {
  try {
    std::rethrow_exception(ep);
  } catch (const parse_error& ex) {
    err << "parse error: " << ex.what() << '\n';
    return exit_parse;
  } catch (const annulus_error& ex) {
    err << "annulus error: " << ex.what() << '\n';
    return exit_annulus;
  } catch (const domain_error& ex) {
    err << "domain error: " << ex.what() << '\n';
    return exit_domain;
  } catch (const parameter_error& ex) {
    err << "parameter error: " << ex.what() << '\n';
    return exit_domain;
  } catch (const degeneracy_error& ex) {
    err << "degeneracy error: " << ex.what() << '\n';
    return exit_domain;
  } catch (const consistency_error& ex) {
    err << "internal consistency error: " << ex.what() << '\n';
    return exit_consistency;
  } catch (const resonance_error& ex) {
    err << "internal consistency error: " << ex.what() << '\n';
    return exit_consistency;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_failure;
  }
}

inline int dispatch(const CliRequest& req, std::ostream& out, std::ostream& err) {
  try {
    if (req.subcommand == "eval") return cmd_eval(req, out);
    if (req.subcommand == "expand") return cmd_expand(req, out);
    if (req.subcommand == "bench") return cmd_bench(req, out);
    if (req.subcommand == "selftest") return cmd_selftest(req, out);
    throw parse_error(0, "unknown subcommand '" + req.subcommand + "'");
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
}

}  // namespace hypergeo::cli
