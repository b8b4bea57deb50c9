#pragma once

// JSON and CSV dumps of a ConnectionExpansion. Coefficients are written
// with enough digits to round-trip at the expansion's precision.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypergeo/connection.hpp"

namespace hypergeo {

/// Decimal rendering that parses back to the same value at x's precision.
inline std::string round_trip_string(const BigReal& x) {
  if (x.is_zero()) return "0";
  if (!x.is_finite()) throw domain_error("cannot serialize a non-finite value");
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, 0, x.get(), MPFR_RNDN);
  std::string m(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  return sign + "0." + m + "e" + std::to_string(e);
}

namespace detail {

inline std::vector<std::string> rationals_to_strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.to_string());
  return out;
}

inline std::vector<Rational> strings_to_rationals(const std::vector<std::string>& v) {
  std::vector<Rational> out;
  for (const auto& s : v) out.push_back(Rational::parse(s));
  return out;
}

inline std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const ConnectionExpansion& e) {
  nlohmann::json j;
  j["params"] = {{"upper", detail::rationals_to_strings(e.params.upper())},
                 {"lower", detail::rationals_to_strings(e.params.lower())}};
  j["N"] = e.N;
  j["precision_bits"] = e.prec.bits();
  j["series"] = nlohmann::json::array();
  for (const auto& s : e.series) {
    nlohmann::json js;
    js["alpha"] = s.alpha().to_string();
    js["logdeg"] = s.logdeg();
    js["coeffs"] = nlohmann::json::array();
    for (std::size_t i = 0; i <= s.order(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t k = 0; k < s.logdeg(); ++k)
        row.push_back({round_trip_string(s.coeff(i, k).real()), round_trip_string(s.coeff(i, k).imag())});
      js["coeffs"].push_back(std::move(row));
    }
    j["series"].push_back(std::move(js));
  }
  return j;
}

inline ConnectionExpansion expansion_from_json(const nlohmann::json& j) {
  try {
    HyperParams params(detail::strings_to_rationals(j.at("params").at("upper").get<std::vector<std::string>>()),
                       detail::strings_to_rationals(j.at("params").at("lower").get<std::vector<std::string>>()));
    const Precision prec(j.at("precision_bits").get<long>());
    const auto N = j.at("N").get<std::size_t>();
    std::vector<LogSeries> series;
    for (const auto& js : j.at("series")) {
      const auto q = js.at("logdeg").get<std::size_t>();
      const Precision sp = prec.with_guard(10 * static_cast<long>(q));
      std::vector<std::vector<BigComplex>> c;
      for (const auto& row : js.at("coeffs")) {
        std::vector<BigComplex> r;
        for (const auto& cell : row)
          r.push_back(BigComplex::from_strings(cell.at(0).get<std::string>(), cell.at(1).get<std::string>(), sp));
        c.push_back(std::move(r));
      }
      series.emplace_back(Rational::parse(js.at("alpha").get<std::string>()), q, std::move(c));
    }
    return {std::move(params), std::move(series), N, prec};
  } catch (const nlohmann::json::exception& ex) {
    throw parse_error(0, std::string("malformed expansion JSON: ") + ex.what());
  }
}

/// Rows: group,alpha,logdeg,i,j,re,im; '#' lines carry the header fields.
inline void write_csv(std::ostream& os, const ConnectionExpansion& e) {
  os << "# params," << e.params.to_string() << '\n';
  os << "# upper";
  for (const auto& a : e.params.upper()) os << ',' << a;
  os << "\n# lower";
  for (const auto& b : e.params.lower()) os << ',' << b;
  os << "\n# N," << e.N << "\n# precision_bits," << e.prec.bits() << '\n';
  os << "group,alpha,logdeg,i,j,re,im\n";
  for (std::size_t g = 0; g < e.series.size(); ++g) {
    const auto& s = e.series[g];
    for (std::size_t i = 0; i <= s.order(); ++i)
      for (std::size_t k = 0; k < s.logdeg(); ++k)
        os << g << ',' << s.alpha() << ',' << s.logdeg() << ',' << i << ',' << k << ','
           << round_trip_string(s.coeff(i, k).real()) << ',' << round_trip_string(s.coeff(i, k).imag()) << '\n';
  }
}

inline ConnectionExpansion read_csv(std::istream& is) {
  std::vector<Rational> upper, lower;
  std::size_t N = 0;
  long bits = 0;
  struct Cell {
    std::size_t g, q, i, j;
    Rational alpha;
    std::string re, im;
  };
  std::vector<Cell> cells;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = detail::split_line(line, ',');
    try {
      if (line[0] == '#') {
        const std::string key = f[0].substr(2);
        if (key == "upper") upper = detail::strings_to_rationals({f.begin() + 1, f.end()});
        else if (key == "lower") lower = detail::strings_to_rationals({f.begin() + 1, f.end()});
        else if (key == "N") N = std::stoul(f.at(1));
        else if (key == "precision_bits") bits = std::stol(f.at(1));
        continue;
      }
      if (f.at(0) == "group") continue;
      if (f.size() != 7) throw parse_error(lineno, "expected 7 CSV fields");
      cells.push_back({std::stoul(f[0]), std::stoul(f[2]), std::stoul(f[3]), std::stoul(f[4]), Rational::parse(f[1]),
                       f[5], f[6]});
    } catch (const std::logic_error&) {
      throw parse_error(lineno, "malformed expansion CSV line " + std::to_string(lineno));
    }
  }
  if (bits == 0) throw parse_error(0, "expansion CSV lacks precision_bits");
  const Precision prec(bits);
  std::vector<LogSeries> series;
  std::size_t pos = 0;
  while (pos < cells.size()) {
    const Cell& head = cells[pos];
    const Precision sp = prec.with_guard(10 * static_cast<long>(head.q));
    std::vector<std::vector<BigComplex>> c;
    for (; pos < cells.size() && cells[pos].g == head.g; ++pos) {
      const Cell& cell = cells[pos];
      if (cell.i >= c.size()) c.resize(cell.i + 1, std::vector<BigComplex>(head.q, BigComplex(sp)));
      c[cell.i].at(cell.j) = BigComplex::from_strings(cell.re, cell.im, sp);
    }
    series.emplace_back(head.alpha, head.q, std::move(c));
  }
  return {HyperParams(std::move(upper), std::move(lower)), std::move(series), N, prec};
}

}  // namespace hypergeo
