#pragma once

// Expansion of pFq-1 at z = infinity and the top-level evaluator.
//
// Upper parameters are grouped by equality after collapsing integer
// differences. A singleton group's leading coefficient is the generic
// connection coefficient
//   C_i = prod_j Gamma(beta_j)/Gamma(beta_j - alpha_i) prod_{j!=i} Gamma(alpha_j - alpha_i)/Gamma(alpha_j).
// A group of q equal parameters is perturbed collinearly,
// alpha_i = alpha + o_i eps with o_i = 0..q-1; each C_i(eps) is a Laurent
// jet with poles up to eps^{-(q-1)}, and the eps^0 part of
// sum_i C_i(eps) exp(-o_i eps log(-z)) gives c^0_j as the coefficient of
// log(-z)^j. Higher layers follow from the recurrence in frobenius.hpp.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hypergeo/frobenius.hpp"
#include "hypergeo/jets.hpp"
#include "hypergeo/numeric.hpp"
#include "hypergeo/series.hpp"
#include "hypergeo/special.hpp"

namespace hypergeo {

struct ParamGroup {
  Rational alpha;
  std::vector<std::size_t> members;  // indices into the upper parameters
  std::size_t multiplicity() const { return members.size(); }
};

/// Replay `shift` contiguity raises on upper parameter `index` (0-based).
struct RaiseStep {
  std::size_t index;
  long shift;
  friend bool operator==(const RaiseStep&, const RaiseStep&) = default;
};

struct ParamGrouping {
  std::vector<ParamGroup> groups;
  std::vector<RaiseStep> plan;
  /// Parameters after collapsing integer differences to the group base.
  HyperParams normalized;
};

/// Groups upper parameters whose differences are integers; members above
/// the smallest value are collapsed onto it and recorded in the raise plan.
inline ParamGrouping group_parameters(const HyperParams& params) {
  const auto& up = params.upper();
  std::vector<bool> used(up.size(), false);
  std::vector<ParamGroup> groups;
  std::vector<RaiseStep> plan;
  std::vector<Rational> normalized = up;
  for (std::size_t i = 0; i < up.size(); ++i) {
    if (used[i]) continue;
    ParamGroup g{up[i], {}};
    for (std::size_t j = i; j < up.size(); ++j) {
      if (!used[j] && (up[j] - up[i]).is_integer()) {
        used[j] = true;
        g.members.push_back(j);
        if (up[j] < g.alpha) g.alpha = up[j];
      }
    }
    for (std::size_t j : g.members) {
      const Rational d = up[j] - g.alpha;
      if (d.is_zero()) continue;
      const long shift = d.num().get_si();
      for (long t = 0; t < shift; ++t)
        if ((g.alpha + Rational(t)).is_zero())
          throw unsupported_degeneracy_error(
              "contiguity raise of parameter " + std::to_string(j + 1) + " passes through zero; "
              "the reduction of integer-difference degeneracies to equal parameters is only conjectured "
              "to cover all cases and does not apply here");
      plan.push_back({j, shift});
      normalized[j] = g.alpha;
    }
    groups.push_back(std::move(g));
  }
  return {std::move(groups), std::move(plan), HyperParams(std::move(normalized), params.lower())};
}

namespace detail {

inline void require_generic(const HyperParams& params) {
  const auto& up = params.upper();
  for (std::size_t i = 0; i < up.size(); ++i)
    for (std::size_t j = i + 1; j < up.size(); ++j)
      if ((up[i] - up[j]).is_integer())
        throw degeneracy_error("upper parameters " + up[i].to_string() + " and " + up[j].to_string() +
                               " differ by an integer; use the degenerate expansion");
}

/// C_i with every other upper parameter held at its given value.
inline BigComplex connection_coefficient(const HyperParams& params, std::size_t i, const GammaContext& ctx) {
  const Precision p = ctx.precision();
  const auto& up = params.upper();
  BigComplex c(1, p);
  for (const auto& b : params.lower())
    c = c * gamma(BigComplex(b, p), ctx) * rgamma(BigComplex(b - up[i], p), ctx);
  for (std::size_t j = 0; j < up.size(); ++j) {
    if (j == i) continue;
    c = c * gamma(BigComplex(up[j] - up[i], p), ctx) * rgamma(BigComplex(up[j], p), ctx);
  }
  return c;
}

inline BigComplex round_significant(const BigComplex& x, int digits) {
  const auto part = [&](const BigReal& r) {
    if (r.is_zero()) return r;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, r.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return BigReal::from_string(s, r.precision());
  };
  return {part(x.real()), part(x.imag())};
}

}  // namespace detail

/// Generic connection coefficients C_1..C_p.
inline std::vector<BigComplex> generic_coefficients(const HyperParams& params, Precision prec) {
  detail::require_generic(params);
  const GammaContext ctx(prec.with_guard(16));
  std::vector<BigComplex> out;
  for (std::size_t i = 0; i < params.p(); ++i) out.push_back(detail::connection_coefficient(params, i, ctx).rounded(prec));
  return out;
}

struct LeadingCoefficients {
  std::vector<BigComplex> c0;  // c^0_j, j = 0..q-1
  /// Largest |eps^{-m} log^j| coefficient of the within-group sum (m >= 1),
  /// and the largest magnitude among the terms that were summed into it.
  BigReal max_pole_residual;
  BigReal pole_scale;
};

/// Leading coefficients c^0_j of group g of `grouping`, plus the residual of
/// the eps-pole cancellation.
inline LeadingCoefficients degenerate_leading_coefficients_report(const ParamGrouping& grouping, std::size_t g,
                                                                   Precision prec) {
  const ParamGroup& group = grouping.groups.at(g);
  const HyperParams& params = grouping.normalized;
  const std::size_t q = group.multiplicity();
  if (q == 1) {
    const GammaContext ctx(prec.with_guard(16));
    return {{detail::connection_coefficient(params, group.members[0], ctx).rounded(prec)}, BigReal(prec), BigReal(prec)};
  }
  const std::size_t order = q + 1;
  const Precision wp = prec.with_guard(32 + 10 * static_cast<long>(order));
  const GammaContext ctx(wp);
  const Rational& alpha = group.alpha;
  const auto& up = params.upper();

  std::vector<bool> in_group(up.size(), false);
  for (std::size_t m : group.members) in_group[m] = true;

  std::vector<LaurentJet> C;
  for (std::size_t a = 0; a < q; ++a) {
    const long oi = static_cast<long>(a);
    const std::size_t i = group.members[a];
    (void)i;
    LaurentJet c = LaurentJet::constant(BigComplex(1, wp), order);
    for (const auto& b : params.lower()) {
      c = c * rgamma_jet(BigComplex(b - alpha, wp), Rational(-oi), order, ctx);
      c = c * gamma(BigComplex(b, wp), ctx);
    }
    for (std::size_t bidx = 0; bidx < q; ++bidx) {
      if (bidx == a) continue;
      const long oj = static_cast<long>(bidx);
      c = c * gamma_jet(BigComplex(0, wp), Rational(oj - oi), order, ctx);
      c = c * rgamma_jet(BigComplex(alpha, wp), Rational(oj), order, ctx);
    }
    for (std::size_t j = 0; j < up.size(); ++j) {
      if (in_group[j]) continue;
      c = c * gamma_jet(BigComplex(up[j] - alpha, wp), Rational(-oi), order, ctx);
      c = c * rgamma(BigComplex(up[j], wp), ctx);
    }
    C.push_back(std::move(c));
  }

  // (-o)^k / k! as exact rationals
  const auto weight = [](long o, std::size_t k) {
    Rational w(1);
    for (std::size_t t = 1; t <= k; ++t) w *= Rational(-o) / Rational(static_cast<long>(t));
    return w;
  };

  LeadingCoefficients out{std::vector<BigComplex>(q, BigComplex(prec)), BigReal(prec), BigReal(prec)};
  for (std::size_t k = 0; k < q; ++k) {
    BigComplex s(wp);
    for (std::size_t a = 0; a < q; ++a) {
      const Rational w = weight(static_cast<long>(a), k);
      if (!w.is_zero()) s += C[a].coefficient(-static_cast<int>(k)) * BigReal(w, wp);
    }
    out.c0[k] = s.rounded(prec);
  }
  // eps^{-m} log(-z)^k with m >= 1 must vanish.
  BigReal residual(wp), scale(wp);
  for (std::size_t m = 1; m < q; ++m) {
    for (std::size_t k = 0; m + k < q; ++k) {
      BigComplex s(wp);
      for (std::size_t a = 0; a < q; ++a) {
        const Rational w = weight(static_cast<long>(a), k);
        if (w.is_zero()) continue;
        const BigComplex t = C[a].coefficient(-static_cast<int>(m + k)) * BigReal(w, wp);
        scale = max(scale, abs(t));
        s += t;
      }
      residual = max(residual, abs(s));
    }
  }
  out.max_pole_residual = residual.rounded(prec);
  out.pole_scale = scale.rounded(prec);
  if (!scale.is_zero() && residual > scale * pow2(-prec.bits() - 8, wp))
    throw consistency_error("eps-pole cancellation failed for the group at alpha = " + alpha.to_string() +
                            " (residual " + residual.to_string(6) + " vs scale " + scale.to_string(6) + ")");
  return out;
}

inline std::vector<BigComplex> degenerate_leading_coefficients(const ParamGrouping& grouping, std::size_t g,
                                                               Precision prec) {
  return degenerate_leading_coefficients_report(grouping, g, prec).c0;
}

struct ExpansionOptions {
  /// Round every c^0_j to this many significant digits before extending
  /// (reproduces runs that fed printed leading coefficients into the
  /// recurrence). Unset means exact.
  std::optional<int> leading_significant_digits;
};

struct ConnectionExpansion {
  HyperParams params;
  std::vector<LogSeries> series;  // one per group
  std::size_t N = 0;
  Precision prec;
};

inline ConnectionExpansion expansion_at_infinity(const HyperParams& params, std::size_t N, Precision prec,
                                                 const ExpansionOptions& options = {}) {
  const ParamGrouping grouping = group_parameters(params);
  const ODEPolys ode = build_ode_polys(grouping.normalized);
  std::vector<LogSeries> series;
  for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
    const ParamGroup& group = grouping.groups[g];
    std::vector<BigComplex> c0 = degenerate_leading_coefficients(grouping, g, prec.with_guard(16));
    if (options.leading_significant_digits)
      for (auto& c : c0) c = detail::round_significant(c, *options.leading_significant_digits);
    series.push_back(extend_coefficients(ode, group.alpha, group.multiplicity(), c0, N, prec));
  }
  for (const RaiseStep& step : grouping.plan) {
    const Rational base = grouping.normalized.upper()[step.index];
    for (long t = 0; t < step.shift; ++t)
      for (auto& s : series) s = contiguity_raise(s, base + Rational(t));
  }
  return {params, std::move(series), N, prec};
}

/// Truncated sum of an expansion through layer `terms` (no domain check).
inline EvalResult sum_expansion(const ConnectionExpansion& exp, const BigComplex& z, std::size_t terms) {
  const Precision wp = exp.prec.with_guard(16);
  const BigComplex zz = z.rounded(wp);
  const BigComplex mz = -zz;
  const BigComplex lz = principal_log(mz);
  BigComplex total(wp);
  BigReal err(wp), biggest(wp);
  for (const auto& s : exp.series) {
    const BigComplex pw = principal_pow(mz, BigComplex(-s.alpha(), wp), wp);
    BigReal last(wp), largest(wp);
    const BigComplex v = sum_log_series(s, zz, lz, pw, terms, &last, &largest);
    biggest = max(biggest, largest);
    err += last;
    total += v;
  }
  const BigReal at = abs(total);
  const long lost = at.is_zero() ? 0 : std::max(0L, biggest.exponent2() - at.exponent2());
  err += biggest * pow2(-exp.prec.bits() + 2, wp);
  const long used = static_cast<long>(std::min(terms, exp.N));
  return {total.rounded(exp.prec), err.rounded(exp.prec), used, Method::connection, {}, lost};
}

inline EvalResult evaluate_at_infinity(const ConnectionExpansion& exp, const BigComplex& z,
                                       std::optional<std::size_t> terms = std::nullopt) {
  if (abs(z) <= 1) throw domain_error("expansion at infinity needs |z| > 1");
  EvalResult r = sum_expansion(exp, z, terms.value_or(exp.N));
  if (z.imag().is_zero() && z.real() >= 1)
    r.warnings.push_back("z lies on the branch cut [1, inf); value taken from the Im z < 0 side");
  return r;
}

/// Wall-clock seconds spent building coefficients and summing them.
struct PhaseTimes {
  double setup = 0;
  double summation = 0;
};

struct EvaluateOptions {
  Rational inner_radius{9, 10};
  Rational outer_radius{11, 10};
  /// Force a method; unset dispatches on |z|.
  std::optional<Method> method;
  /// Fixed truncation order; unset derives it from digits.
  std::optional<long> terms;
  ExpansionOptions expansion;
  PhaseTimes* timings = nullptr;
};

/// Number of layers for `digits` correct digits at |z|: ceil(digits / log10|z|) + 10.
inline std::size_t terms_for_digits(long digits, double abs_z) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(digits) / std::log10(abs_z))) + 10;
}

inline EvalResult evaluate(const HyperParams& params, const BigComplex& z, long digits,
                           const EvaluateOptions& options = {}) {
  const Precision prec = Precision::from_digits(digits);
  const BigReal az = abs(z);
  const bool inside = az <= BigReal(options.inner_radius, az.precision());
  const bool outside = az >= BigReal(options.outer_radius, az.precision());
  Method method = inside ? Method::taylor : Method::connection;
  if (options.method) method = *options.method;
  else if (!inside && !outside)
    throw annulus_error("unit-circle neighbourhood unsupported: |z| = " + az.to_string(6) +
                        " lies between the dispatch radii");

  switch (method) {
    case Method::taylor: {
      if (z.is_zero()) return {BigComplex(1, prec), BigReal(prec), 1, Method::taylor, {}, 0};
      const TruncationPolicy policy = options.terms ? TruncationPolicy::fixed_terms(*options.terms + 1)
                                                    : TruncationPolicy::automatic(digits, az.to_double());
      return taylor_eval(params, z, prec, policy);
    }
    case Method::binary_splitting: {
      if (az >= 1) throw domain_error("series diverges for |z| >= 1");
      const long terms = options.terms ? *options.terms
                                       : static_cast<long>(std::ceil(digits / -std::log10(az.to_double()))) + 10;
      EvalResult r = binary_splitting_value(params, to_gaussian_rational(z), terms, prec);
      // geometric tail estimate from the first omitted term
      r.err_estimate = pow(az, BigReal(terms + 1, prec));
      return r;
    }
    case Method::connection: {
      if (az <= 1) throw domain_error("expansion at infinity needs |z| > 1");
      const std::size_t N = options.terms ? static_cast<std::size_t>(*options.terms)
                                          : terms_for_digits(digits, az.to_double());
      long guard = 32;
      for (int attempt = 0;; ++attempt) {
        const auto t0 = std::chrono::steady_clock::now();
        const ConnectionExpansion exp = expansion_at_infinity(params, N, prec.with_guard(guard), options.expansion);
        const auto t1 = std::chrono::steady_clock::now();
        EvalResult r = evaluate_at_infinity(exp, z);
        if (options.timings != nullptr) {
          options.timings->setup += std::chrono::duration<double>(t1 - t0).count();
          options.timings->summation += std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
        }
        if (r.lost_bits > guard - 16 && attempt < 4) {
          guard = r.lost_bits + 48;
          continue;
        }
        r.value = r.value.rounded(prec);
        r.err_estimate = r.err_estimate.rounded(prec);
        return r;
      }
    }
    case Method::euler_integral:
      throw domain_error("the Euler integral is available through the oracle module only");
  }
  throw domain_error("unknown method");
}

}  // namespace hypergeo
