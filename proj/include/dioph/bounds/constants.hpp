#pragma once

#include <optional>
#include <string>
#include <utility>

#include "dioph/bounds/defect.hpp"
#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/numerics/roots.hpp"

namespace dioph::bounds {

namespace detail {

inline void require_even(int n, int min_n, const char* what) {
  if (n < min_n || n % 2 != 0) {
    throw DomainError(std::string(what) + " needs an even n >= " + std::to_string(min_n) +
                      ", got " + std::to_string(n));
  }
}

inline Real ratio(long num, long den, mpfr_prec_t bits) { return Real(num, bits) / den; }

}  // namespace detail

/// Left side minus right side of (n/2)^n t^(n+1) - (n/2 + 1) t + 1 = 0.
inline Real tau_equation(int n, const Real& t) {
  const Real half_n = Real(n, t.bits()) / 2;
  return pow(half_n, n) * pow(t, n + 1) - (half_n + 1) * t + 1;
}

/// Upper bound for the uniform simultaneous exponent on the Veronese curve,
/// even n: the root of tau_equation in (2/(n+2), 2/n).
inline Real tau(int n, const Accuracy& acc = {}) {
  detail::require_even(n, 2, "tau");
  // t = 2/n is itself a zero of the polynomial, so stay strictly below it.
  const Real upper = detail::ratio(2, n, acc.bits) * (1 - pow(Real(2, acc.bits), -40));
  Bracket br{detail::ratio(2, n + 2, acc.bits), upper, 1, -1};
  auto f = [n](const Real& t) { return tau_equation(n, t); };
  return find_root(f, br, acc.abs_tol(br.hi));
}

/// 2/(n+1), the classical bound for odd n >= 3.
inline Real laurent_odd_bound(int n, mpfr_prec_t bits = kDefaultPrecisionBits) {
  if (n < 3 || n % 2 == 0) {
    throw DomainError("odd-n bound needs an odd n >= 3, got " + std::to_string(n));
  }
  return detail::ratio(2, n + 1, bits);
}

/// (n-1)w/(w-n) - w + 1 - ((n-1)/(w-n))^n; w = 2n-1 is always a spurious zero.
inline Real w_equation(int n, const Real& w) {
  const Real d = w - n;
  return (n - 1) * w / d - w + 1 - pow((n - 1) / d, n);
}

struct MuResult {
  Real w;   // root of w_equation in (n, 2n-1)
  Real mu;  // max(2n - 2, w)
};

/// Upper bound mu_n for the uniform dual exponent on the Veronese curve.
inline MuResult mu(int n, const Accuracy& acc = {}) {
  if (n < 2) throw DomainError("mu needs n >= 2, got " + std::to_string(n));
  const mpfr_prec_t bits = acc.bits;
  // The equation has a pole at w = n; start just inside.
  const Real guard = Real(1, bits) + pow(Real(2, bits), -20);
  const Real lo = Real(n, bits) * guard;
  const Real hi = Real(2 * n - 1, bits) - Real(n, bits) * pow(Real(2, bits), -20);
  auto f = [n](const Real& w) { return w_equation(n, w); };
  Bracket br;
  try {
    br = scan_for_bracket(f, lo, hi, 1000);
  } catch (const NoSignChange& e) {
    throw NoRoot("w(" + std::to_string(n) + "): " + e.what());
  }
  MuResult out;
  out.w = find_root(f, br, acc.abs_tol(br.hi));
  const Real floor_value(2 * n - 2, bits);
  out.mu = out.w > floor_value ? out.w : floor_value;
  return out;
}

/// Lower bound for the uniform dual exponent at (alpha, beta = 2/n), or NaN
/// where that bound is undefined. Pairs with negative defect are not
/// admissible exponents; past that point the expression runs through a pole.
/// The defect vanishes at tau_n, so a little rounding below zero is allowed.
inline Real veronese_dual_lower(int n, const Real& alpha) {
  const Real beta = detail::ratio(2, n, alpha.bits());
  if (!(alpha > 0) || alpha > beta) return Real::nan(alpha.bits());
  const BoundContext ctx = mm_defect(n, alpha, beta);
  const Real slack = pow(Real(2, alpha.bits()), -static_cast<long>(alpha.bits()) / 3);
  if (ctx.epsilon < -slack) return Real::nan(alpha.bits());
  return uniform_dual_lower_unchecked(ctx);
}

/// Improved bound sigma_n (even n >= 4): the root in alpha of
/// veronese_dual_lower(n, alpha) = mu_n closest to tau_n from below.
inline Real sigma(int n, const Accuracy& acc = {}, int scan_steps = 1000) {
  detail::require_even(n, 4, "sigma");
  const Real mu_n = mu(n, acc).mu;
  const Real tau_n = tau(n, acc);
  auto f = [n, &mu_n](const Real& a) {
    Real v = veronese_dual_lower(n, a);
    return v.is_nan() ? v : v - mu_n;
  };
  const auto brackets = scan_brackets(f, detail::ratio(1, n, acc.bits), tau_n, scan_steps);
  if (brackets.empty()) {
    throw NoRoot("sigma(" + std::to_string(n) + "): no certified sign change below tau");
  }
  const Bracket& nearest = brackets.back();
  return find_root(f, nearest, acc.abs_tol(nearest.hi));
}

/// e^t / t - 2 sqrt(e).
inline Real theta_equation(const Real& t) { return exp(t) / t - 2 * sqrt(Real::euler(t.bits())); }

/// The root of e^t/t = 2 sqrt(e) with t > 1, bracketed in (1, 3).
inline Real theta(const Accuracy& acc = {}) {
  Bracket br{Real(1, acc.bits), Real(3, acc.bits), -1, 1};
  return find_root(theta_equation, br, acc.abs_tol(br.hi));
}

/// beta0(alpha)^(n-1) / alpha^n where beta0 puts (alpha, beta0) on the regular graph.
inline Real regular_graph_uniform_dual(int n, const Real& alpha, const Accuracy& acc = {}) {
  const Real b = beta_for_equality(n, alpha, acc);
  return pow(b, n - 1) / pow(alpha, n);
}

/// Bound on the uniform exponent for Veronese points on the regular graph:
/// the alpha in [1/n, 1) where regular_graph_uniform_dual meets mu_n.
inline Real regular_graph_lambda_bound(int n, const Accuracy& acc = {}) {
  detail::require_even(n, 4, "regular graph bound");
  const Real mu_n = mu(n, acc).mu;
  auto f = [&](const Real& a) { return regular_graph_uniform_dual(n, a, acc) - mu_n; };
  const Real lo = detail::ratio(1, n, acc.bits);
  const Real hi = 1 - pow(Real(2, acc.bits), -20);
  try {
    return find_root(f, Bracket{lo, hi, -1, 1}, acc.abs_tol(lo));
  } catch (const InvalidBracket& e) {
    throw NoRoot("regular graph bound(" + std::to_string(n) + "): " + e.what());
  }
}

/// n^2 (2/n - tau_n); tends to chi = 3.18... as n grows.
inline Real chi_estimate(int n, const Accuracy& acc = {}) {
  detail::require_even(n, 4, "chi estimate");
  const Real t = tau(n, acc);
  return Real(n, acc.bits) * n * (detail::ratio(2, n, acc.bits) - t);
}

/// Exponent magnitudes (1/sigma_n + 1, n/Theta + 1) for approximation by
/// algebraic integers.
inline std::pair<Real, Real> integer_approx_exponents(int n, const Accuracy& acc = {}) {
  detail::require_even(n, 4, "algebraic integer exponents");
  Real unconditional = 1 / sigma(n, acc) + 1;
  Real regular_graph = Real(n, acc.bits) / theta(acc) + 1;
  return {std::move(unconditional), std::move(regular_graph)};
}

/// Every constant applicable to one n. Fields that do not apply are empty.
struct ConstantsReport {
  int n = 0;
  std::optional<Real> tau_n;
  std::optional<Real> sigma_n;
  std::optional<Real> w_n_aux;
  std::optional<Real> mu_n;
  std::optional<Real> regular_graph_bound;
  std::optional<Real> chi_estimate;
  std::optional<Real> laurent_bound;
  Real theta;
};

inline ConstantsReport constants_report(int n, const Accuracy& acc = {}) {
  if (n < 1) throw DomainError("n must be >= 1");
  ConstantsReport rep;
  rep.n = n;
  rep.theta = theta(acc);
  if (n >= 2) {
    MuResult m = mu(n, acc);
    rep.w_n_aux = std::move(m.w);
    rep.mu_n = std::move(m.mu);
  }
  if (n % 2 == 0) {
    rep.tau_n = tau(n, acc);
    if (n >= 4) {
      rep.sigma_n = sigma(n, acc);
      rep.regular_graph_bound = regular_graph_lambda_bound(n, acc);
      rep.chi_estimate = chi_estimate(n, acc);
    }
  } else if (n >= 3) {
    rep.laurent_bound = laurent_odd_bound(n, acc.bits);
  }
  return rep;
}

}  // namespace dioph::bounds
