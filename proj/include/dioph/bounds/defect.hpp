#pragma once

#include <algorithm>
#include <utility>

#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/numerics/roots.hpp"

namespace dioph::bounds {

/// A candidate pair (alpha, beta) of uniform/ordinary simultaneous exponents
/// in dimension n, together with every derived quantity of the
/// best-approximation structure theorem.
struct BoundContext {
  int n = 1;
  Real alpha;
  Real beta;       // +inf allowed; then only epsilon and threshold are meaningful
  Real epsilon;    // 1 - sum_{j=1..n} alpha^j / beta^(j-1)
  Real threshold;  // (1/4n) (alpha/beta)^n min(alpha, beta - alpha)
  Real phi;        // 4 eps beta^(n-1) / alpha^n
  Real rho;        // 4 eps beta^2 / alpha^2
  Real S;          // sum_{j=1..n} (alpha/beta + phi)^(1-j)
  Real T;          // sum_{j=1..n-1} (alpha/beta + phi)^j

  bool beta_infinite() const { return beta.is_inf(); }
  // epsilon is 1 minus a sum of at most n terms below 1, so rounding leaves
  // it off by a few ulps of 1; that much is forgiven.
  bool within_threshold() const {
    return epsilon <= threshold + pow(Real(2, alpha.bits()), 32 - static_cast<long>(alpha.bits()));
  }
  Real ratio() const { return alpha / beta; }
};

/// Lower bounds (from the minimal-point structure) and upper bounds for the
/// dual exponents: `what` is the uniform one, `w` the ordinary one.
struct DualBoundSet {
  Real what_lower;
  Real what_upper;
  Real w_lower;
  Real w_upper;
};

/// The Marnat-Moshchevitin sum alpha + alpha^2/beta + ... + alpha^n/beta^(n-1).
inline Real mm_sum(int n, const Real& alpha, const Real& beta) {
  const mpfr_prec_t bits = std::max(alpha.bits(), beta.bits());
  Real sum(bits);
  if (beta.is_inf()) return alpha.with_bits(bits);
  const Real r = alpha / beta;
  Real term = alpha.with_bits(bits);
  for (int j = 1; j <= n; ++j) {
    sum += term;
    term *= r;
  }
  return sum;
}

/// Defect epsilon = 1 - mm_sum; zero exactly on the regular graph.
inline Real defect(int n, const Real& alpha, const Real& beta) { return 1 - mm_sum(n, alpha, beta); }

/// Builds the full BoundContext. Throws DomainError unless n >= 1 and
/// 0 < alpha <= beta.
inline BoundContext mm_defect(int n, const Real& alpha, const Real& beta) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  if (!(alpha > 0)) throw DomainError("alpha must be positive, got " + alpha.to_string());
  if (beta.is_nan() || alpha > beta) {
    throw DomainError("need alpha <= beta, got alpha=" + alpha.to_string() + " beta=" + beta.to_string());
  }
  const mpfr_prec_t bits = std::max(alpha.bits(), beta.bits());
  BoundContext ctx;
  ctx.n = n;
  ctx.alpha = alpha.with_bits(bits);
  ctx.beta = beta.with_bits(bits);
  ctx.epsilon = defect(n, ctx.alpha, ctx.beta);

  if (ctx.beta_infinite()) {
    ctx.threshold = Real(0, bits);
    ctx.phi = Real::infinity(1, bits);
    ctx.rho = Real::infinity(1, bits);
    ctx.S = Real(1, bits);
    ctx.T = n > 1 ? Real::infinity(1, bits) : Real(0, bits);
    return ctx;
  }

  const Real r = ctx.alpha / ctx.beta;
  ctx.threshold = pow(r, n) * min(ctx.alpha, ctx.beta - ctx.alpha) / (4 * n);
  ctx.phi = 4 * ctx.epsilon * pow(ctx.beta, n - 1) / pow(ctx.alpha, n);
  ctx.rho = 4 * ctx.epsilon * ctx.beta * ctx.beta / (ctx.alpha * ctx.alpha);

  const Real up = r + ctx.phi;
  ctx.S = Real(0, bits);
  Real p(1, bits);  // up^(1-j)
  for (int j = 1; j <= n; ++j) {
    ctx.S += p;
    p /= up;
  }
  ctx.T = Real(0, bits);
  Real q = up;  // up^j
  for (int j = 1; j <= n - 1; ++j) {
    ctx.T += q;
    q *= up;
  }
  return ctx;
}

/// Lower bound for the uniform dual exponent, evaluated without checking the
/// hypothesis. Returns NaN where the expression is undefined
/// (alpha/beta - phi <= 0 or beta - rho <= 0, or infinite beta).
inline Real uniform_dual_lower_unchecked(const BoundContext& ctx) {
  const mpfr_prec_t bits = ctx.alpha.bits();
  if (ctx.beta_infinite()) return Real::nan(bits);
  const Real down = ctx.ratio() - ctx.phi;
  const Real br = ctx.beta - ctx.rho;
  if (!(down > 0) || !(br > 0)) return Real::nan(bits);
  return br * ctx.S / (pow(down, -ctx.n) + br * (1 - ctx.S));
}

/// The four dual-exponent bounds. Throws HypothesisViolated when
/// epsilon > threshold and DegenerateContext if a base turns nonpositive.
inline DualBoundSet dual_bounds(const BoundContext& ctx) {
  if (ctx.beta_infinite()) throw DomainError("dual bounds need a finite beta");
  if (!ctx.within_threshold()) {
    throw HypothesisViolated("epsilon " + ctx.epsilon.to_string() + " exceeds threshold " +
                             ctx.threshold.to_string());
  }
  const Real down = ctx.ratio() - ctx.phi;
  const Real br = ctx.beta - ctx.rho;
  if (!(down > 0)) throw DegenerateContext("alpha/beta - phi <= 0");
  if (!(br > 0)) throw DegenerateContext("beta - rho <= 0");

  const int n = ctx.n;
  const Real& b = ctx.beta;
  const Real& rho = ctx.rho;
  const Real& T = ctx.T;
  const Real down_pow = pow(down, -n);

  DualBoundSet out;
  out.what_lower = br * ctx.S / (down_pow + br * (1 - ctx.S));
  const Real bpr2 = (b + rho) * (b + rho);
  out.w_lower = (rho * rho - b * b - bpr2 * T) / (rho - b + bpr2 * T);
  out.what_upper = down_pow / br;
  out.w_upper = down_pow / down / br;
  return out;
}

/// Closed forms on the regular graph: (beta^(n-1)/alpha^n, beta^n/alpha^(n+1)).
/// Throws NotRegularGraph when |epsilon| > 1e-20.
inline std::pair<Real, Real> regular_graph_duals(int n, const Real& alpha, const Real& beta) {
  const BoundContext ctx = mm_defect(n, alpha, beta);
  if (ctx.beta_infinite()) throw DomainError("regular graph needs a finite beta");
  if (abs(ctx.epsilon) > Real(1e-20, ctx.alpha.bits())) {
    throw NotRegularGraph("|epsilon| = " + abs(ctx.epsilon).to_string() + " exceeds 1e-20");
  }
  Real what = pow(ctx.beta, n - 1) / pow(ctx.alpha, n);
  Real w = what * ctx.beta / ctx.alpha;
  return {std::move(what), std::move(w)};
}

/// The unique beta >= alpha with epsilon(n, alpha, beta) = 0.
/// Throws DomainError unless 1/n <= alpha < 1.
inline Real beta_for_equality(int n, const Real& alpha, const Accuracy& acc = {}) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  const mpfr_prec_t bits = std::max(alpha.bits(), acc.bits);
  const Real a = alpha.with_bits(bits);
  if (a * n < 1) throw DomainError("alpha below 1/n admits no beta >= alpha on the regular graph");
  if (a >= 1) throw DomainError("alpha >= 1 forces an infinite ordinary exponent");
  if (a * n == 1) return a;

  auto eps = [&](const Real& b) { return defect(n, a, b); };
  // eps(alpha) = 1 - n alpha < 0 and eps increases to 1 - alpha > 0.
  Real hi = a * 2;
  while (!(eps(hi) > 0)) hi *= 2;
  Bracket br{a, hi, -1, 1};
  return find_root(eps, br, acc.abs_tol(hi));
}

}  // namespace dioph::bounds
