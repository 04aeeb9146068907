#pragma once

#include <string>

#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/numerics/roots.hpp"

namespace dioph::bounds {

enum class TransferKind {
  liminf,  // lower limit of L_{n+1}(q)/q  <->  uniform dual exponent
  limsup,  // upper limit of L_{n+1}(q)/q  <->  ordinary dual exponent
};

/// Solves (1 + 1/w)(1 + psi) = (n+1)/n for the dual exponent w.
/// Both extremal values obey the same identity; `kind` only labels which.
/// Returns +inf at psi = 1/n. Throws DomainError for psi <= -1 or psi > 1/n.
inline Real transfer_dual(int n, const Real& psi, TransferKind kind = TransferKind::liminf) {
  (void)kind;
  if (n < 1) throw DomainError("dimension n must be >= 1");
  if (!(psi > -1)) throw DomainError("psi must exceed -1, got " + psi.to_string());
  const Real denom = Real(n + 1, psi.bits()) / (n * (1 + psi)) - 1;
  if (denom.is_zero()) return Real::infinity(1, psi.bits());
  if (denom < 0) throw DomainError("psi must not exceed 1/n, got " + psi.to_string());
  return 1 / denom;
}

/// Inverse of transfer_dual: psi = (n+1) / (n (1 + 1/w)) - 1. Accepts w = +inf.
inline Real psi_from_dual(int n, const Real& w) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  if (!(w > 0)) throw DomainError("dual exponent must be positive");
  const Real inv = w.is_inf() ? Real(0, w.bits()) : 1 / w;
  return Real(n + 1, w.bits()) / (n * (1 + inv)) - 1;
}

/// Classical two-dimensional relations between the simultaneous exponents
/// (uniform lambda_hat, ordinary lambda) and the dual ones.
struct PlaneDuals {
  Real jarnik;          // uniform dual exponent, exactly (1 - lambda_hat)^-1
  Real laurent_lower;   // ordinary dual exponent, lower bound
  Real laurent_upper;   // ordinary dual exponent, upper bound (+inf if unbounded)
};

inline PlaneDuals classical_low_dim(const Real& lambda_hat, const Real& lambda) {
  if (!(lambda_hat * 2 >= 1)) throw DomainError("need lambda_hat >= 1/2");
  if (!(lambda_hat < 1)) throw DomainError("need lambda_hat < 1");
  if (lambda.is_nan() || lambda < lambda_hat) throw DomainError("need lambda >= lambda_hat");
  const mpfr_prec_t bits = std::max(lambda_hat.bits(), lambda.bits());
  PlaneDuals out;
  out.jarnik = 1 / (1 - lambda_hat);
  if (lambda.is_inf()) {
    out.laurent_lower = Real::infinity(1, bits);
    out.laurent_upper = Real::infinity(1, bits);
    return out;
  }
  out.laurent_lower = (lambda + lambda_hat) / (1 - lambda_hat);
  const Real denom = lambda_hat - lambda + lambda * lambda_hat;
  out.laurent_upper = denom > 0 ? lambda / denom : Real::infinity(1, bits);
  return out;
}

/// log of (1 + t)(1 + 1/t)^n. This is decreasing on (0, n], increasing on [n, inf).
inline Real lefths_log_side(int n, const Real& t) { return (n + 1) * log(1 + t) - n * log(t); }

/// Solves (1 + w*)(1 + 1/w*)^n = (1 + 1/omega)(1 + omega)^n on the branch
/// w* >= n. Since w* = 1/omega always solves the identity, the result equals
/// 1/omega whenever omega <= 1/n.
inline Real lefths_solve(int n, const Real& omega, const Accuracy& acc = {}) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  if (!(omega > 0) || !omega.is_finite()) throw DomainError("omega must be positive and finite");
  const mpfr_prec_t bits = std::max(acc.bits, omega.bits());
  const Real om = omega.with_bits(bits);
  // Right side, in logs: (n+1) log(1+omega) - log(omega).
  const Real target = (n + 1) * log(1 + om) - log(om);
  auto f = [&](const Real& t) { return lefths_log_side(n, t) - target; };

  const Real lo(n, bits);
  const Real f_lo = f(lo);
  // At omega = 1/n both sides meet at the minimum; allow for rounding there.
  const Real rounding = abs(target) * pow(Real(2, bits), 16 - static_cast<long>(bits));
  if (f_lo > rounding) throw NoRoot("right side below the minimum of the left side");
  if (f_lo >= 0) return lo;
  Real hi = lo * 2;
  while (!(f(hi) > 0)) hi *= 2;
  return find_root(f, Bracket{lo, hi, -1, 1}, acc.abs_tol(hi));
}

}  // namespace dioph::bounds
