#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"

namespace dioph {

/// Interval [lo, hi] on which a continuous function is known to change sign.
struct Bracket {
  Real lo;
  Real hi;
  int f_lo_sign = -1;
  int f_hi_sign = 1;

  Real width() const { return hi - lo; }
  Real midpoint() const { return (lo + hi) / 2; }
};

enum class RootMethod {
  bisection,
  // Illinois-modified false position. Every iterate stays inside the current
  // bracket; a bisection step is forced whenever the width fails to halve.
  illinois,
};

/// Working precision and relative tolerance for implicit-equation solves.
struct Accuracy {
  mpfr_prec_t bits = kDefaultPrecisionBits;
  double rel_tol = 1e-30;

  /// Absolute tolerance for a root expected near `scale`.
  Real abs_tol(const Real& scale) const {
    Real s = abs(scale);
    if (s < 1) s = Real(1, bits);
    return Real(rel_tol, bits) * s;
  }
};

namespace detail {

template <typename F>
Real evaluate(F& f, const Real& x) {
  return std::invoke(f, x);
}

}  // namespace detail

/// Shrinks a sign-change bracket of `f` until its width is at most `tol`.
///
/// `f` may return NaN to flag a point where it is undefined; hitting such a
/// point inside the bracket is reported as NoConvergence.
template <typename F>
Bracket refine_bracket(F&& f, const Bracket& start, const Real& tol,
                       RootMethod method = RootMethod::bisection) {
  const mpfr_prec_t bits = std::max({start.lo.bits(), start.hi.bits(), tol.bits()});
  if (!(tol > 0)) throw DomainError("root tolerance must be positive");
  if (!(start.lo < start.hi)) throw InvalidBracket("lower end must be below upper end");

  Real a = start.lo.with_bits(bits);
  Real b = start.hi.with_bits(bits);
  Real fa = detail::evaluate(f, a);
  Real fb = detail::evaluate(f, b);
  if (fa.is_nan() || fb.is_nan()) throw InvalidBracket("function undefined at a bracket end");
  if (fa.is_zero()) return Bracket{a, a, -1, 1};
  if (fb.is_zero()) return Bracket{b, b, -1, 1};
  if (fa.sign() == fb.sign()) {
    throw InvalidBracket("endpoint signs agree: f(" + a.to_string() + ") and f(" + b.to_string() + ")");
  }

  // Each step at least halves the width within two iterations, so this bound
  // only trips when the precision is exhausted.
  const int max_iterations = 8 * static_cast<int>(bits) + 200;
  bool retained_left = false;
  bool retained_right = false;
  Real checkpoint = b - a;
  int steps_since_checkpoint = 0;
  for (int it = 0; b - a > tol; ++it) {
    if (it > max_iterations) throw NoConvergence("iteration budget exhausted");

    bool bisect = method == RootMethod::bisection;
    if (!bisect && steps_since_checkpoint >= 2) {
      bisect = b - a > checkpoint / 2;
      checkpoint = b - a;
      steps_since_checkpoint = 0;
    }
    ++steps_since_checkpoint;

    Real m(bits);
    if (!bisect) {
      m = b - fb * (b - a) / (fb - fa);
      if (!(m > a && m < b)) m = (a + b) / 2;
    } else {
      m = (a + b) / 2;
    }
    if (m == a || m == b) {
      throw NoConvergence("width " + (b - a).to_string() + " cannot reach tolerance " +
                          tol.to_string() + " at " + std::to_string(bits) + " bits");
    }

    Real fm = detail::evaluate(f, m);
    if (fm.is_nan()) throw NoConvergence("function undefined inside bracket at " + m.to_string());
    if (fm.is_zero()) return Bracket{m, m, -1, 1};
    if (fm.sign() == fa.sign()) {
      a = std::move(m);
      fa = std::move(fm);
      if (retained_right && method == RootMethod::illinois) fb /= 2;
      retained_right = true;
      retained_left = false;
    } else {
      b = std::move(m);
      fb = std::move(fm);
      if (retained_left && method == RootMethod::illinois) fa /= 2;
      retained_left = true;
      retained_right = false;
    }
  }
  // fa, fb may carry Illinois weights; their signs are still the true signs.
  return Bracket{a, b, fa.sign(), fb.sign()};
}

/// Root of `f` inside a sign-change bracket, located to within `tol`.
/// Throws InvalidBracket when the endpoint signs agree and NoConvergence when
/// the precision of the bracket cannot resolve `tol`.
template <typename F>
Real find_root(F&& f, const Bracket& bracket, const Real& tol,
               RootMethod method = RootMethod::bisection) {
  return refine_bracket(f, bracket, tol, method).midpoint();
}

/// Every grid cell of [lo, hi] (split into `steps` equal cells) on which `f`
/// changes sign, in increasing order. Cells touching a NaN value are skipped.
/// A grid point where `f` vanishes starts a bracket of its own.
template <typename F>
std::vector<Bracket> scan_brackets(F&& f, const Real& lo, const Real& hi, int steps) {
  if (!(lo < hi)) throw DomainError("scan interval must satisfy lo < hi");
  if (steps < 2) throw DomainError("scan needs at least 2 steps");
  const mpfr_prec_t bits = std::max(lo.bits(), hi.bits());
  const Real span = hi - lo;

  std::vector<Real> xs;
  std::vector<Real> fs;
  xs.reserve(steps + 1);
  fs.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    Real x = i == steps ? hi.with_bits(bits) : lo.with_bits(bits) + span * i / steps;
    fs.push_back(detail::evaluate(f, x));
    xs.push_back(std::move(x));
  }

  std::vector<Bracket> out;
  for (int i = 0; i < steps; ++i) {
    const Real& f0 = fs[i];
    const Real& f1 = fs[i + 1];
    if (f0.is_nan() || f1.is_nan()) continue;
    const int s0 = f0.sign();
    const int s1 = f1.sign();
    const bool change = (s0 * s1 < 0) || s0 == 0 || (s1 == 0 && i + 1 == steps);
    if (!change) continue;
    // Zero-valued ends are sign-compatible with either side; record the
    // opposite of the other end so the Bracket invariant holds.
    int lo_sign = s0 != 0 ? s0 : (s1 != 0 ? -s1 : -1);
    int hi_sign = s1 != 0 ? s1 : -lo_sign;
    out.push_back(Bracket{xs[i], xs[i + 1], lo_sign, hi_sign});
  }
  return out;
}

/// First sign-change cell of [lo, hi] in increasing order. Throws NoSignChange.
template <typename F>
Bracket scan_for_bracket(F&& f, const Real& lo, const Real& hi, int steps) {
  auto all = scan_brackets(f, lo, hi, steps);
  if (all.empty()) {
    throw NoSignChange("no sign change on [" + lo.to_string() + ", " + hi.to_string() + "] with " +
                       std::to_string(steps) + " steps");
  }
  return all.front();
}

}  // namespace dioph
