#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/bounds/defect.hpp"
#include "dioph/bounds/transfer.hpp"
#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/pgn/approx.hpp"
#include "dioph/pgn/lattice.hpp"
#include "dioph/pgn/profile.hpp"

namespace dioph::pgn {

/// Finite-data estimates of the approximation exponents. These are proxies
/// read off a trailing window, not limits.
struct ExponentEstimates {
  Real lambda_est;
  Real lambda_hat_est;
  Real psi_low_est;
  Real psi_high_est;
  Real w_est;
  Real w_hat_est;
  Real window_log_x_min;  // records with log x in [min, max] were used
  Real window_log_x_max;
  Real window_q_min;  // profile samples with q in [min, max] were used
  Real window_q_max;
  std::size_t records_used = 0;
  std::size_t samples_used = 0;
};

namespace detail {

inline std::vector<std::size_t> trailing_records(const MinimalPointSequence& seq, double fraction, Real& lo,
                                                 Real& hi) {
  const Real first = seq.points.front().exact_log_x();
  hi = seq.points.back().exact_log_x();
  lo = hi - (hi - first) * fraction;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (seq[k].exact_log_x() >= lo) idx.push_back(k);
  }
  return idx;
}

}  // namespace detail

/// Estimates from the records and the profile over the trailing
/// `window_fraction` of the log x range and of the q range.
///
/// lambda is the largest secant slope -dlog Y / dlog x between consecutive
/// records; lambda_hat the smallest -(log Y_k - log Y_{k-1}) /
/// (log x_{k+1} - log x_k). On data following log Y_k = -b log x_k and
/// log x_{k+1} = (b/a) log x_k these return b and a exactly, with no
/// additive constant to wash out. The psi values are the extreme ratios
/// L_{n+1}(q)/q; the dual estimates follow by transfer_dual.
inline ExponentEstimates estimate_exponents(const MinimalPointSequence& seq, const std::vector<ProfileSample>& prof,
                                            int n, double window_fraction = 0.5) {
  if (!(window_fraction > 0 && window_fraction < 1)) throw DomainError("window fraction must lie in (0, 1)");
  if (seq.size() < 3) throw InsufficientData("need at least 3 minimal points");
  ExponentEstimates est;
  const auto idx = detail::trailing_records(seq, window_fraction, est.window_log_x_min, est.window_log_x_max);
  if (idx.size() < 3) {
    throw InsufficientData("only " + std::to_string(idx.size()) + " minimal points in the trailing window");
  }
  est.records_used = idx.size();
  const mpfr_prec_t bits = seq[0].error.bits();

  std::optional<Real> lam;
  std::optional<Real> lam_hat;
  for (std::size_t m = 1; m < idx.size(); ++m) {
    const auto& a = seq[idx[m - 1]];
    const auto& b = seq[idx[m]];
    const Real slope = -(b.exact_log_error() - a.exact_log_error()) / (b.exact_log_x() - a.exact_log_x());
    if (!lam || slope > *lam) lam = slope;
    if (m + 1 < idx.size()) {
      const auto& c = seq[idx[m + 1]];
      const Real u = -(b.exact_log_error() - a.exact_log_error()) / (c.exact_log_x() - b.exact_log_x());
      if (!lam_hat || u < *lam_hat) lam_hat = u;
    }
  }
  est.lambda_est = *lam;
  est.lambda_hat_est = min(*lam_hat, *lam);

  std::optional<Real> q_first;
  std::optional<Real> q_last;
  for (const auto& s : prof) {
    if (!(s.q > 0)) continue;
    if (!q_first) q_first = s.q;
    q_last = s.q;
  }
  if (!q_first) throw InsufficientData("profile has no sample with q > 0");
  est.window_q_max = *q_last;
  est.window_q_min = *q_last - (*q_last - *q_first) * window_fraction;

  std::optional<Real> lo;
  std::optional<Real> hi;
  for (const auto& s : prof) {
    if (!(s.q > 0) || s.q < est.window_q_min) continue;
    if (s.L.size() != static_cast<std::size_t>(n) + 1) throw DomainError("profile sample has the wrong size");
    const Real r = s.L.back() / s.q;
    if (!lo || r < *lo) lo = r;
    if (!hi || r > *hi) hi = r;
    ++est.samples_used;
  }
  if (est.samples_used < 2) throw InsufficientData("fewer than 2 profile samples in the trailing window");
  // L_{n+1}(q)/q lies in [-1, 1/n] for any pool holding the unit vectors;
  // clamp rounding excursions past the ends.
  const Real top = Real(1, bits) / n;
  const Real bottom(-1, bits);
  auto clamp = [&](Real v) { return max(bottom, min(top, v)); };
  est.psi_low_est = clamp(*lo);
  est.psi_high_est = clamp(*hi);
  if (est.psi_low_est == bottom) est.psi_low_est = bottom + pow(Real(2, bits), -static_cast<long>(bits) / 2);
  est.w_hat_est = bounds::transfer_dual(n, est.psi_low_est, bounds::TransferKind::liminf);
  est.w_est = bounds::transfer_dual(n, est.psi_high_est, bounds::TransferKind::limsup);
  return est;
}

/// How well a record sequence fits the structure forced by a pair (alpha,
/// beta) of exponents: log x_{j+1} close to (beta/alpha) log x_j, log Y_j
/// close to -beta log x_j, n+1 consecutive records independent, records
/// genuinely minimal.
struct TheoremVReport {
  Real alpha;
  Real beta;
  Real epsilon;
  Real threshold;
  bool hypothesis_ok = false;  // epsilon <= threshold
  Real fitted_C;               // smallest C >= 0 making both inequalities hold in the window
  Real prop1_margin;           // max of |a log x_{j+1} - b log x_j| - 4 eps (b/a)^n log x_{j+1}
  Real prop2_margin;           // max of |log Y_j + b log x_j| - 4 eps (b/a)^2 log x_j
  bool independence_ok = true;
  bool record_ok = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> problems;
};

/// Checks a record sequence against (alpha, beta). Margins use consecutive
/// records in the trailing `window_fraction` of the log x range; the
/// independence and record checks cover the whole sequence. With a pool the
/// record check also confirms that no pool vector with x below x_{j+1} has
/// an error below Y_j.
inline TheoremVReport check_theorem_v(const MinimalPointSequence& seq, int n, const Real& alpha, const Real& beta,
                                      const std::vector<ApproxVector>* pool = nullptr,
                                      double window_fraction = 0.5) {
  if (seq.size() < static_cast<std::size_t>(n) + 2) {
    throw InsufficientData("need at least n+2 = " + std::to_string(n + 2) + " minimal points");
  }
  if (!(window_fraction > 0 && window_fraction <= 1)) throw DomainError("window fraction must lie in (0, 1]");
  const bounds::BoundContext ctx = bounds::mm_defect(n, alpha, beta);
  if (ctx.beta_infinite()) throw DomainError("the structure check needs a finite beta");

  TheoremVReport rep;
  rep.alpha = ctx.alpha;
  rep.beta = ctx.beta;
  rep.epsilon = ctx.epsilon;
  rep.threshold = ctx.threshold;
  rep.hypothesis_ok = ctx.within_threshold();

  const Real& a = ctx.alpha;
  const Real& b = ctx.beta;
  const Real slack1 = 4 * ctx.epsilon * pow(b / a, n);
  const Real slack2 = 4 * ctx.epsilon * pow(b / a, 2);

  Real lo;
  Real hi;
  const auto idx = detail::trailing_records(seq, window_fraction, lo, hi);
  std::optional<Real> m1;
  std::optional<Real> m2;
  for (std::size_t m = 0; m < idx.size(); ++m) {
    const auto& p = seq[idx[m]];
    const Real lx = p.exact_log_x();
    const Real v2 = abs(p.exact_log_error() + b * lx) - slack2 * lx;
    if (!m2 || v2 > *m2) m2 = v2;
    if (m + 1 < idx.size()) {
      const Real lx_next = seq[idx[m + 1]].exact_log_x();
      const Real v1 = abs(a * lx_next - b * lx) - slack1 * lx_next;
      if (!m1 || v1 > *m1) m1 = v1;
      ++rep.pairs_checked;
    }
  }
  rep.prop1_margin = m1 ? *m1 : Real(0, a.bits());
  rep.prop2_margin = m2 ? *m2 : Real(0, a.bits());
  rep.fitted_C = max(Real(0, a.bits()), max(rep.prop1_margin, rep.prop2_margin));

  const std::size_t run = static_cast<std::size_t>(n) + 1;
  for (std::size_t k = 0; k + run <= seq.size(); ++k) {
    std::vector<IntRow> rows;
    for (std::size_t i = k; i < k + run; ++i) rows.push_back(seq[i].coords);
    if (!linearly_independent(rows)) {
      rep.independence_ok = false;
      rep.problems.push_back("records " + std::to_string(k) + ".." + std::to_string(k + run - 1) +
                             " are linearly dependent");
    }
  }

  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (!(seq[k].exact_log_x() > seq[k - 1].exact_log_x())) {
      rep.record_ok = false;
      rep.problems.push_back("x does not increase at record " + std::to_string(k));
    }
    if (!(seq[k].error < seq[k - 1].error)) {
      rep.record_ok = false;
      rep.problems.push_back("Y does not decrease at record " + std::to_string(k));
    }
  }
  if (pool != nullptr) {
    // Sweep the pool by x; the best error seen so far must never undercut
    // the current record before the next record's x.
    std::vector<const ApproxVector*> sorted;
    for (const auto& v : *pool) {
      if (v.x() >= 1) sorted.push_back(&v);
    }
    std::sort(sorted.begin(), sorted.end(), [](const ApproxVector* l, const ApproxVector* r) { return approx_less(*l, *r); });
    std::size_t j = 0;
    for (const ApproxVector* v : sorted) {
      while (j + 1 < seq.size() && v->x() >= seq[j + 1].x()) ++j;
      if (v->x() < seq[0].x()) continue;
      if (v->error < seq[j].error) {
        rep.record_ok = false;
        rep.problems.push_back("pool vector with x = " + std::to_string(v->x()) + " beats record " +
                               std::to_string(j));
        break;
      }
    }
  }
  return rep;
}

/// Breakpoints of the record L-functions for one index k.
struct IntersectionRow {
  std::size_t k = 0;
  Real q_k;  // minimum of L_{x_k}
  Real r_k;  // L_{x_k} rising meets L_{x_{k+1}} falling
  Real s_k;  // n (log x_{k+1} - log Y_{k-n+1}) / (n+1)
  Real u_k;  // n (log x_k - log Y_{k-n}) / (n+1)
  Real p_k;  // n (log x_{k+1} - log Y_{k-n}) / (n+1)
  bool qr_order_ok = true;  // q_k < r_k < q_{k+1}
  bool up_order_ok = true;  // u_k < p_k < u_{k+1}
};

/// Rows for k = n .. size-2 (so that every index used exists).
inline std::vector<IntersectionRow> intersection_diagnostics(const MinimalPointSequence& seq, int n) {
  if (seq.size() < static_cast<std::size_t>(n) + 2) {
    throw InsufficientData("need at least n+2 = " + std::to_string(n + 2) + " minimal points");
  }
  const std::size_t N = seq.size();
  std::vector<Real> lx;
  std::vector<Real> ly;
  for (const auto& p : seq.points) {
    lx.push_back(p.exact_log_x());
    ly.push_back(p.exact_log_error());
  }
  auto at = [&](const Real& log_x, const Real& log_y) { return n * (log_x - log_y) / (n + 1); };
  std::vector<IntersectionRow> out;
  const std::size_t first = static_cast<std::size_t>(n);
  for (std::size_t k = first; k + 1 < N; ++k) {
    IntersectionRow r;
    r.k = k;
    r.q_k = at(lx[k], ly[k]);
    r.r_k = at(lx[k + 1], ly[k]);
    r.s_k = at(lx[k + 1], ly[k + 1 - n]);
    r.u_k = at(lx[k], ly[k - n]);
    r.p_k = at(lx[k + 1], ly[k - n]);
    const Real q_next = at(lx[k + 1], ly[k + 1]);
    const Real u_next = at(lx[k + 1], ly[k + 1 - n]);
    r.qr_order_ok = r.q_k < r.r_k && r.r_k < q_next;
    r.up_order_ok = r.u_k < r.p_k && r.p_k < u_next;
    out.push_back(std::move(r));
  }
  return out;
}

/// Exact regular-graph data: log x_{j+1} = (beta/alpha) log x_j and
/// log Y_j = -beta log x_j, starting at log x_0 = `log_x0`. The integer
/// coordinates are the Vandermonde rows (1, t, ..., t^n), t = j + 1, which
/// stand in for the lattice vectors: any n+1 of them are independent. They
/// are not the approximation vectors themselves, whose size grows too fast
/// to store.
inline MinimalPointSequence regular_graph_sequence(int n, const Real& alpha, const Real& beta, std::size_t count,
                                                   const Real& log_x0) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  if (!(alpha > 0) || !(beta > alpha)) throw DomainError("need 0 < alpha < beta");
  if (!(log_x0 > 0)) throw DomainError("log x_0 must be positive");
  const mpfr_prec_t bits = std::max({alpha.bits(), beta.bits(), log_x0.bits()});
  MinimalPointSequence seq;
  seq.n = n;
  const Real ratio = beta / alpha;
  Real lx = log_x0.with_bits(bits);
  for (std::size_t j = 0; j < count; ++j) {
    ApproxVector v;
    std::int64_t t = static_cast<std::int64_t>(j) + 1;
    std::int64_t p = 1;
    for (int i = 0; i <= n; ++i) {
      v.coords.push_back(p);
      p *= t;
    }
    v.error = exp(-(beta * lx));
    v.stated_log_x = lx;
    v.log_x = lx.to_double();
    v.log_error = (-(beta * lx)).to_double();
    seq.points.push_back(std::move(v));
    lx = lx * ratio;
  }
  return seq;
}

}  // namespace dioph::pgn
