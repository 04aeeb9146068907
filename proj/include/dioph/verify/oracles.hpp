#pragma once

// Slow reference computations used to cross-check the pgn module. None of
// them calls the code it checks: ranks use rational Gaussian elimination,
// records come from a full box search, and successive minima from trying
// every independent tuple.

#include <algorithm>
#include <cstdint>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "dioph/numerics/real.hpp"
#include "dioph/pgn/target.hpp"

namespace dioph::verify {

using Row = std::vector<std::int64_t>;

/// Rank over Q by Gaussian elimination on mpq_class entries.
inline int rational_rank(const std::vector<Row>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<mpq_class>> m;
  for (const Row& r : rows) {
    std::vector<mpq_class> row;
    for (auto v : r) row.emplace_back(static_cast<long>(v));
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      const mpq_class f = m[i][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    if (++rank == m.size()) break;
  }
  return static_cast<int>(rank);
}

/// max_i |x xi_i - y_i| evaluated from scratch with raw MPFR at `bits`.
inline Real box_error(const pgn::TargetPoint& t, const Row& v, mpfr_prec_t bits) {
  mpfr_t acc, term;
  mpfr_inits2(bits, acc, term, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  for (int i = 0; i < t.n; ++i) {
    mpfr_mul_si(term, t.coords[i].raw(), static_cast<long>(v[0]), MPFR_RNDN);
    mpfr_sub_si(term, term, static_cast<long>(v[i + 1]), MPFR_RNDN);
    mpfr_abs(term, term, MPFR_RNDN);
    if (mpfr_greater_p(term, acc)) mpfr_set(acc, term, MPFR_RNDN);
  }
  Real out(bits);
  mpfr_set(out.raw(), acc, MPFR_RNDN);
  mpfr_clears(acc, term, static_cast<mpfr_ptr>(nullptr));
  return out;
}

/// Records over every integer vector with 1 <= x <= x_max and
/// |y_i - x xi_i| <= radius, scanning x upward. Within one x the smallest
/// error wins, then the lexicographically smallest y.
inline std::vector<Row> box_minimal_points(const pgn::TargetPoint& t, std::int64_t x_max, long radius) {
  std::vector<Row> records;
  Real best = Real::infinity(1, t.bits);
  for (std::int64_t x = 1; x <= x_max; ++x) {
    std::vector<std::int64_t> lo(t.n), hi(t.n);
    for (int i = 0; i < t.n; ++i) {
      const Real c = t.coords[i] * static_cast<long>(x);
      Real a = c - radius;
      Real b = c + radius;
      mpfr_ceil(a.raw(), a.raw());
      mpfr_floor(b.raw(), b.raw());
      lo[i] = a.to_long_nearest();
      hi[i] = b.to_long_nearest();
    }
    Row y(lo.begin(), lo.end());
    Row best_here;
    Real best_here_err = Real::infinity(1, t.bits);
    while (true) {
      Row v{x};
      v.insert(v.end(), y.begin(), y.end());
      const Real e = box_error(t, v, t.bits);
      if (e < best_here_err || (e == best_here_err && v < best_here)) {
        best_here_err = e;
        best_here = v;
      }
      int i = t.n - 1;
      while (i >= 0 && y[i] == hi[i]) {
        y[i] = lo[i];
        --i;
      }
      if (i < 0) break;
      ++y[i];
    }
    if (best_here_err < best) {
      best = best_here_err;
      records.push_back(best_here);
    }
  }
  return records;
}

/// Successive minima by exhaustion: for each j, the least over independent
/// j-tuples of the largest max(log x - q, log Y + q/n). Intended for pools
/// of a few dozen vectors.
class ExhaustiveMinima {
 public:
  ExhaustiveMinima(const pgn::TargetPoint& t, std::vector<Row> pool) : target_(t), pool_(std::move(pool)) {
    const std::size_t dim = static_cast<std::size_t>(t.n) + 1;
    for (const Row& v : pool_) {
      const Real e = box_error(t, v, t.bits);
      log_err_.push_back(log(e));
      log_x_.push_back(v[0] == 0 ? Real::infinity(-1, t.bits) : log(Real(static_cast<long>(v[0]), t.bits)));
    }
    std::vector<std::size_t> pick;
    collect(0, dim, pick);
  }

  std::vector<Real> at(const Real& q) const {
    const int n = target_.n;
    std::vector<Real> lv;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      Real rising = log_err_[i] + q / n;
      Real falling = log_x_[i] - q;
      lv.push_back(falling > rising ? falling : rising);
    }
    std::vector<Real> best(static_cast<std::size_t>(n) + 1, Real::infinity(1, target_.bits));
    for (const auto& tuple : independent_) {
      Real worst = Real::infinity(-1, target_.bits);
      for (std::size_t i : tuple) {
        if (lv[i] > worst) worst = lv[i];
      }
      Real& slot = best[tuple.size() - 1];
      if (worst < slot) slot = worst;
    }
    return best;
  }

  std::size_t tuple_count() const { return independent_.size(); }

 private:
  void collect(std::size_t start, std::size_t dim, std::vector<std::size_t>& pick) {
    for (std::size_t i = start; i < pool_.size(); ++i) {
      pick.push_back(i);
      std::vector<Row> rows;
      for (std::size_t k : pick) rows.push_back(pool_[k]);
      // Every superset of a dependent set is dependent; prune here.
      if (rational_rank(rows) == static_cast<int>(pick.size())) {
        independent_.push_back(pick);
        if (pick.size() < dim) collect(i + 1, dim, pick);
      }
      pick.pop_back();
    }
  }

  pgn::TargetPoint target_;
  std::vector<Row> pool_;
  std::vector<Real> log_err_;
  std::vector<Real> log_x_;
  std::vector<std::vector<std::size_t>> independent_;
};

}  // namespace dioph::verify
