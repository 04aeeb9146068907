#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/parallel.hpp"
#include "dioph/pgn/approx.hpp"
#include "dioph/pgn/lattice.hpp"

namespace dioph::pgn {

/// L_v(q) = max(log x - q, log Y + q/n).
inline Real vector_L(const ApproxVector& v, const Real& q, int n) {
  const Real rising = v.exact_log_error() + q / n;
  if (v.x() == 0) return rising;
  return max(v.exact_log_x() - q, rising);
}

inline double vector_L_fast(const ApproxVector& v, double q, int n) {
  const double rising = v.log_error + q / n;
  return v.x() == 0 ? rising : std::max(v.log_x - q, rising);
}

struct MinPoint {
  Real q;      // n (log x - log Y) / (n+1)
  Real value;  // (log x + n log Y) / (n+1)
};

/// Where L_v is smallest. Requires x >= 1.
inline MinPoint min_point(const ApproxVector& v, int n) {
  if (v.x() < 1) throw DomainError("min_point needs x >= 1");
  const Real lx = v.exact_log_x();
  const Real ly = v.exact_log_error();
  return MinPoint{n * (lx - ly) / (n + 1), (lx + n * ly) / (n + 1)};
}

/// Where the rising branch of `rising` meets the falling branch of `falling`:
/// n (log x_falling - log Y_rising) / (n+1).
inline Real crossing(const ApproxVector& rising, const ApproxVector& falling, int n) {
  return n * (falling.exact_log_x() - rising.exact_log_error()) / (n + 1);
}

/// The n+1 successive minima at one parameter value, with the pool indices
/// of the vectors attaining them.
struct ProfileSample {
  Real q;
  std::vector<Real> L;
  std::vector<std::size_t> witnesses;
};

namespace detail {

inline ProfileSample profile_at(const std::vector<ApproxVector>& pool, const Real& q, int n,
                                std::vector<double>& scratch, std::vector<std::size_t>& order) {
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  const double qd = q.to_double();
  scratch.resize(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) scratch[i] = vector_L_fast(pool[i], qd, n);
  auto by_value = [&](std::size_t a, std::size_t b) {
    return scratch[a] != scratch[b] ? scratch[a] < scratch[b] : a < b;
  };

  // Greedy selection over a matroid: scanning by increasing L and keeping
  // each vector independent of those kept gives the min-max value at every
  // rank. Only a short prefix of the order is needed; widen it on demand.
  std::size_t take = std::min(pool.size(), 8 * dim);
  while (true) {
    order.resize(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), by_value);
    IndependenceTracker tracker(dim);
    ProfileSample s;
    s.q = q;
    for (std::size_t k = 0; k < take && !tracker.full(); ++k) {
      if (tracker.try_add(pool[order[k]].coords)) s.witnesses.push_back(order[k]);
    }
    if (tracker.full()) {
      for (std::size_t w : s.witnesses) s.L.push_back(vector_L(pool[w], q, n));
      // Exact values can reorder ties broken in double precision.
      std::vector<std::size_t> idx(dim);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.L[a] < s.L[b]; });
      ProfileSample sorted;
      sorted.q = s.q;
      for (std::size_t i : idx) {
        sorted.L.push_back(s.L[i]);
        sorted.witnesses.push_back(s.witnesses[i]);
      }
      return sorted;
    }
    if (take == pool.size()) {
      throw InsufficientRank("pool spans only rank " + std::to_string(tracker.rank()) + " of " +
                             std::to_string(dim));
    }
    take = std::min(pool.size(), take * 4);
  }
}

}  // namespace detail

/// Successive minima L_1(q) <= ... <= L_{n+1}(q) over the pool at each grid
/// value. The values are exact min-max values over the pool; they bound the
/// true minima from above when the pool is incomplete.
inline std::vector<ProfileSample> profile(const std::vector<ApproxVector>& pool, const std::vector<Real>& q_grid,
                                          int n, unsigned threads = 1) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  for (const auto& v : pool) {
    if (v.n() != n) throw DomainError("pool vector has the wrong dimension");
  }
  std::vector<ProfileSample> out(q_grid.size());
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(1, q_grid.size()));
  parallel_for(workers, static_cast<unsigned>(workers), [&](std::size_t w) {
    std::vector<double> scratch;
    std::vector<std::size_t> order;
    const std::size_t lo = w * q_grid.size() / workers;
    const std::size_t hi = (w + 1) * q_grid.size() / workers;
    for (std::size_t i = lo; i < hi; ++i) out[i] = detail::profile_at(pool, q_grid[i], n, scratch, order);
  });
  return out;
}

/// Uniform grid of `points` values on [0, q_max] merged with the minimum
/// points q_k and the crossings r_k of consecutive records inside that range.
inline std::vector<Real> build_q_grid(const MinimalPointSequence& seq, const Real& q_max, int points) {
  if (!(q_max > 0)) throw DomainError("q_max must be positive");
  if (points < 2) throw DomainError("grid needs at least 2 points");
  const int n = seq.n;
  std::vector<Real> grid;
  for (int i = 0; i < points; ++i) grid.push_back(q_max * i / (points - 1));
  auto add = [&](Real q) {
    if (q >= 0 && q <= q_max) grid.push_back(std::move(q));
  };
  for (std::size_t k = 0; k < seq.size(); ++k) {
    add(min_point(seq[k], n).q);
    if (k + 1 < seq.size()) add(crossing(seq[k], seq[k + 1], n));
  }
  std::sort(grid.begin(), grid.end(), [](const Real& a, const Real& b) { return a < b; });
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// Default upper end of the q range: n/(n+1) log x_max, where the records
/// up to x_max stop covering L_1.
inline Real default_q_max(int n, std::int64_t x_max, mpfr_prec_t bits = kDefaultPrecisionBits) {
  return Real(n, bits) * log(Real(static_cast<long>(x_max), bits)) / (n + 1);
}

/// max over samples with q >= q_from of |L_1(q) + ... + L_{n+1}(q)|.
inline Real minkowski_defect(const std::vector<ProfileSample>& prof,
                             const Real& q_from = Real::infinity(-1, kDefaultPrecisionBits)) {
  if (prof.empty()) throw DomainError("minkowski_defect needs a nonempty profile");
  Real worst(0, prof.front().q.bits());
  for (const auto& s : prof) {
    if (s.q < q_from) continue;
    Real sum(0, s.q.bits());
    for (const Real& l : s.L) sum += l;
    worst = max(worst, abs(sum));
  }
  return worst;
}

}  // namespace dioph::pgn
