#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/parallel.hpp"
#include "dioph/pgn/target.hpp"

namespace dioph::pgn {

/// Integer vector (x, y_1, ..., y_n) with its error Y = max_i |x xi_i - y_i|.
///
/// `log_x` and `log_error` are double copies used for ordering; exact
/// logarithms come from exact_log_x() and exact_log_error().
struct ApproxVector {
  std::vector<std::int64_t> coords;  // x first
  Real error;
  double log_x = 0;  // -inf when x == 0
  double log_error = 0;
  // Set only for synthetic data whose x is too large to store.
  std::optional<Real> stated_log_x;

  std::int64_t x() const { return coords.front(); }
  int n() const { return static_cast<int>(coords.size()) - 1; }

  Real exact_log_x() const {
    if (stated_log_x) return *stated_log_x;
    if (coords.front() == 0) return Real::infinity(-1, error.bits());
    return log(Real(coords.front(), error.bits()));
  }
  Real exact_log_error() const { return log(error); }
};

namespace detail {

// Errors at or below this size relative to the data are rounding noise, not
// a genuine approximation.
inline Real zero_error_floor(const TargetPoint& t, std::int64_t x) {
  Real scale(1, t.bits);
  for (const Real& c : t.coords) scale = max(scale, abs(c));
  return scale * static_cast<long>(std::max<std::int64_t>(x, 1)) *
         pow(Real(2, t.bits), 16 - static_cast<long>(t.bits));
}

inline double to_log_double(const Real& v) {
  if (v.is_zero()) return -std::numeric_limits<double>::infinity();
  // mpfr_get_d underflows below ~1e-308; go through the exact log then.
  const double d = v.to_double();
  if (d > 0 && std::isfinite(d) && d > 1e-300) return std::log(d);
  return log(v).to_double();
}

inline std::int64_t checked_round(const Real& v) {
  if (abs(v) > Real(static_cast<long>(std::int64_t{1} << 62), v.bits())) {
    throw DomainError("coordinate " + v.to_string() + " exceeds the 62-bit integer range");
  }
  return v.to_long_nearest();
}

}  // namespace detail

/// Builds the vector for explicit integer coordinates. Throws
/// RationalDependence when the error vanishes at working precision.
inline ApproxVector make_vector(const TargetPoint& t, std::vector<std::int64_t> coords) {
  if (coords.size() != static_cast<std::size_t>(t.n) + 1) {
    throw DomainError("vector needs n+1 = " + std::to_string(t.n + 1) + " coordinates");
  }
  ApproxVector v;
  const long x = static_cast<long>(coords.front());
  v.error = Real(0, t.bits);
  for (int i = 0; i < t.n; ++i) {
    Real d = t.coords[i] * x - static_cast<long>(coords[i + 1]);
    d = abs(d);
    if (d > v.error) v.error = std::move(d);
  }
  if (v.error <= detail::zero_error_floor(t, coords.front())) {
    std::string text;
    for (auto c : coords) text += (text.empty() ? "" : ",") + std::to_string(c);
    throw RationalDependence("vector (" + text + ") approximates the target exactly");
  }
  v.log_x = x == 0 ? -std::numeric_limits<double>::infinity() : std::log(static_cast<double>(x));
  v.log_error = detail::to_log_double(v.error);
  v.coords = std::move(coords);
  return v;
}

/// Strict weak order by (x, Y, lexicographic y).
inline bool approx_less(const ApproxVector& a, const ApproxVector& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.error != b.error) return a.error < b.error;
  return a.coords < b.coords;
}

/// Calls fn(ApproxVector) for each x in [x_lo, x_hi] and each y with every
/// y_i within `widen` of the nearest integer to x xi_i.
template <typename Fn>
void for_each_box_vector(const TargetPoint& t, std::int64_t x_lo, std::int64_t x_hi, int widen, Fn&& fn) {
  const int n = t.n;
  std::vector<std::int64_t> base(n);
  std::vector<int> offset(n);
  for (std::int64_t x = x_lo; x <= x_hi; ++x) {
    for (int i = 0; i < n; ++i) base[i] = detail::checked_round(t.coords[i] * static_cast<long>(x));
    std::fill(offset.begin(), offset.end(), -widen);
    while (true) {
      std::vector<std::int64_t> c(n + 1);
      c[0] = x;
      for (int i = 0; i < n; ++i) c[i + 1] = base[i] + offset[i];
      fn(make_vector(t, std::move(c)));
      int i = n - 1;
      while (i >= 0 && offset[i] == widen) offset[i--] = -widen;
      if (i < 0) break;
      ++offset[i];
    }
  }
}

/// The candidate pool: rounded vectors +- widen for x = 1..x_max, plus the
/// n+1 standard unit vectors, deduplicated and sorted by approx_less.
inline std::vector<ApproxVector> enumerate_candidates(const TargetPoint& t, std::int64_t x_max, int widen,
                                                      unsigned threads = 1) {
  if (x_max < 1) throw DomainError("x_max must be >= 1");
  if (widen < 0) throw DomainError("widen must be >= 0");

  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(threads, 64));
  std::vector<std::vector<ApproxVector>> parts(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::int64_t lo = 1 + static_cast<std::int64_t>(c) * x_max / static_cast<std::int64_t>(chunks);
    const std::int64_t hi = static_cast<std::int64_t>(c + 1) * x_max / static_cast<std::int64_t>(chunks);
    for_each_box_vector(t, lo, hi, widen, [&](ApproxVector v) { parts[c].push_back(std::move(v)); });
  });

  std::vector<ApproxVector> pool;
  for (int i = 0; i <= t.n; ++i) {
    std::vector<std::int64_t> e(t.n + 1, 0);
    e[i] = 1;
    pool.push_back(make_vector(t, std::move(e)));
  }
  for (auto& p : parts) {
    for (auto& v : p) pool.push_back(std::move(v));
  }
  std::sort(pool.begin(), pool.end(), approx_less);
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const ApproxVector& a, const ApproxVector& b) { return a.coords == b.coords; }),
             pool.end());
  return pool;
}

/// Best approximations: x strictly increasing, Y strictly decreasing, each
/// attaining the least Y among vectors with no larger x.
struct MinimalPointSequence {
  int n = 0;
  std::vector<ApproxVector> points;

  std::size_t size() const noexcept { return points.size(); }
  const ApproxVector& operator[](std::size_t i) const { return points[i]; }
};

/// Record subsequence of a pool. Vectors with x <= 0 never qualify. Ties
/// in x go to the smaller Y, then to the lexicographically smaller y.
inline MinimalPointSequence minimal_points(std::vector<ApproxVector> candidates) {
  if (candidates.empty()) throw DomainError("minimal_points needs at least one candidate");
  MinimalPointSequence seq;
  seq.n = candidates.front().n();
  std::sort(candidates.begin(), candidates.end(), approx_less);
  for (auto& v : candidates) {
    if (v.x() <= 0) continue;
    if (!seq.points.empty() && !(v.error < seq.points.back().error)) continue;
    if (!seq.points.empty() && v.x() == seq.points.back().x()) continue;
    seq.points.push_back(std::move(v));
  }
  return seq;
}

/// Records for x = 1..x_max without materialising the pool; agrees with
/// minimal_points(enumerate_candidates(t, x_max, widen)).
inline MinimalPointSequence stream_minimal_points(const TargetPoint& t, std::int64_t x_max, int widen) {
  if (x_max < 1) throw DomainError("x_max must be >= 1");
  MinimalPointSequence seq;
  seq.n = t.n;
  std::vector<ApproxVector> same_x;
  for (std::int64_t x = 1; x <= x_max; ++x) {
    same_x.clear();
    for_each_box_vector(t, x, x, widen, [&](ApproxVector v) { same_x.push_back(std::move(v)); });
    if (x == 1) {
      std::vector<std::int64_t> e(t.n + 1, 0);
      e[0] = 1;
      same_x.push_back(make_vector(t, std::move(e)));
    }
    auto best = std::min_element(same_x.begin(), same_x.end(), approx_less);
    if (seq.points.empty() || best->error < seq.points.back().error) seq.points.push_back(std::move(*best));
  }
  return seq;
}

}  // namespace dioph::pgn
