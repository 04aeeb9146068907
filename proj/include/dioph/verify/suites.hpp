#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dioph/bounds/constants.hpp"
#include "dioph/bounds/defect.hpp"
#include "dioph/bounds/transfer.hpp"
#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/pgn/analysis.hpp"
#include "dioph/pgn/approx.hpp"
#include "dioph/pgn/lattice.hpp"
#include "dioph/pgn/profile.hpp"
#include "dioph/pgn/target.hpp"
#include "dioph/verify/oracles.hpp"

namespace dioph::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"constants", "corollary", "monotonicity", "oracle", "profile"};
  return names;
}

namespace detail {

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  void check(std::string name, bool ok, std::string detail = {}) {
    out_.push_back(CheckResult{suite_, std::move(name), ok, std::move(detail)});
  }

  /// |value - expected| <= tol, with the value in the detail text.
  void near(std::string name, const Real& value, double expected, double tol) {
    const bool ok = abs(value - expected) <= Real(tol, value.bits());
    check(std::move(name), ok, value.to_string(15) + " vs " + std::to_string(expected) + " +- " + std::to_string(tol));
  }

  /// Runs fn; an exception counts as a failed check.
  void guard(const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      check(name, false, std::string("threw: ") + e.what());
    }
  }

  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

inline std::vector<CheckResult> constants_suite(const Accuracy& acc) {
  using namespace bounds;
  Recorder r("constants");
  r.guard("tau", [&] {
    r.near("tau(2)", tau(2, acc), 0.618033, 1e-6);
    r.near("tau(4)", tau(4, acc), 0.370635, 1e-6);
    r.near("tau(6)", tau(6, acc), 0.268186, 1e-6);
    r.near("tau(20)", tau(20, acc), 0.092803, 1e-6);
  });
  r.guard("sigma", [&] {
    r.near("sigma(4)", sigma(4, acc), 0.370629, 2e-6);
    r.near("sigma(6)", sigma(6, acc), 0.268183, 2e-6);
  });
  r.guard("mu", [&] {
    r.check("mu(10) = 18", mu(10, acc).mu == 18);
    r.check("mu(20) = 38", mu(20, acc).mu == 38);
  });
  r.guard("theta", [&] { r.near("theta", theta(acc), 1.7564, 5e-5); });
  r.guard("regular graph", [&] {
    const double stated[] = {0.3588, 0.2540, 0.1968};
    for (int i = 0; i < 3; ++i) {
      const int n = 4 + 2 * i;
      const Real v = regular_graph_lambda_bound(n, acc);
      r.check("regular graph bound(" + std::to_string(n) + ") below " + std::to_string(stated[i]),
              v < stated[i] && v > stated[i] - 5e-5, v.to_string(10));
    }
  });
  r.guard("chi", [&] {
    r.near("chi estimate(4)", chi_estimate(4, acc), 2.070, 1e-3);
    r.near("chi estimate(20)", chi_estimate(20, acc), 2.879, 1e-3);
  });
  r.guard("odd", [&] {
    r.near("laurent(3)", laurent_odd_bound(3, acc.bits), 0.5, 1e-30);
    r.near("laurent(5)", laurent_odd_bound(5, acc.bits), 1.0 / 3, 1e-15);
  });
  r.guard("algebraic integers", [&] {
    const auto e4 = integer_approx_exponents(4, acc);
    r.near("integer exponent unconditional(4)", e4.first, 3.698, 1e-3);
    r.near("integer exponent conditional(4)", e4.second, 3.277, 1e-3);
    const auto e6 = integer_approx_exponents(6, acc);
    r.near("integer exponent unconditional(6)", e6.first, 4.729, 1e-3);
    r.near("integer exponent conditional(6)", e6.second, 4.416, 1e-3);
  });
  return r.take();
}

inline std::vector<CheckResult> corollary_suite(const Accuracy& acc, int trials = 200) {
  using namespace bounds;
  Recorder r("corollary");
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> pick_n(2, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  std::string first_failure;
  for (int i = 0; i < trials; ++i) {
    const int n = pick_n(rng);
    const double a = 1.0 / n + (0.9 - 1.0 / n) * unit(rng);
    try {
      const Real alpha(a, acc.bits);
      const Real beta = beta_for_equality(n, alpha, acc);
      const auto ctx = mm_defect(n, alpha, beta);
      const auto b = dual_bounds(ctx);
      const auto [what, w] = regular_graph_duals(n, alpha, beta);
      const Real tol(1e-10, acc.bits);
      const bool ok = relative_difference(b.what_lower, what) <= tol && relative_difference(b.what_upper, what) <= tol &&
                      relative_difference(b.w_lower, w) <= tol && relative_difference(b.w_upper, w) <= tol;
      if (!ok) {
        ++failures;
        if (first_failure.empty()) first_failure = "n=" + std::to_string(n) + " alpha=" + std::to_string(a);
      }
    } catch (const std::exception& e) {
      ++failures;
      if (first_failure.empty()) first_failure = e.what();
    }
  }
  r.check("collapse at epsilon = 0 (" + std::to_string(trials) + " draws)", failures == 0,
          std::to_string(failures) + " failures " + first_failure);
  for (int n = 1; n <= 8; ++n) {
    r.guard("trivial point n=" + std::to_string(n), [&] {
      const Real a = Real(1, acc.bits) / n;
      const auto b = dual_bounds(mm_defect(n, a, a));
      const Real tol(1e-20, acc.bits);
      const bool ok = abs(b.what_lower - n) <= tol && abs(b.what_upper - n) <= tol && abs(b.w_lower - n) <= tol &&
                      abs(b.w_upper - n) <= tol;
      r.check("trivial point n=" + std::to_string(n), ok, b.what_lower.to_string());
    });
  }
  return r.take();
}

inline std::vector<CheckResult> monotonicity_suite(const Accuracy& acc) {
  using namespace bounds;
  Recorder r("monotonicity");
  for (int n : {4, 6}) {
    r.guard("dual lower increasing n=" + std::to_string(n), [&] {
      const Real s = sigma(n, acc);
      const Real beta = Real(2, acc.bits) / n * (1 + Real(1e-3, acc.bits));
      bool ok = true;
      std::optional<Real> prev;
      int valid = 0;
      for (int i = -20; i <= 20; ++i) {
        const Real a = s * (1 + Real(i, acc.bits) * 1e-4);
        const BoundContext ctx = mm_defect(n, a, beta);
        if (ctx.epsilon < 0) continue;  // not an admissible pair
        const Real v = uniform_dual_lower_unchecked(ctx);
        if (v.is_nan()) continue;
        ++valid;
        if (prev && !(v > *prev)) ok = false;
        prev = v;
      }
      r.check("dual lower increasing in alpha near sigma, n=" + std::to_string(n), ok && valid >= 10,
              std::to_string(valid) + " valid grid points");
    });
  }
  for (int n = 4; n <= 12; n += 2) {
    r.guard("sigma ordering n=" + std::to_string(n), [&] {
      const Real s = sigma(n, acc);
      const Real t = tau(n, acc);
      r.check("2/(n+2) < sigma < tau, n=" + std::to_string(n), s < t && s > Real(2, acc.bits) / (n + 2),
              s.to_string() + " < " + t.to_string());
    });
  }
  r.guard("transfer round trip", [&] {
    Real worst(0, acc.bits);
    for (int n = 1; n <= 6; ++n) {
      for (int i = 1; i < 20; ++i) {
        const Real psi = Real(-1, acc.bits) + (Real(1, acc.bits) / n + 1) * i / 20;
        const Real back = psi_from_dual(n, transfer_dual(n, psi));
        worst = max(worst, abs(back - psi));
      }
    }
    r.check("transfer round trip within 1e-25", worst < Real(1e-25, acc.bits), worst.to_string());
  });
  r.guard("precision doubling", [&] {
    Accuracy hi = acc;
    hi.bits = acc.bits * 2;
    const Real a = tau(6, acc);
    const Real b = tau(6, hi);
    r.check("tau(6) stable under doubled precision", abs(a - b) < Real(1e-28, acc.bits), (a - b).to_string());
  });
  return r.take();
}

/// Pool thinned to the records, every `stride`-th other vector and the unit
/// vectors, at most `cap` entries.
inline std::vector<pgn::ApproxVector> thin_pool(const std::vector<pgn::ApproxVector>& pool,
                                               const pgn::MinimalPointSequence& seq, std::size_t cap) {
  std::vector<pgn::ApproxVector> out;
  auto has = [&](const pgn::ApproxVector& v) {
    for (const auto& o : out) {
      if (o.coords == v.coords) return true;
    }
    return false;
  };
  for (const auto& v : pool) {
    if (v.x() <= 1 && !has(v)) out.push_back(v);
  }
  for (std::size_t k = seq.size(); k-- > 0 && out.size() < cap / 2 + 4;) {
    if (!has(seq[k])) out.push_back(seq[k]);
  }
  const std::size_t stride = std::max<std::size_t>(1, pool.size() / cap);
  for (std::size_t i = 0; i < pool.size() && out.size() < cap; i += stride) {
    if (!has(pool[i])) out.push_back(pool[i]);
  }
  return out;
}

inline std::vector<CheckResult> oracle_suite(const Accuracy& acc, std::int64_t x_max = 200) {
  Recorder r("oracle");
  const char* targets[] = {"veronese:e", "veronese:pi", "veronese:sqrt2"};
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    for (const char* name : targets) {
      const std::string tag = std::string(name) + " n=" + std::to_string(n);
      r.guard(tag, [&] {
        const auto t = pgn::parse_target(name, n, acc.bits);
        const auto pool = pgn::enumerate_candidates(t, x_max, 1);
        const auto seq = pgn::minimal_points(pool);
        const auto box = box_minimal_points(t, x_max, 2);
        bool same = box.size() == seq.size();
        for (std::size_t i = 0; same && i < box.size(); ++i) same = box[i] == seq[i].coords;
        r.check("records match box search, " + tag, same,
                std::to_string(seq.size()) + " vs " + std::to_string(box.size()) + " records");

        const auto thin = thin_pool(pool, seq, n == 3 ? 14 : 18);
        std::vector<Row> rows;
        for (const auto& v : thin) rows.push_back(v.coords);
        const ExhaustiveMinima oracle(t, rows);
        const Real q_max = pgn::default_q_max(n, x_max, acc.bits);
        auto grid = pgn::build_q_grid(seq, q_max, 25);
        const auto prof = pgn::profile(thin, grid, n);
        Real worst(0, acc.bits);
        for (const auto& s : prof) {
          const auto ref = oracle.at(s.q);
          for (std::size_t j = 0; j < ref.size(); ++j) worst = max(worst, abs(ref[j] - s.L[j]));
        }
        r.check("profile matches exhaustive tuples, " + tag, worst < Real(1e-12, acc.bits),
                "max deviation " + worst.to_string(3) + " over " + std::to_string(prof.size()) + " samples");

        int disagree = 0;
        std::uniform_int_distribution<std::size_t> any(0, pool.size() - 1);
        for (int trial = 0; trial < 60; ++trial) {
          std::vector<Row> sample;
          const int size = 1 + trial % (n + 1);
          for (int i = 0; i < size; ++i) sample.push_back(pool[any(rng)].coords);
          if (trial % 5 == 0) sample.push_back(sample.front());
          pgn::IndependenceTracker tracker(static_cast<std::size_t>(n) + 1);
          int kept = 0;
          for (const auto& s : sample) kept += tracker.try_add(s) ? 1 : 0;
          const int exact = rational_rank(sample);
          if (pgn::integer_rank(sample) != exact || kept != exact) ++disagree;
        }
        r.check("integer rank agrees with rational rank, " + tag, disagree == 0,
                std::to_string(disagree) + " disagreements in 60 draws");
      });
    }
  }
  return r.take();
}

inline std::vector<CheckResult> profile_suite(const Accuracy& acc) {
  Recorder r("profile");
  struct Case {
    const char* target;
    int n;
    std::int64_t x_max;
  };
  for (const Case c : {Case{"veronese:golden", 1, 10000}, Case{"veronese:e", 2, 3000}, Case{"veronese:pi", 3, 500}}) {
    const std::string tag = std::string(c.target) + " n=" + std::to_string(c.n);
    r.guard(tag, [&] {
      const auto t = pgn::parse_target(c.target, c.n, acc.bits);
      const auto p0 = pgn::enumerate_candidates(t, c.x_max, 0);
      const auto p1 = pgn::enumerate_candidates(t, c.x_max, 1);
      const auto seq = pgn::minimal_points(p1);
      const auto grid = pgn::build_q_grid(seq, pgn::default_q_max(c.n, c.x_max, acc.bits), 150);
      const auto a = pgn::profile(p0, grid, c.n);
      const auto b = pgn::profile(p1, grid, c.n);
      bool sorted = true;
      bool monotone = true;
      bool slopes = true;
      const Real eps(1e-12, acc.bits);
      const double steep = std::max(1.0, 1.0 / c.n);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int j = 0; j <= c.n; ++j) {
          if (j > 0 && b[i].L[j] < b[i].L[j - 1]) sorted = false;
          if (b[i].L[j] > a[i].L[j] + eps) monotone = false;
          if (i > 0 && abs(b[i].L[j] - b[i - 1].L[j]) > (grid[i] - grid[i - 1]) * steep + eps) slopes = false;
        }
      }
      r.check("profile sorted, " + tag, sorted);
      r.check("larger pool never raises a minimum, " + tag, monotone);
      r.check("slopes within [-1, 1/n], " + tag, slopes);

      bool at_records = true;
      for (const auto& v : seq.points) {
        const auto mp = pgn::min_point(v, c.n);
        if (mp.q > grid.back()) continue;
        const auto s = pgn::profile(p1, {mp.q}, c.n).front();
        if (abs(s.L[0] - mp.value) > eps) at_records = false;
      }
      r.check("L_1 at a record's minimum equals its value, " + tag, at_records);
      const Real defect = pgn::minkowski_defect(b);
      r.check("Minkowski defect finite, " + tag, defect.is_finite(), defect.to_string());
    });
  }
  return r.take();
}

}  // namespace detail

/// Runs one named suite. Throws DomainError for an unknown name.
inline std::vector<CheckResult> run_suite(const std::string& name, const Accuracy& acc = {}) {
  if (name == "constants") return detail::constants_suite(acc);
  if (name == "corollary") return detail::corollary_suite(acc);
  if (name == "monotonicity") return detail::monotonicity_suite(acc);
  if (name == "oracle") return detail::oracle_suite(acc);
  if (name == "profile") return detail::profile_suite(acc);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace dioph::verify
