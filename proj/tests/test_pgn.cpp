#include <gtest/gtest.h>

#include <cmath>

#include "dioph/bounds/defect.hpp"
#include "dioph/bounds/transfer.hpp"
#include "dioph/error.hpp"
#include "dioph/pgn/analysis.hpp"
#include "dioph/pgn/approx.hpp"
#include "dioph/pgn/lattice.hpp"
#include "dioph/pgn/profile.hpp"
#include "dioph/pgn/target.hpp"
#include "dioph/verify/oracles.hpp"

using dioph::Real;
using namespace dioph::pgn;

namespace {

Real R(double v, mpfr_prec_t bits = 256) { return Real(v, bits); }

std::vector<std::int64_t> coords_of(const ApproxVector& v) { return v.coords; }

}  // namespace

TEST(Target, VeroneseAndExplicit) {
  const auto t = parse_target("veronese:sqrt2", 3);
  ASSERT_EQ(t.n, 3);
  EXPECT_TRUE(abs(t.coords[1] - 2) < R(1e-70));
  EXPECT_EQ(t.source, TargetSource::veronese);

  const auto e = parse_target("explicit:0.5,0.25", 0);
  EXPECT_EQ(e.n, 2);
  EXPECT_TRUE(e.coords[1] == R(0.25));
  EXPECT_EQ(parse_target("explicit:0.5,0.25", 2).n, 2);
  EXPECT_THROW(parse_target("explicit:0.5,0.25", 3), dioph::DomainError);
  EXPECT_THROW(parse_target("veronese:e", 0), dioph::DomainError);
  EXPECT_THROW(parse_target("nonsense", 1), dioph::DomainError);
  EXPECT_THROW(parse_target("veronese:notanumber", 1), dioph::DomainError);
}

TEST(Target, NamedConstants) {
  EXPECT_NEAR(named_constant("golden", 128).to_double(), 1.6180339887498949, 1e-15);
  EXPECT_NEAR(named_constant("e", 128).to_double(), M_E, 1e-15);
  EXPECT_NEAR(liouville_number(128).to_double(), 0.110001000000000000000001, 1e-15);
  EXPECT_FALSE(is_named_constant("tau"));
}

TEST(Lattice, RankAgreesWithRationalElimination) {
  const std::vector<IntRow> cases[] = {
      {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}},
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {{3, 5, 7}, {6, 10, 14}, {9, 15, 21}},
      {{4, 1}, {7, 2}},
      {{0, 0, 0}},
      {{1, 1, 2, 3}, {5, 8, 13, 21}, {6, 9, 15, 24}},
  };
  for (const auto& rows : cases) {
    EXPECT_EQ(integer_rank(rows), dioph::verify::rational_rank(rows));
  }
  EXPECT_EQ(integer_rank(cases[0]), 2);
  EXPECT_FALSE(linearly_independent(cases[2]));
  EXPECT_TRUE(linearly_independent(cases[1]));
}

TEST(Lattice, TrackerMatchesRank) {
  IndependenceTracker tr(3);
  const IntRow a{2, 4, 6}, b{1, 2, 3}, c{0, 1, 5}, d{1, 0, 0};
  EXPECT_TRUE(tr.try_add(a));
  EXPECT_FALSE(tr.try_add(b));
  EXPECT_TRUE(tr.try_add(c));
  EXPECT_FALSE(tr.full());
  EXPECT_TRUE(tr.try_add(d));
  EXPECT_TRUE(tr.full());
  EXPECT_EQ(tr.rank(), 3u);
}

TEST(Enumerate, GoldenRecordsAreFibonacci) {
  const auto t = parse_target("veronese:golden", 1);
  const auto seq = minimal_points(enumerate_candidates(t, 10000, 0));
  std::vector<std::int64_t> xs;
  for (const auto& p : seq.points) xs.push_back(p.x());
  std::vector<std::int64_t> fib{1, 2};
  while (fib.back() + fib[fib.size() - 2] <= 10000) fib.push_back(fib.back() + fib[fib.size() - 2]);
  EXPECT_EQ(xs, fib);
  for (std::size_t k = 1; k < seq.size(); ++k) {
    EXPECT_LT(seq[k - 1].x(), seq[k].x());
    EXPECT_TRUE(seq[k].error < seq[k - 1].error);
  }
}

TEST(Enumerate, SmallestRange) {
  const auto t = parse_target("veronese:pi", 2);
  const auto pool = enumerate_candidates(t, 1, 0);
  EXPECT_EQ(pool.size(), 4u);  // three unit vectors plus the one rounded vector at x = 1
  const auto seq = minimal_points(pool);
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_EQ(seq[0].x(), 1);
}

TEST(Enumerate, BoxSize) {
  const auto t = parse_target("veronese:e", 2);
  EXPECT_EQ(enumerate_candidates(t, 100, 1).size(), 100u * 9 + 3);
  EXPECT_THROW(enumerate_candidates(t, 0, 0), dioph::DomainError);
  EXPECT_THROW(enumerate_candidates(t, 10, -1), dioph::DomainError);
}

TEST(Enumerate, RationalTargetIsRejected) {
  const auto t = parse_target("veronese:0.5", 1);
  EXPECT_THROW(enumerate_candidates(t, 10, 0), dioph::RationalDependence);
  EXPECT_THROW(stream_minimal_points(t, 10, 0), dioph::RationalDependence);
}

TEST(Enumerate, ThreadsGiveIdenticalPools) {
  const auto t = parse_target("veronese:e", 2);
  const auto a = enumerate_candidates(t, 500, 1, 1);
  const auto b = enumerate_candidates(t, 500, 1, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].coords, b[i].coords);
}

TEST(Enumerate, StreamAgreesWithPool) {
  for (const char* name : {"veronese:e", "veronese:pi", "explicit:0.3183098861837907,0.5772156649015329"}) {
    const auto t = parse_target(name, 2);
    const auto a = minimal_points(enumerate_candidates(t, 2000, 1));
    const auto b = stream_minimal_points(t, 2000, 1);
    ASSERT_EQ(a.size(), b.size()) << name;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].coords, b[i].coords) << name;
  }
}

TEST(Enumerate, RecordsMatchBoxSearch) {
  for (const char* name : {"e", "pi"}) {
    for (int n = 1; n <= 3; ++n) {
      const auto t = parse_target(std::string("veronese:") + name, n);
      const auto box = dioph::verify::box_minimal_points(t, 300, 2);
      const auto seq = minimal_points(enumerate_candidates(t, 300, 1));
      ASSERT_EQ(box.size(), seq.size()) << name << " " << n;
      for (std::size_t i = 0; i < box.size(); ++i) EXPECT_EQ(box[i], coords_of(seq[i]));
    }
  }
}

TEST(Profile, TrajectoryShape) {
  const auto t = parse_target("veronese:e", 2);
  const auto v = make_vector(t, {7, 19, 52});
  const Real lx = log(Real(7, 256));
  const Real ly = v.exact_log_error();
  EXPECT_TRUE(vector_L(v, R(0), 2) == lx);
  const Real q_big(40, 256);
  EXPECT_TRUE(abs(vector_L(v, q_big, 2) - (ly + q_big / 2)) < R(1e-60));
  const auto m = min_point(v, 2);
  EXPECT_TRUE(abs(vector_L(v, m.q, 2) - m.value) < R(1e-60));
  EXPECT_TRUE(abs(m.q - 2 * (lx - ly) / 3) < R(1e-60));
  EXPECT_NEAR(vector_L_fast(v, 1.5, 2), vector_L(v, R(1.5), 2).to_double(), 1e-12);

  EXPECT_THROW(min_point(make_vector(t, {0, 1, 0}), 2), dioph::DomainError);
}

TEST(Profile, CrossingIsWhereBranchesMeet) {
  const auto t = parse_target("veronese:e", 1);
  const auto seq = minimal_points(enumerate_candidates(t, 5000, 0));
  ASSERT_GE(seq.size(), 4u);
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    const Real s = crossing(seq[k], seq[k + 1], 1);
    const Real rising = seq[k].exact_log_error() + s;
    const Real falling = seq[k + 1].exact_log_x() - s;
    EXPECT_TRUE(abs(rising - falling) < R(1e-60));
  }
}

TEST(Profile, GoldenMinimaAreSortedAndBalanced) {
  const auto t = parse_target("veronese:golden", 1);
  const auto pool = enumerate_candidates(t, 10000, 0);
  const auto seq = minimal_points(pool);
  const auto grid = build_q_grid(seq, default_q_max(1, 10000), 100);
  const auto prof = profile(pool, grid, 1);
  ASSERT_EQ(prof.size(), grid.size());
  for (const auto& s : prof) {
    ASSERT_EQ(s.L.size(), 2u);
    EXPECT_TRUE(s.L[0] <= s.L[1]);
    // Minkowski: the sum stays within a bounded distance of zero.
    EXPECT_TRUE(abs(s.L[0] + s.L[1]) < R(1.5));
  }
  EXPECT_TRUE(minkowski_defect(prof) < R(1));
}

TEST(Profile, FirstMinimumEqualsRecordEnvelope) {
  const auto t = parse_target("veronese:pi", 2);
  const auto pool = enumerate_candidates(t, 2000, 1);
  const auto seq = minimal_points(pool);
  const auto grid = build_q_grid(seq, default_q_max(2, 2000), 60);
  const auto prof = profile(pool, grid, 2);
  for (const auto& s : prof) {
    Real best = Real::infinity();
    for (const auto& p : seq.points) best = min(best, vector_L(p, s.q, 2));
    for (std::size_t i = 0; i <= 2; ++i) {
      const Real u = pool[i].exact_log_error() + s.q / 2;  // unit vectors with x = 0
      if (pool[i].x() == 0) best = min(best, u);
    }
    EXPECT_TRUE(abs(s.L[0] - best) < R(1e-50)) << s.q;
  }
}

TEST(Profile, MatchesExhaustiveOracle) {
  const auto t = parse_target("veronese:e", 2);
  auto pool = enumerate_candidates(t, 60, 1);
  // Keep the oracle small: unit vectors plus the best vectors by error.
  std::vector<ApproxVector> small(pool.begin(), pool.begin() + 3);
  std::vector<ApproxVector> rest(pool.begin() + 3, pool.end());
  std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.error < b.error; });
  for (std::size_t i = 0; i < 11 && i < rest.size(); ++i) small.push_back(rest[i]);
  std::vector<dioph::verify::Row> rows;
  for (const auto& v : small) rows.push_back(v.coords);
  const dioph::verify::ExhaustiveMinima oracle(t, rows);

  std::vector<Real> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(Real(i, 256) * 4 / 20);
  const auto prof = profile(small, grid, 2);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto want = oracle.at(grid[g]);
    ASSERT_EQ(want.size(), 3u);
    for (int j = 0; j < 3; ++j) EXPECT_TRUE(abs(prof[g].L[j] - want[j]) < R(1e-12)) << g << " " << j;
  }
}

TEST(Profile, LargerPoolNeverRaisesMinima) {
  const auto t = parse_target("veronese:e", 2);
  const auto p0 = enumerate_candidates(t, 3000, 0);
  const auto p1 = enumerate_candidates(t, 3000, 1);
  const auto grid = build_q_grid(minimal_points(p1), default_q_max(2, 3000), 80);
  const auto a = profile(p0, grid, 2);
  const auto b = profile(p1, grid, 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_TRUE(b[i].L[j] <= a[i].L[j]);
  }
}

TEST(Profile, RankDeficientPool) {
  const auto t = parse_target("veronese:e", 2);
  std::vector<ApproxVector> pool{make_vector(t, {1, 3, 7}), make_vector(t, {2, 5, 15})};
  EXPECT_THROW(profile(pool, {R(1)}, 2), dioph::InsufficientRank);
}

TEST(Profile, Grid) {
  const auto t = parse_target("veronese:golden", 1);
  const auto seq = minimal_points(enumerate_candidates(t, 1000, 0));
  const auto grid = build_q_grid(seq, R(3), 10);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_TRUE(grid[i - 1] < grid[i]);
  EXPECT_TRUE(grid.front() == 0);
  EXPECT_NEAR(default_q_max(2, 1000).to_double(), 2 * std::log(1000.0) / 3, 1e-12);
}

TEST(Estimates, GoldenIsBadlyApproximable) {
  const auto t = parse_target("veronese:golden", 1);
  const auto pool = enumerate_candidates(t, 10000, 0);
  const auto seq = minimal_points(pool);
  const auto prof = profile(pool, build_q_grid(seq, default_q_max(1, 10000), 200), 1);
  const auto est = estimate_exponents(seq, prof, 1);
  EXPECT_NEAR(est.lambda_est.to_double(), 1.0, 0.05);
  EXPECT_NEAR(est.lambda_hat_est.to_double(), 1.0, 0.05);
  EXPECT_TRUE(est.lambda_hat_est <= est.lambda_est);
  EXPECT_TRUE(abs(est.w_hat_est - dioph::bounds::transfer_dual(1, est.psi_low_est)) < R(1e-40));
  EXPECT_TRUE(abs(est.w_est - dioph::bounds::transfer_dual(1, est.psi_high_est)) < R(1e-40));
  EXPECT_GE(est.records_used, 3u);
}

TEST(Estimates, LiouvilleIsVeryWellApproximable) {
  const auto t = parse_target("veronese:liouville", 1);
  const auto pool = enumerate_candidates(t, 200000, 0);
  const auto seq = minimal_points(pool);
  const auto prof = profile(pool, build_q_grid(seq, default_q_max(1, 200000), 100), 1);
  const auto est = estimate_exponents(seq, prof, 1, 0.9);
  EXPECT_TRUE(est.lambda_est > 5) << est.lambda_est;
}

TEST(Estimates, TooFewRecords) {
  const auto t = parse_target("veronese:golden", 1);
  const auto pool = enumerate_candidates(t, 3, 0);
  const auto seq = minimal_points(pool);
  const auto prof = profile(pool, {R(0), R(0.5)}, 1);
  EXPECT_THROW(estimate_exponents(seq, prof, 1), dioph::InsufficientData);
}

TEST(Structure, RegularGraphHasZeroMargins) {
  const int n = 3;
  const Real a = Real::parse("0.4");
  const Real b = dioph::bounds::beta_for_equality(n, a, dioph::Accuracy{256, 1e-72});
  const auto seq = regular_graph_sequence(n, a, b, 12, R(2));
  const auto rep = check_theorem_v(seq, n, a, b);
  EXPECT_TRUE(rep.hypothesis_ok);
  EXPECT_TRUE(rep.independence_ok);
  EXPECT_TRUE(rep.record_ok);
  EXPECT_TRUE(rep.fitted_C < R(1e-30)) << rep.fitted_C;
  EXPECT_GT(rep.pairs_checked, 0u);
}

TEST(Structure, GoldenPasses) {
  const auto t = parse_target("veronese:golden", 1);
  const auto pool = enumerate_candidates(t, 10000, 0);
  const auto seq = minimal_points(pool);
  const auto rep = check_theorem_v(seq, 1, R(1), R(1), &pool);
  EXPECT_TRUE(rep.record_ok);
  EXPECT_TRUE(rep.independence_ok);
  EXPECT_TRUE(rep.fitted_C.is_finite());
}

TEST(Structure, DetectsDependenceAndBrokenRecords) {
  const int n = 2;
  const Real a = Real::parse("0.6");
  const Real b = dioph::bounds::beta_for_equality(n, a, dioph::Accuracy{256, 1e-72});
  auto seq = regular_graph_sequence(n, a, b, 8, R(2));
  auto dup = seq;
  dup.points[4].coords = dup.points[3].coords;
  EXPECT_FALSE(check_theorem_v(dup, n, a, b).independence_ok);

  auto broken = seq;
  broken.points[5].error = broken.points[4].error * 2;
  broken.points[5].log_error = dioph::pgn::detail::to_log_double(broken.points[5].error);
  EXPECT_FALSE(check_theorem_v(broken, n, a, b).record_ok);

  seq.points.resize(3);
  EXPECT_THROW(check_theorem_v(seq, n, a, b), dioph::InsufficientData);
}

TEST(Structure, SyntheticSequenceValidation) {
  EXPECT_THROW(regular_graph_sequence(2, R(0.5), R(0.5), 5, R(1)), dioph::DomainError);
  EXPECT_THROW(regular_graph_sequence(2, R(0.5), R(0.7), 5, R(-1)), dioph::DomainError);
}

TEST(Diagnostics, OrderingOnRegularGraph) {
  const int n = 2;
  const Real a = Real::parse("0.55");
  const Real b = dioph::bounds::beta_for_equality(n, a, dioph::Accuracy{256, 1e-72});
  const auto seq = regular_graph_sequence(n, a, b, 10, R(3));
  const auto rows = intersection_diagnostics(seq, n);
  EXPECT_EQ(rows.size(), seq.size() - n - 1);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.qr_order_ok) << r.k;
    EXPECT_TRUE(r.up_order_ok) << r.k;
    EXPECT_TRUE(r.q_k < r.r_k);
  }
}

TEST(Diagnostics, CrossingMatchesSValues) {
  const auto t = parse_target("veronese:e", 2);
  const auto seq = minimal_points(enumerate_candidates(t, 5000, 1));
  const auto rows = intersection_diagnostics(seq, 2);
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) {
    const Real s = crossing(seq[r.k - 1], seq[r.k + 1], 2);
    EXPECT_TRUE(abs(r.s_k - s) < R(1e-50)) << r.k;
    EXPECT_TRUE(abs(r.r_k - crossing(seq[r.k], seq[r.k + 1], 2)) < R(1e-50)) << r.k;
  }
}
