#include <gtest/gtest.h>

#include <cmath>

#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/numerics/roots.hpp"

using dioph::Bracket;
using dioph::Real;

namespace {

Real R(double v, mpfr_prec_t bits = 256) { return Real(v, bits); }

}  // namespace

TEST(Real, BinaryOpsTakeLargerPrecision) {
  const Real a(1, 64);
  const Real b(3, 300);
  EXPECT_EQ((a / b).bits(), 300);
  EXPECT_EQ((b - a).bits(), 300);
  EXPECT_EQ((a * 2).bits(), 64);
}

TEST(Real, ParseAndPrint) {
  EXPECT_EQ(Real::parse("0.125").to_string(), "0.125");
  EXPECT_EQ(Real::parse("1e-3").to_string(3), "0.001");
  EXPECT_THROW(Real::parse("abc"), dioph::DomainError);
  EXPECT_THROW(Real::parse("1.5x"), dioph::DomainError);
  EXPECT_THROW(Real::parse("nan"), dioph::DomainError);
}

TEST(Real, RoundHalfEvenPrinting) {
  EXPECT_EQ(Real::parse("0.125").to_string(2), "0.12");
  EXPECT_EQ(Real::parse("0.375").to_string(2), "0.38");
}

TEST(Real, ComparisonsAndSpecials) {
  EXPECT_TRUE(R(1) < R(2));
  EXPECT_TRUE(R(2) == 2);
  EXPECT_TRUE(Real::infinity() > 1e300);
  const Real nan = Real::nan();
  EXPECT_FALSE(nan < 0);
  EXPECT_FALSE(nan >= 0);
  EXPECT_EQ(nan.sign(), 0);
}

TEST(Real, ConstantsAgreeWithDouble) {
  EXPECT_NEAR(Real::pi().to_double(), M_PI, 1e-15);
  EXPECT_NEAR(Real::euler().to_double(), M_E, 1e-15);
}

TEST(FindRoot, SquareRootOfTwo) {
  auto f = [](const Real& t) { return t * t - 2; };
  const Real r = dioph::find_root(f, Bracket{R(1), R(2), -1, 1}, R(1e-30));
  EXPECT_TRUE(abs(r - sqrt(R(2))) < R(1e-30));
}

TEST(FindRoot, ExpOverT) {
  auto f = [](const Real& t) { return exp(t) / t - 2 * sqrt(Real::euler(t.bits())); };
  const Real r = dioph::find_root(f, Bracket{R(1), R(3), -1, 1}, R(1e-12));
  EXPECT_NEAR(r.to_double(), 1.7564, 5e-5);
}

TEST(FindRoot, Linear) {
  auto f = [](const Real& t) { return t - 5; };
  // The midpoint of (4, 6) is the root itself.
  EXPECT_TRUE(dioph::find_root(f, Bracket{R(4), R(6), -1, 1}, R(1e-10)) == 5);
  const Real r = dioph::find_root(f, Bracket{R(4), R(7), -1, 1}, R(1e-10));
  EXPECT_TRUE(abs(r - 5) <= R(1e-10));
}

TEST(FindRoot, MirroredFunctionAgrees) {
  auto f = [](const Real& t) { return cos(t) - t; };
  auto g = [&](const Real& t) { return -f(t); };
  const Real tol = R(1e-25);
  const Real a = dioph::find_root(f, Bracket{R(0), R(1), 1, -1}, tol);
  const Real b = dioph::find_root(g, Bracket{R(0), R(1), -1, 1}, tol);
  EXPECT_TRUE(abs(a - b) <= tol);
}

TEST(FindRoot, IllinoisStaysInBracketAndAgrees) {
  auto f = [](const Real& t) { return pow(t, 9) - Real(1, t.bits()) / 1000; };
  const Real tol = R(1e-30);
  const Real a = dioph::find_root(f, Bracket{R(0), R(2), -1, 1}, tol);
  const Real b = dioph::find_root(f, Bracket{R(0), R(2), -1, 1}, tol, dioph::RootMethod::illinois);
  EXPECT_TRUE(abs(a - b) <= tol * 2);
}

TEST(FindRoot, RejectsBadBrackets) {
  auto f = [](const Real& t) { return t * t + 1; };
  EXPECT_THROW(dioph::find_root(f, Bracket{R(-1), R(1), -1, 1}, R(1e-10)), dioph::InvalidBracket);
  auto g = [](const Real& t) { return t; };
  EXPECT_THROW(dioph::find_root(g, Bracket{R(1), R(-1), -1, 1}, R(1e-10)), dioph::InvalidBracket);
}

TEST(FindRoot, ToleranceBeyondPrecisionIsNoConvergence) {
  auto f = [](const Real& t) { return t * t - 2; };
  EXPECT_THROW(dioph::find_root(f, Bracket{R(1, 64), R(2, 64), -1, 1}, R(1e-40, 64)), dioph::NoConvergence);
}

TEST(FindRoot, DoublingPrecisionKeepsStableDigits) {
  auto f = [](const Real& t) { return exp(t) - 3 * t; };
  const Real lo = dioph::find_root(f, Bracket{R(0, 128), R(1, 128), 1, -1}, R(1e-30, 128));
  const Real hi = dioph::find_root(f, Bracket{R(0, 256), R(1, 256), 1, -1}, R(1e-30, 256));
  EXPECT_TRUE(abs(lo - hi) <= R(2e-30));
}

TEST(ScanForBracket, SquareRootGrid) {
  auto f = [](const Real& t) { return t * t - 2; };
  const Bracket b = dioph::scan_for_bracket(f, R(0), R(2), 4);
  EXPECT_TRUE(b.lo == 1.0);
  EXPECT_TRUE(b.hi == 1.5);
}

TEST(ScanForBracket, Cosine) {
  auto f = [](const Real& t) { return cos(t); };
  const Bracket b = dioph::scan_for_bracket(f, R(0), R(4), 8);
  EXPECT_TRUE(b.lo == 1.5);
  EXPECT_TRUE(b.hi == 2.0);
}

TEST(ScanForBracket, SkipsInvalidCells) {
  // Undefined below 1 where the function would otherwise change sign.
  auto f = [](const Real& t) {
    if (t < 1) return Real::nan(t.bits());
    return t - 2.5;
  };
  auto all = dioph::scan_brackets(f, R(-4), R(4), 8);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_TRUE(all[0].lo == 2.0);
  EXPECT_TRUE(all[0].hi == 3.0);
  EXPECT_EQ(all[0].f_lo_sign, -1);
}

TEST(ScanForBracket, NoSignChange) {
  auto f = [](const Real& t) { return t * t + 1; };
  EXPECT_THROW(dioph::scan_for_bracket(f, R(-2), R(2), 10), dioph::NoSignChange);
}

TEST(ScanForBracket, RejectsBadInput) {
  auto f = [](const Real& t) { return t; };
  EXPECT_THROW(dioph::scan_for_bracket(f, R(1), R(0), 4), dioph::DomainError);
  EXPECT_THROW(dioph::scan_for_bracket(f, R(0), R(1), 1), dioph::DomainError);
}
