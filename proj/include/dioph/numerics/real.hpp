#pragma once

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>

#include "dioph/error.hpp"

namespace dioph {

inline constexpr mpfr_prec_t kDefaultPrecisionBits = 256;

template <typename T>
concept IntegralScalar = std::integral<T> && !std::same_as<T, bool>;

/// Arbitrary-precision real number backed by MPFR.
///
/// Each value carries its own mantissa precision. An operation on two Reals
/// rounds to the larger of the two precisions; an operation mixing a Real
/// with a built-in integer or double keeps the Real's precision. All
/// rounding is to nearest, ties to even.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = kDefaultPrecisionBits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }

  template <IntegralScalar I>
  Real(I value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    if constexpr (std::is_signed_v<I>) {
      mpfr_set_si(v_, static_cast<long>(value), MPFR_RNDN);
    } else {
      mpfr_set_ui(v_, static_cast<unsigned long>(value), MPFR_RNDN);
    }
  }

  Real(double value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }

  Real(const Real& other) {
    mpfr_init2(v_, other.bits());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }

  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, other.bits());
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  /// Parses a decimal (or "inf"/"-inf") string. Throws DomainError.
  static Real parse(std::string_view text, mpfr_prec_t bits = kDefaultPrecisionBits) {
    Real r(bits);
    std::string s(text);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end == s.c_str() || *end != '\0' || r.is_nan()) {
      throw DomainError("cannot parse real number '" + s + "'");
    }
    return r;
  }

  static Real infinity(int sign = 1, mpfr_prec_t bits = kDefaultPrecisionBits) {
    Real r(bits);
    mpfr_set_inf(r.v_, sign);
    return r;
  }

  static Real nan(mpfr_prec_t bits = kDefaultPrecisionBits) {
    Real r(bits);
    mpfr_set_nan(r.v_);
    return r;
  }

  static Real pi(mpfr_prec_t bits = kDefaultPrecisionBits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  static Real euler(mpfr_prec_t bits = kDefaultPrecisionBits) {
    Real one(1, bits);
    Real r(bits);
    mpfr_exp(r.v_, one.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }

  /// Copy rounded (or exactly widened) to another precision.
  Real with_bits(mpfr_prec_t bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  bool is_nan() const noexcept { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const noexcept { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  // -1, 0 or +1; NaN reports 0.
  int sign() const noexcept { return is_nan() ? 0 : mpfr_sgn(v_); }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Nearest integer (ties to even). Throws DomainError when out of range.
  long to_long_nearest() const {
    if (!is_finite() || !mpfr_fits_slong_p(v_, MPFR_RNDN)) {
      throw DomainError("value does not fit a 64-bit integer");
    }
    return mpfr_get_si(v_, MPFR_RNDN);
  }

  /// Decimal rendering with `digits` significant digits, round-half-even.
  std::string to_string(int digits = 12) const {
    if (is_nan()) return "nan";
    if (is_inf()) return sign() > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNg", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  /// Rendering with all digits justified by the working precision.
  std::string to_string_full() const {
    return to_string(static_cast<int>(static_cast<double>(bits()) * 0.30103) + 1);
  }

  mpfr_srcptr raw() const noexcept { return v_; }
  mpfr_ptr raw() noexcept { return v_; }

  Real operator-() const {
    Real r(bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { widen_to(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { widen_to(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { widen_to(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { widen_to(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  template <IntegralScalar I>
  Real& operator+=(I o) { mpfr_add_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
  template <IntegralScalar I>
  Real& operator-=(I o) { mpfr_sub_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
  template <IntegralScalar I>
  Real& operator*=(I o) { mpfr_mul_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
  template <IntegralScalar I>
  Real& operator/=(I o) { mpfr_div_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }

  Real& operator+=(double o) { mpfr_add_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(double o) { mpfr_sub_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

  template <IntegralScalar I> friend Real operator+(Real a, I b) { a += b; return a; }
  template <IntegralScalar I> friend Real operator+(I a, Real b) { b += a; return b; }
  template <IntegralScalar I> friend Real operator-(Real a, I b) { a -= b; return a; }
  template <IntegralScalar I> friend Real operator-(I a, const Real& b) {
    Real r(b.bits());
    mpfr_si_sub(r.v_, static_cast<long>(a), b.v_, MPFR_RNDN);
    return r;
  }
  template <IntegralScalar I> friend Real operator*(Real a, I b) { a *= b; return a; }
  template <IntegralScalar I> friend Real operator*(I a, Real b) { b *= a; return b; }
  template <IntegralScalar I> friend Real operator/(Real a, I b) { a /= b; return a; }
  template <IntegralScalar I> friend Real operator/(I a, const Real& b) {
    Real r(b.bits());
    mpfr_si_div(r.v_, static_cast<long>(a), b.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(Real a, double b) { a += b; return a; }
  friend Real operator+(double a, Real b) { b += a; return b; }
  friend Real operator-(Real a, double b) { a -= b; return a; }
  friend Real operator-(double a, const Real& b) {
    Real r(b.bits());
    mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(Real a, double b) { a *= b; return a; }
  friend Real operator*(double a, Real b) { b *= a; return b; }
  friend Real operator/(Real a, double b) { a /= b; return a; }
  friend Real operator/(double a, const Real& b) {
    Real r(b.bits());
    mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
    return mpfr_cmp(a.v_, b.v_) <=> 0;
  }
  template <IntegralScalar I>
  friend bool operator==(const Real& a, I b) {
    return !a.is_nan() && mpfr_cmp_si(a.v_, static_cast<long>(b)) == 0;
  }
  template <IntegralScalar I>
  friend std::partial_ordering operator<=>(const Real& a, I b) {
    if (a.is_nan()) return std::partial_ordering::unordered;
    return mpfr_cmp_si(a.v_, static_cast<long>(b)) <=> 0;
  }
  friend bool operator==(const Real& a, double b) {
    return !a.is_nan() && mpfr_cmp_d(a.v_, b) == 0;
  }
  friend std::partial_ordering operator<=>(const Real& a, double b) {
    if (a.is_nan() || b != b) return std::partial_ordering::unordered;
    return mpfr_cmp_d(a.v_, b) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& r) { return os << r.to_string(); }

  // Unary helpers used by the free functions below.
  template <typename Fn>
  Real apply(Fn fn) const {
    Real r(bits());
    fn(r.v_, v_, MPFR_RNDN);
    return r;
  }

 private:
  void widen_to(const Real& o) {
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  }

  template <typename Op>
  static Real binary(const Real& a, const Real& b, Op op) {
    Real r(std::max(a.bits(), b.bits()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

inline Real exp(const Real& x) { return x.apply(mpfr_exp); }
inline Real log(const Real& x) { return x.apply(mpfr_log); }
inline Real sqrt(const Real& x) { return x.apply(mpfr_sqrt); }
inline Real abs(const Real& x) { return x.apply(mpfr_abs); }
inline Real cos(const Real& x) { return x.apply(mpfr_cos); }

inline Real pow(const Real& base, long exponent) {
  Real r(base.bits());
  mpfr_pow_si(r.raw(), base.raw(), exponent, MPFR_RNDN);
  return r;
}

inline Real pow(const Real& base, const Real& exponent) {
  Real r(std::max(base.bits(), exponent.bits()));
  mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
  return r;
}

inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

/// Relative distance |a-b| / max(|a|,|b|,1).
inline Real relative_difference(const Real& a, const Real& b) {
  Real scale = max(max(abs(a), abs(b)), Real(1, std::max(a.bits(), b.bits())));
  return abs(a - b) / scale;
}

}  // namespace dioph
