#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/numerics/real.hpp"

namespace dioph::pgn {

enum class TargetSource { veronese, explicit_list };

/// A point (xi_1, ..., xi_n) of R^n to be approximated by rationals with a
/// common denominator. Irrationality is the caller's assertion.
struct TargetPoint {
  int n = 0;
  std::vector<Real> coords;
  TargetSource source = TargetSource::explicit_list;
  std::string label;  // e.g. "veronese:e" or "explicit:0.1,0.2"
  mpfr_prec_t bits = kDefaultPrecisionBits;
};

/// sum_{m=1}^{terms} 10^(-m!).
inline Real liouville_number(mpfr_prec_t bits, int terms = 10) {
  Real sum(0, bits);
  long factorial = 1;
  const Real ten(10, bits);
  for (int m = 1; m <= terms; ++m) {
    factorial *= m;
    sum += pow(ten, -factorial);
  }
  return sum;
}

/// Built-in constants: e, pi, sqrt2, golden, liouville. Throws DomainError
/// for any other name.
inline Real named_constant(std::string_view name, mpfr_prec_t bits) {
  if (name == "e") return Real::euler(bits);
  if (name == "pi") return Real::pi(bits);
  if (name == "sqrt2") return sqrt(Real(2, bits));
  if (name == "golden") return (1 + sqrt(Real(5, bits))) / 2;
  if (name == "liouville") return liouville_number(bits);
  throw DomainError("unknown constant '" + std::string(name) + "'");
}

inline bool is_named_constant(std::string_view name) {
  return name == "e" || name == "pi" || name == "sqrt2" || name == "golden" || name == "liouville";
}

/// (xi, xi^2, ..., xi^n).
inline TargetPoint veronese_target(const Real& xi, int n, std::string label = {}) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  if (!xi.is_finite()) throw DomainError("target coordinate must be finite");
  TargetPoint t;
  t.n = n;
  t.bits = xi.bits();
  t.source = TargetSource::veronese;
  t.label = label.empty() ? "veronese:" + xi.to_string() : std::move(label);
  Real p = xi;
  for (int i = 0; i < n; ++i) {
    t.coords.push_back(p);
    p *= xi;
  }
  return t;
}

inline TargetPoint explicit_target(std::vector<Real> coords, std::string label = {}) {
  if (coords.empty()) throw DomainError("explicit target needs at least one coordinate");
  TargetPoint t;
  t.n = static_cast<int>(coords.size());
  t.bits = coords.front().bits();
  for (const Real& c : coords) {
    if (!c.is_finite()) throw DomainError("target coordinate must be finite");
    t.bits = std::max(t.bits, c.bits());
  }
  t.coords = std::move(coords);
  t.source = TargetSource::explicit_list;
  t.label = std::move(label);
  return t;
}

/// Parses "veronese:<decimal|name>" or "explicit:<v1,v2,...>". For veronese
/// targets `n` sets the dimension; for explicit ones it must be 0 or match
/// the list length.
inline TargetPoint parse_target(std::string_view text, int n, mpfr_prec_t bits = kDefaultPrecisionBits) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("target must look like veronese:<value> or explicit:<list>");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (body.empty()) throw DomainError("empty target value");

  if (kind == "veronese") {
    const Real xi = is_named_constant(body) ? named_constant(body, bits) : Real::parse(body, bits);
    return veronese_target(xi, n, std::string(text));
  }
  if (kind == "explicit") {
    std::vector<Real> coords;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      if (comma == std::string_view::npos) comma = body.size();
      const std::string_view item = body.substr(pos, comma - pos);
      coords.push_back(is_named_constant(item) ? named_constant(item, bits) : Real::parse(item, bits));
      pos = comma + 1;
    }
    if (n != 0 && static_cast<std::size_t>(n) != coords.size()) {
      throw DomainError("explicit target has " + std::to_string(coords.size()) +
                        " coordinates but n = " + std::to_string(n));
    }
    return explicit_target(std::move(coords), std::string(text));
  }
  throw DomainError("unknown target kind '" + std::string(kind) + "'");
}

}  // namespace dioph::pgn
