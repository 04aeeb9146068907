#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dioph/bounds/constants.hpp"
#include "dioph/bounds/defect.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/pgn/analysis.hpp"
#include "dioph/pgn/approx.hpp"
#include "dioph/pgn/profile.hpp"

namespace dioph::io {

using json = nlohmann::ordered_json;

inline constexpr int kDefaultDigits = 12;

/// Reals are written as decimal strings so that inf, nan and digits past
/// double precision survive.
inline std::string real_text(const Real& r, int digits = kDefaultDigits) { return r.to_string(digits); }

inline json optional_real(const std::optional<Real>& r, int digits) {
  return r ? json(real_text(*r, digits)) : json(nullptr);
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << "\r\n";
}

/// Columns: x, y_1..y_n, Y, log_x, log_Y.
inline void write_points_csv(std::ostream& os, const pgn::MinimalPointSequence& seq, int digits = kDefaultDigits) {
  std::vector<std::string> head{"x"};
  for (int i = 1; i <= seq.n; ++i) head.push_back("y_" + std::to_string(i));
  head.insert(head.end(), {"Y", "log_x", "log_Y"});
  write_csv_row(os, head);
  for (const auto& p : seq.points) {
    std::vector<std::string> row;
    for (auto c : p.coords) row.push_back(std::to_string(c));
    row.push_back(real_text(p.error, digits));
    row.push_back(real_text(p.exact_log_x(), digits));
    row.push_back(real_text(p.exact_log_error(), digits));
    write_csv_row(os, row);
  }
}

/// Columns: q, L_1..L_{n+1}.
inline void write_profile_csv(std::ostream& os, const std::vector<pgn::ProfileSample>& prof, int n,
                              int digits = kDefaultDigits) {
  std::vector<std::string> head{"q"};
  for (int j = 1; j <= n + 1; ++j) head.push_back("L_" + std::to_string(j));
  write_csv_row(os, head);
  for (const auto& s : prof) {
    std::vector<std::string> row{real_text(s.q, digits)};
    for (const auto& l : s.L) row.push_back(real_text(l, digits));
    write_csv_row(os, row);
  }
}

inline void write_diagnostics_csv(std::ostream& os, const std::vector<pgn::IntersectionRow>& rows,
                                  int digits = kDefaultDigits) {
  write_csv_row(os, {"k", "q_k", "r_k", "s_k", "u_k", "p_k", "qr_order_ok", "up_order_ok"});
  for (const auto& r : rows) {
    write_csv_row(os, {std::to_string(r.k), real_text(r.q_k, digits), real_text(r.r_k, digits),
                       real_text(r.s_k, digits), real_text(r.u_k, digits), real_text(r.p_k, digits),
                       r.qr_order_ok ? "true" : "false", r.up_order_ok ? "true" : "false"});
  }
}

inline json to_json(const pgn::ExponentEstimates& e, int digits = kDefaultDigits) {
  return json{{"lambda_est", real_text(e.lambda_est, digits)},
              {"lambda_hat_est", real_text(e.lambda_hat_est, digits)},
              {"psi_low_est", real_text(e.psi_low_est, digits)},
              {"psi_high_est", real_text(e.psi_high_est, digits)},
              {"w_est", real_text(e.w_est, digits)},
              {"w_hat_est", real_text(e.w_hat_est, digits)},
              {"window",
               {{"log_x_min", real_text(e.window_log_x_min, digits)},
                {"log_x_max", real_text(e.window_log_x_max, digits)},
                {"q_min", real_text(e.window_q_min, digits)},
                {"q_max", real_text(e.window_q_max, digits)},
                {"records_used", e.records_used},
                {"samples_used", e.samples_used}}}};
}

inline json to_json(const pgn::TheoremVReport& r, int digits = kDefaultDigits) {
  return json{{"alpha", real_text(r.alpha, digits)},
              {"beta", real_text(r.beta, digits)},
              {"epsilon", real_text(r.epsilon, digits)},
              {"threshold", real_text(r.threshold, digits)},
              {"hypothesis_ok", r.hypothesis_ok},
              {"fitted_C", real_text(r.fitted_C, digits)},
              {"prop1_margin", real_text(r.prop1_margin, digits)},
              {"prop2_margin", real_text(r.prop2_margin, digits)},
              {"independence_ok", r.independence_ok},
              {"record_ok", r.record_ok},
              {"pairs_checked", r.pairs_checked},
              {"problems", r.problems}};
}

inline json to_json(const bounds::ConstantsReport& r, int digits = kDefaultDigits) {
  return json{{"n", r.n},
              {"tau", optional_real(r.tau_n, digits)},
              {"sigma", optional_real(r.sigma_n, digits)},
              {"w_aux", optional_real(r.w_n_aux, digits)},
              {"mu", optional_real(r.mu_n, digits)},
              {"regular_graph_bound", optional_real(r.regular_graph_bound, digits)},
              {"chi_estimate", optional_real(r.chi_estimate, digits)},
              {"laurent_bound", optional_real(r.laurent_bound, digits)},
              {"theta", real_text(r.theta, digits)}};
}

inline json to_json(const bounds::BoundContext& c, int digits = kDefaultDigits) {
  return json{{"n", c.n},
              {"alpha", real_text(c.alpha, digits)},
              {"beta", real_text(c.beta, digits)},
              {"epsilon", real_text(c.epsilon, digits)},
              {"threshold", real_text(c.threshold, digits)},
              {"phi", real_text(c.phi, digits)},
              {"rho", real_text(c.rho, digits)},
              {"S", real_text(c.S, digits)},
              {"T", real_text(c.T, digits)}};
}

inline json to_json(const bounds::DualBoundSet& d, int digits = kDefaultDigits) {
  return json{{"what_lower", real_text(d.what_lower, digits)},
              {"what_upper", real_text(d.what_upper, digits)},
              {"w_lower", real_text(d.w_lower, digits)},
              {"w_upper", real_text(d.w_upper, digits)}};
}

inline json to_json(const pgn::MinimalPointSequence& seq, int digits = kDefaultDigits) {
  json pts = json::array();
  for (const auto& p : seq.points) {
    json coords = json::array();
    for (auto c : p.coords) coords.push_back(std::to_string(c));
    pts.push_back({{"coords", coords},
                   {"Y", real_text(p.error, digits)},
                   {"log_x", real_text(p.exact_log_x(), digits)},
                   {"log_Y", real_text(p.exact_log_error(), digits)}});
  }
  return json{{"n", seq.n}, {"points", pts}};
}

}  // namespace dioph::io
