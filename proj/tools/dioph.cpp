// Command-line front end: constants tables, dual-exponent bounds, best
// approximation simulations and the verification suites.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dioph/bounds/constants.hpp"
#include "dioph/bounds/defect.hpp"
#include "dioph/error.hpp"
#include "dioph/io/export.hpp"
#include "dioph/numerics/real.hpp"
#include "dioph/parallel.hpp"
#include "dioph/pgn/analysis.hpp"
#include "dioph/pgn/approx.hpp"
#include "dioph/pgn/profile.hpp"
#include "dioph/pgn/target.hpp"
#include "dioph/verify/suites.hpp"

namespace {

using dioph::Real;
using dioph::io::json;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kDomain = 3, kNumeric = 4 };

struct RunConfig {
  long precision_bits = dioph::kDefaultPrecisionBits;
  std::string tol = "1e-30";
  std::string format = "text";
  std::string threads = "auto";
  int digits = dioph::io::kDefaultDigits;

  dioph::Accuracy accuracy() const {
    dioph::Accuracy acc;
    acc.bits = precision_bits;
    acc.rel_tol = std::stod(tol);
    return acc;
  }
  unsigned thread_count() const { return threads == "auto" ? 0u : static_cast<unsigned>(std::stoul(threads)); }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(dioph::ErrorCode code) {
  using dioph::ErrorCode;
  switch (code) {
    case ErrorCode::domain:
    case ErrorCode::hypothesis_violated:
    case ErrorCode::degenerate_context:
    case ErrorCode::not_regular_graph:
    case ErrorCode::rational_dependence:
      return kDomain;
    default:
      return kNumeric;
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.precision_bits < 64) throw UsageError("--precision must be at least 64");
  double tol = 0;
  try {
    std::size_t used = 0;
    tol = std::stod(cfg.tol, &used);
    if (used != cfg.tol.size()) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw UsageError("--tol must be a positive number, got '" + cfg.tol + "'");
  }
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  if (cfg.threads != "auto") {
    try {
      if (std::stol(cfg.threads) < 1) throw std::invalid_argument("nonpositive");
    } catch (const std::exception&) {
      throw UsageError("--threads must be 'auto' or a positive integer");
    }
  }
}

/// "a..b" or "a".
std::pair<int, int> parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    if (lo > hi) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::exception&) {
    throw UsageError("malformed range '" + text + "', expected a or a..b");
  }
}

Real parse_real_arg(const std::string& text, mpfr_prec_t bits) {
  if (text == "inf" || text == "+inf") return Real::infinity(1, bits);
  return Real::parse(text, bits);
}

void emit_object(const json& obj, const std::string& format) {
  if (format == "json") {
    std::cout << obj.dump() << "\n";
  } else if (format == "csv") {
    dioph::io::write_csv_row(std::cout, {"key", "value"});
    for (const auto& [k, v] : obj.items()) {
      dioph::io::write_csv_row(std::cout, {k, v.is_string() ? v.get<std::string>() : v.dump()});
    }
  } else {
    for (const auto& [k, v] : obj.items()) {
      std::cout << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

int cmd_bounds(const RunConfig& cfg, const std::string& range, bool even_only) {
  const auto [lo, hi] = parse_range(range);
  if (lo < 1) throw UsageError("n must be >= 1");
  std::vector<int> ns;
  for (int n = lo; n <= hi; ++n) {
    if (!even_only || n % 2 == 0) ns.push_back(n);
  }
  if (ns.empty()) throw UsageError("range '" + range + "' selects no n");
  const dioph::Accuracy acc = cfg.accuracy();
  std::vector<dioph::bounds::ConstantsReport> reports(ns.size());
  dioph::parallel_for(ns.size(), cfg.thread_count(),
                      [&](std::size_t i) { reports[i] = dioph::bounds::constants_report(ns[i], acc); });

  const std::vector<std::string> cols{"n", "tau", "sigma", "w_aux", "mu", "regular_graph_bound", "chi_estimate",
                                      "laurent_bound"};
  auto cell = [&](const json& row, const std::string& key) {
    const json& v = row.at(key);
    return v.is_null() ? std::string("n/a") : (v.is_string() ? v.get<std::string>() : v.dump());
  };
  if (cfg.format == "json") {
    for (const auto& r : reports) std::cout << dioph::io::to_json(r, cfg.digits).dump() << "\n";
  } else if (cfg.format == "csv") {
    std::vector<std::string> head = cols;
    head.push_back("theta");
    dioph::io::write_csv_row(std::cout, head);
    for (const auto& r : reports) {
      const json row = dioph::io::to_json(r, cfg.digits);
      std::vector<std::string> fields;
      for (const auto& c : head) fields.push_back(cell(row, c));
      dioph::io::write_csv_row(std::cout, fields);
    }
  } else {
    std::cout << "theta = " << reports.front().theta.to_string(cfg.digits) << "\n";
    for (const auto& r : reports) {
      const json row = dioph::io::to_json(r, cfg.digits);
      std::cout << "n = " << r.n;
      for (std::size_t i = 1; i < cols.size(); ++i) std::cout << "  " << cols[i] << " = " << cell(row, cols[i]);
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_dual_bounds(const RunConfig& cfg, int n, const std::string& alpha_text, const std::string& beta_text) {
  const mpfr_prec_t bits = cfg.precision_bits;
  const auto ctx = dioph::bounds::mm_defect(n, parse_real_arg(alpha_text, bits), parse_real_arg(beta_text, bits));
  json out = dioph::io::to_json(ctx, cfg.digits);
  try {
    const auto b = dioph::bounds::dual_bounds(ctx);
    const json bj = dioph::io::to_json(b, cfg.digits);
    for (auto it = bj.begin(); it != bj.end(); ++it) out[it.key()] = it.value();
    emit_object(out, cfg.format);
    return kOk;
  } catch (const dioph::Error& e) {
    out["error"] = dioph::to_string(e.code());
    out["message"] = e.what();
    emit_object(out, cfg.format);
    return exit_code_for(e.code());
  }
}

struct SimulateOptions {
  std::string target;
  int n = 0;
  std::int64_t x_max = 10000;
  int widen = 1;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::string out_dir = ".";
  int grid = 200;
  double window = 0.5;
  std::int64_t x_max_cap = 1000000;
};

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << body;
}

int cmd_simulate(const RunConfig& cfg, const SimulateOptions& opt) {
  if (opt.x_max < 1) throw UsageError("--xmax must be >= 1");
  if (opt.x_max > opt.x_max_cap) {
    throw UsageError("--xmax " + std::to_string(opt.x_max) + " exceeds the cap " + std::to_string(opt.x_max_cap) +
                     "; raise it with --xmax-cap");
  }
  if (opt.alpha.has_value() != opt.beta.has_value()) throw UsageError("--alpha and --beta go together");
  if (opt.target.rfind("veronese:", 0) == 0 && opt.n < 1) throw UsageError("veronese targets need --n >= 1");

  const mpfr_prec_t bits = cfg.precision_bits;
  const auto target = dioph::pgn::parse_target(opt.target, opt.n, bits);
  const int n = target.n;
  const unsigned threads = cfg.thread_count();

  const auto pool = dioph::pgn::enumerate_candidates(target, opt.x_max, opt.widen, threads);
  const auto seq = dioph::pgn::minimal_points(pool);
  const auto grid = dioph::pgn::build_q_grid(seq, dioph::pgn::default_q_max(n, opt.x_max, bits), opt.grid);
  const auto prof = dioph::pgn::profile(pool, grid, n, threads);

  namespace fs = std::filesystem;
  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  {
    std::ostringstream os;
    dioph::io::write_points_csv(os, seq, cfg.digits);
    write_file(dir / "minimal_points.csv", os.str());
  }
  {
    std::ostringstream os;
    dioph::io::write_profile_csv(os, prof, n, cfg.digits);
    write_file(dir / "profile.csv", os.str());
  }

  json summary{{"target", target.label},
               {"n", n},
               {"x_max", std::to_string(opt.x_max)},
               {"widen", opt.widen},
               {"pool_size", pool.size()},
               {"minimal_points", seq.size()},
               {"grid_points", grid.size()},
               {"minkowski_defect", dioph::io::real_text(dioph::pgn::minkowski_defect(prof), cfg.digits)}};

  try {
    const auto est = dioph::pgn::estimate_exponents(seq, prof, n, opt.window);
    write_file(dir / "estimates.json", dioph::io::to_json(est, cfg.digits).dump(2) + "\n");
    summary["lambda_est"] = dioph::io::real_text(est.lambda_est, cfg.digits);
    summary["lambda_hat_est"] = dioph::io::real_text(est.lambda_hat_est, cfg.digits);
  } catch (const dioph::InsufficientData& e) {
    write_file(dir / "estimates.json", json{{"error", "insufficient_data"}, {"message", e.what()}}.dump(2) + "\n");
    summary["estimates"] = std::string("insufficient data: ") + e.what();
  }

  try {
    const auto rows = dioph::pgn::intersection_diagnostics(seq, n);
    std::ostringstream os;
    dioph::io::write_diagnostics_csv(os, rows, cfg.digits);
    write_file(dir / "diagnostics.csv", os.str());
  } catch (const dioph::InsufficientData& e) {
    summary["diagnostics"] = std::string("insufficient data: ") + e.what();
  }

  if (opt.alpha) {
    try {
      const auto rep = dioph::pgn::check_theorem_v(seq, n, parse_real_arg(*opt.alpha, bits),
                                                   parse_real_arg(*opt.beta, bits), &pool, opt.window);
      write_file(dir / "structure_report.json", dioph::io::to_json(rep, cfg.digits).dump(2) + "\n");
      summary["fitted_C"] = dioph::io::real_text(rep.fitted_C, cfg.digits);
    } catch (const dioph::InsufficientData& e) {
      summary["structure_report"] = std::string("insufficient data: ") + e.what();
    }
  }
  emit_object(summary, cfg.format);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  const auto& names = dioph::verify::suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw UsageError("unknown suite '" + suite + "'");
  }
  const auto results = dioph::verify::run_suite(suite, cfg.accuracy());
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::cout << json{{"suite", r.suite}, {"check", r.name}, {"passed", r.passed}, {"detail", r.detail}}.dump() << "\n";
  }
  return all ? kOk : kCheckFailed;
}

void report_error(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diophantine exponent bounds and best-approximation simulations"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("DIOPH_PRECISION_BITS")) {
    try {
      cfg.precision_bits = std::stol(env);
    } catch (const std::exception&) {
      report_error("usage", "DIOPH_PRECISION_BITS must be an integer");
      return kUsage;
    }
  }
  app.add_option("--precision", cfg.precision_bits, "Working precision in bits (>= 64)");
  app.add_option("--tol", cfg.tol, "Relative root tolerance");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", cfg.threads, "Worker threads or 'auto'");
  app.add_option("--digits", cfg.digits, "Significant digits in output")->check(CLI::Range(1, 200));

  std::string range;
  bool even_only = false;
  auto* bounds = app.add_subcommand("bounds", "Implicit constants for each n");
  bounds->add_option("--n", range, "n or a..b")->required();
  bounds->add_flag("--even", even_only, "Keep even n only");

  int dual_n = 0;
  std::string alpha_text;
  std::string beta_text;
  auto* dual = app.add_subcommand("dual-bounds", "Defect quantities and the four dual-exponent bounds");
  dual->alias("theorem-new");
  dual->add_option("--n", dual_n, "Dimension")->required();
  dual->add_option("--alpha", alpha_text, "Uniform exponent")->required();
  dual->add_option("--beta", beta_text, "Ordinary exponent (or inf)")->required();

  SimulateOptions sim;
  std::string sim_alpha;
  std::string sim_beta;
  auto* simulate = app.add_subcommand("simulate", "Best approximations and successive minima for a target");
  simulate->add_option("--target", sim.target, "veronese:<value|e|pi|sqrt2|golden|liouville> or explicit:<list>")
      ->required();
  simulate->add_option("--n", sim.n, "Dimension for veronese targets");
  simulate->add_option("--xmax", sim.x_max, "Largest denominator");
  simulate->add_option("--widen", sim.widen, "Neighbours of the rounded vector to include")->check(CLI::Range(0, 5));
  auto* alpha_opt = simulate->add_option("--alpha", sim_alpha, "Uniform exponent for the structure check");
  auto* beta_opt = simulate->add_option("--beta", sim_beta, "Ordinary exponent for the structure check");
  simulate->add_option("--out", sim.out_dir, "Output directory");
  simulate->add_option("--grid", sim.grid, "Uniform q grid points")->check(CLI::Range(2, 100000));
  simulate->add_option("--window", sim.window, "Trailing window fraction")->check(CLI::Range(0.01, 0.99));
  simulate->add_option("--xmax-cap", sim.x_max_cap, "Refuse larger --xmax");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", suite, "constants, corollary, monotonicity, oracle or profile")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    validate(cfg);
    if (*bounds) return cmd_bounds(cfg, range, even_only);
    if (*dual) return cmd_dual_bounds(cfg, dual_n, alpha_text, beta_text);
    if (*simulate) {
      if (*alpha_opt) sim.alpha = sim_alpha;
      if (*beta_opt) sim.beta = sim_beta;
      return cmd_simulate(cfg, sim);
    }
    if (*verify) return cmd_verify(cfg, suite);
  } catch (const UsageError& e) {
    report_error("usage", e.what());
    return kUsage;
  } catch (const dioph::Error& e) {
    report_error(std::string(dioph::to_string(e.code())), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error("failure", e.what());
    return kNumeric;
  }
  return kUsage;
}
