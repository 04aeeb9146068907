#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dioph {

enum class ErrorCode {
  invalid_bracket,
  no_convergence,
  no_sign_change,
  no_root,
  domain,
  hypothesis_violated,
  degenerate_context,
  not_regular_graph,
  rational_dependence,
  insufficient_rank,
  insufficient_data,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_bracket: return "InvalidBracket";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::no_sign_change: return "NoSignChange";
    case ErrorCode::no_root: return "NoRoot";
    case ErrorCode::domain: return "DomainError";
    case ErrorCode::hypothesis_violated: return "HypothesisViolated";
    case ErrorCode::degenerate_context: return "DegenerateContext";
    case ErrorCode::not_regular_graph: return "NotRegularGraph";
    case ErrorCode::rational_dependence: return "RationalDependence";
    case ErrorCode::insufficient_rank: return "InsufficientRank";
    case ErrorCode::insufficient_data: return "InsufficientData";
  }
  return "Unknown";
}

// Root of all library errors. The concrete subclasses below exist so callers
// can catch a single failure mode; code() gives the same information.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define DIOPH_DEFINE_ERROR(Name, Code)                                  \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

DIOPH_DEFINE_ERROR(InvalidBracket, invalid_bracket)
DIOPH_DEFINE_ERROR(NoConvergence, no_convergence)
DIOPH_DEFINE_ERROR(NoSignChange, no_sign_change)
DIOPH_DEFINE_ERROR(NoRoot, no_root)
DIOPH_DEFINE_ERROR(DomainError, domain)
DIOPH_DEFINE_ERROR(HypothesisViolated, hypothesis_violated)
DIOPH_DEFINE_ERROR(DegenerateContext, degenerate_context)
DIOPH_DEFINE_ERROR(NotRegularGraph, not_regular_graph)
DIOPH_DEFINE_ERROR(RationalDependence, rational_dependence)
DIOPH_DEFINE_ERROR(InsufficientRank, insufficient_rank)
DIOPH_DEFINE_ERROR(InsufficientData, insufficient_data)

#undef DIOPH_DEFINE_ERROR

}  // namespace dioph
