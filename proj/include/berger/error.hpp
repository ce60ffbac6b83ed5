#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace berger {

enum class ErrorCode {
  DomainError,
  UnsupportedSignature,
  DegenerateTorus,
  IndefiniteInducedMetric,
  DegenerateInducedMetric,
  HypothesisViolated,
  NoSolution,
};

/// Stable snake_case identifier, used verbatim in machine-readable output.
constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "domain_error";
    case ErrorCode::UnsupportedSignature: return "unsupported_signature";
    case ErrorCode::DegenerateTorus: return "degenerate_torus";
    case ErrorCode::IndefiniteInducedMetric: return "indefinite_induced_metric";
    case ErrorCode::DegenerateInducedMetric: return "degenerate_induced_metric";
    case ErrorCode::HypothesisViolated: return "hypothesis_violated";
    case ErrorCode::NoSolution: return "no_solution";
  }
  return "unknown";
}

/// Shortest-safe decimal rendering for messages (%.17g).
inline std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace berger
