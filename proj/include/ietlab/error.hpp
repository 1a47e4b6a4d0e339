#pragma once

#include <stdexcept>
#include <string>

namespace ietlab {

enum class ErrorCode {
  mixed_radicand,
  invalid_radicand,
  division_by_zero,
  non_positive_length,
  out_of_domain,
  invalid_permutation,
  reducible,
  return_time_exceeded,
  not_admissible,
  degenerate,
  induction_failure,
  depth_exceeded,
  not_verified_idoc,
  shape_violation,
  consistency_violation,
  horizon_exceeds_depth,
  invalid_argument,
  parse_error,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::mixed_radicand: return "MixedRadicand";
    case ErrorCode::invalid_radicand: return "InvalidRadicand";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::non_positive_length: return "NonPositiveLength";
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::invalid_permutation: return "InvalidPermutation";
    case ErrorCode::reducible: return "Reducible";
    case ErrorCode::return_time_exceeded: return "ReturnTimeExceeded";
    case ErrorCode::not_admissible: return "NotAdmissible";
    case ErrorCode::degenerate: return "DegenerateAt";
    case ErrorCode::induction_failure: return "InductionFailure";
    case ErrorCode::depth_exceeded: return "DepthExceeded";
    case ErrorCode::not_verified_idoc: return "NotVerifiedIDOC";
    case ErrorCode::shape_violation: return "ShapeViolation";
    case ErrorCode::consistency_violation: return "ConsistencyViolation";
    case ErrorCode::horizon_exceeds_depth: return "HorizonExceedsDepth";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Error";
}

// Every library failure is an Error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::parse_error,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// y0 fell on a separation point of stage `stage` of a shrink sequence.
class DegenerateError : public Error {
 public:
  explicit DegenerateError(int stage)
      : Error(ErrorCode::degenerate, "y0 is a separation point at stage " + std::to_string(stage)),
        stage_(stage) {}
  int stage() const noexcept { return stage_; }

 private:
  int stage_;
};

}  // namespace ietlab
