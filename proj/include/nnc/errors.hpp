#pragma once

#include <stdexcept>
#include <string>

namespace nnc {

enum class ErrorCode {
  EmptyInput,
  DimensionMismatch,
  InvalidLabel,
  MetricViolation,
  ZeroDiameter,
  TooFewPoints,
  SingleClass,
  ZeroMargin,
  EmptySubset,
  InconsistentInput,
  TooLarge,
  InvalidArgument,
  SubsetTooLarge,
  TooFewLevels,
  NoFeasiblePoint,
  DegenerateInstance,
  ParseError,
  MissingClass,
  PoolTooSmall,
  IoError,
  InfeasibleMetric,
  Internal,
};

constexpr const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::MetricViolation: return "MetricViolation";
    case ErrorCode::ZeroDiameter: return "ZeroDiameter";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::ZeroMargin: return "ZeroMargin";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::InconsistentInput: return "InconsistentInput";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SubsetTooLarge: return "SubsetTooLarge";
    case ErrorCode::TooFewLevels: return "TooFewLevels";
    case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorCode::DegenerateInstance: return "DegenerateInstance";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::PoolTooSmall: return "PoolTooSmall";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InfeasibleMetric: return "InfeasibleMetric";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Input-class errors map to CLI exit code 1; the rest (construction bugs,
/// invariant violations) map to exit code 2.
constexpr bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleMetric:
    case ErrorCode::Internal:
      return false;
    default:
      return true;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace nnc
