#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trirep {

enum class ErrorCode {
  InvalidArgument,
  IndexOutOfRange,
  DimensionMismatch,
  ZeroScale,
  ExactnessViolation,
  DegenerateParameters,
  ZeroKappaInterior,
  ZeroParameterSum,
  SingularDenominator,
  NonPositiveLambda,
  ConvergenceFailure,
};

/// Numerical failures map to CLI exit status 2, everything else to 1.
constexpr bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateParameters:
    case ErrorCode::ZeroKappaInterior:
    case ErrorCode::ZeroParameterSum:
    case ErrorCode::SingularDenominator:
    case ErrorCode::NonPositiveLambda:
    case ErrorCode::ConvergenceFailure:
      return true;
    default:
      return false;
  }
}

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::ExactnessViolation: return "ExactnessViolation";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::ZeroKappaInterior: return "ZeroKappaInterior";
    case ErrorCode::ZeroParameterSum: return "ZeroParameterSum";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trirep
