#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperspec {

enum class ErrorCode {
  EdgeTooSmall,
  NonPositiveWeight,
  DuplicateEdge,
  IndexOutOfRange,
  EmptyEdgeSet,
  ZeroDegreeVertex,
  DimensionMismatch,
  ZeroVector,
  RangeError,
  TooLarge,
  InvalidEll,
  NotEvenOrder,
  OddOrder,
  NoDuplicates,
  OrderMismatch,
  NotNonnegative,
  NotConnected,
  NoConvergence,
  PathBudgetExceeded,
  Inconclusive,
  MissingReference,
  MissingExactCoefficients,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EdgeTooSmall: return "EdgeTooSmall";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyEdgeSet: return "EmptyEdgeSet";
    case ErrorCode::ZeroDegreeVertex: return "ZeroDegreeVertex";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidEll: return "InvalidEll";
    case ErrorCode::NotEvenOrder: return "NotEvenOrder";
    case ErrorCode::OddOrder: return "OddOrder";
    case ErrorCode::NoDuplicates: return "NoDuplicates";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NotNonnegative: return "NotNonnegative";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PathBudgetExceeded: return "PathBudgetExceeded";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::MissingReference: return "MissingReference";
    case ErrorCode::MissingExactCoefficients: return "MissingExactCoefficients";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperspec
