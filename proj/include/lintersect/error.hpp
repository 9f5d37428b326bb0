#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lintersect {

enum class ErrorCode {
  NonPrimeModulus,
  ResidueOutOfRange,
  DegreeExceedsModulus,
  BasisDegenerate,
  LevelOutOfRange,
  ParamOutOfRange,
  HypothesisViolated,
  NotAlmostInitial,
  DomainMismatch,
  DimensionOverflow,
  SearchCapExceeded,
  ParseError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::ResidueOutOfRange: return "ResidueOutOfRange";
    case ErrorCode::DegreeExceedsModulus: return "DegreeExceedsModulus";
    case ErrorCode::BasisDegenerate: return "BasisDegenerate";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotAlmostInitial: return "NotAlmostInitial";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Caps and budgets refuse work rather than failing on bad input.
  bool is_refusal() const noexcept {
    return code_ == ErrorCode::DimensionOverflow || code_ == ErrorCode::SearchCapExceeded;
  }

 private:
  ErrorCode code_;
};

}  // namespace lintersect
