#pragma once

#include <stdexcept>
#include <string>

namespace hopfforge {

enum class ErrorCode {
  DivisionByZero,
  ConductorOverflow,
  ZeroInput,
  ShapeMismatch,
  NotABialgebra,
  NotGroupAlgebra,
  NotGroupLike,
  YDViolation,
  AxiomViolation,
  NotSubHopf,
  InfiniteOrder,
  HypothesisViolation,
  InducedAxiomFailure,
  NotThin,
  FlagRequired,
  EquivalenceMismatch,
  ParseError,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ConductorOverflow: return "ConductorOverflow";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotABialgebra: return "NotABialgebra";
    case ErrorCode::NotGroupAlgebra: return "NotGroupAlgebra";
    case ErrorCode::NotGroupLike: return "NotGroupLike";
    case ErrorCode::YDViolation: return "YDViolation";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::NotSubHopf: return "NotSubHopf";
    case ErrorCode::InfiniteOrder: return "InfiniteOrder";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::InducedAxiomFailure: return "InducedAxiomFailure";
    case ErrorCode::NotThin: return "NotThin";
    case ErrorCode::FlagRequired: return "FlagRequired";
    case ErrorCode::EquivalenceMismatch: return "EquivalenceMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hopfforge
