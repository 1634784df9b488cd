#include "mfzeta/errors.hpp"

namespace mfzeta {

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::NotANumber:
    case ErrorCode::Overflow:
    case ErrorCode::BracketFailure:
    case ErrorCode::ZeroDenominator:
      return ErrorCategory::Numerical;
    case ErrorCode::DomainError:
    case ErrorCode::NonConstantRatio:
    case ErrorCode::InsufficientData:
    case ErrorCode::InadmissibleWord:
      return ErrorCategory::Domain;
    default:
      return ErrorCategory::Config;
  }
}

const char* name_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::DanglingVertex: return "DanglingVertex";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotANumber: return "NotANumber";
    case ErrorCode::InadmissibleWord: return "InadmissibleWord";
    case ErrorCode::InadmissibleTableKey: return "InadmissibleTableKey";
    case ErrorCode::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorCode::ProbabilityRowSum: return "ProbabilityRowSum";
    case ErrorCode::UnboundEdge: return "UnboundEdge";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InvalidObservable: return "InvalidObservable";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonConstantRatio: return "NonConstantRatio";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::SemanticError: return "SemanticError";
  }
  return "Unknown";
}

}  // namespace mfzeta
