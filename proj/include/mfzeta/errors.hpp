#pragma once

#include <stdexcept>
#include <string>

namespace mfzeta {

enum class ErrorCode {
  // graph_shift
  EmptyGraph,
  InvalidVertex,
  DanglingVertex,
  NotStronglyConnected,
  Overflow,
  NoConvergence,
  NotANumber,
  InadmissibleWord,
  InadmissibleTableKey,
  // potentials
  RatioOutOfRange,
  ProbabilityRowSum,
  UnboundEdge,
  ZeroDenominator,
  InvalidObservable,
  // root finding / zeta
  BracketFailure,
  DomainError,
  NonConstantRatio,
  InsufficientData,
  // cli_io
  ParseError,
  SchemaError,
  SemanticError,
};

enum class ErrorCategory { Config, Domain, Numerical };

ErrorCategory category_of(ErrorCode code) noexcept;
const char* name_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(name_of(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace mfzeta
