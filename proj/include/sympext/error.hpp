#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sympext {

enum class ErrorKind {
  // numerical kernels
  NonConvergence,
  NoBracket,
  NonMonotone,
  DomainEscape,
  StepUnderflow,
  // expression language
  SyntaxError,
  UnknownIdentifier,
  ArityExceeded,
  EvalDomain,
  // profiles
  NonPositiveParameter,
  InfeasibleBalance,
  // circle extensions
  NotALift,
  NotIncreasing,
  BlendInfeasible,
  BandTooDeep,
  // cube constructions
  NonPositiveDensity,
  BoundaryMismatch,
  MassMismatch,
  HalfMassMismatch,
  CornerMismatch,
  RatioMismatch,
  NotBoundaryPreserving,
  CornerDerivativeMismatch,
  OrientationReversed,
  NotBalanced,
  BadCoverOrder,
  EmptyBumpRegion,
  // darboux charts
  DerivativeSignViolation,
  BracketExpansionFailed,
  ShrinkExhausted,
  ZeroGradient,
  // plumbing
  Usage,
  Unsupported,
};

std::string_view to_string(ErrorKind kind);

/// Validation errors reject the input; everything else is a numerical failure.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::SyntaxError, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace sympext
