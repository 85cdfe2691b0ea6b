#include "sympext/error.hpp"

namespace sympext {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::DomainEscape: return "DomainEscape";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::ArityExceeded: return "ArityExceeded";
    case ErrorKind::EvalDomain: return "EvalDomain";
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::InfeasibleBalance: return "InfeasibleBalance";
    case ErrorKind::NotALift: return "NotALift";
    case ErrorKind::NotIncreasing: return "NotIncreasing";
    case ErrorKind::BlendInfeasible: return "BlendInfeasible";
    case ErrorKind::BandTooDeep: return "BandTooDeep";
    case ErrorKind::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::MassMismatch: return "MassMismatch";
    case ErrorKind::HalfMassMismatch: return "HalfMassMismatch";
    case ErrorKind::CornerMismatch: return "CornerMismatch";
    case ErrorKind::RatioMismatch: return "RatioMismatch";
    case ErrorKind::NotBoundaryPreserving: return "NotBoundaryPreserving";
    case ErrorKind::CornerDerivativeMismatch: return "CornerDerivativeMismatch";
    case ErrorKind::OrientationReversed: return "OrientationReversed";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::BadCoverOrder: return "BadCoverOrder";
    case ErrorKind::EmptyBumpRegion: return "EmptyBumpRegion";
    case ErrorKind::DerivativeSignViolation: return "DerivativeSignViolation";
    case ErrorKind::BracketExpansionFailed: return "BracketExpansionFailed";
    case ErrorKind::ShrinkExhausted: return "ShrinkExhausted";
    case ErrorKind::ZeroGradient: return "ZeroGradient";
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence:
    case ErrorKind::DomainEscape:
    case ErrorKind::StepUnderflow:
    case ErrorKind::NonMonotone:
    case ErrorKind::ShrinkExhausted:
    case ErrorKind::BracketExpansionFailed:
    case ErrorKind::InfeasibleBalance:
    case ErrorKind::BlendInfeasible:
    case ErrorKind::EmptyBumpRegion:
    case ErrorKind::Unsupported:
      return false;
    default:
      return true;
  }
}

}  // namespace sympext
