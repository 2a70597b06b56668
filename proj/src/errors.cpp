#include "fibercheck/errors.hpp"

namespace fibercheck {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::NotDivisible: return "NotDivisible";
        case ErrorCode::ExtensionTowerUnsupported: return "ExtensionTowerUnsupported";
        case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
        case ErrorCode::InvalidGerm: return "InvalidGerm";
        case ErrorCode::NonReducedGerm: return "NonReducedGerm";
        case ErrorCode::NonIsolatedSingularity: return "NonIsolatedSingularity";
        case ErrorCode::ResolutionDepthExceeded: return "ResolutionDepthExceeded";
        case ErrorCode::TruncationLimitExceeded: return "TruncationLimitExceeded";
        case ErrorCode::DisconnectedFiber: return "DisconnectedFiber";
        case ErrorCode::GenusMismatch: return "GenusMismatch";
        case ErrorCode::OddCorrection: return "OddCorrection";
        case ErrorCode::IdentityViolation: return "IdentityViolation";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonIntegralResult: return "NonIntegralResult";
        case ErrorCode::ChiMismatch: return "ChiMismatch";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

bool Error::is_inconsistency() const noexcept {
    switch (code_) {
        case ErrorCode::ValidationError:
        case ErrorCode::DisconnectedFiber:
        case ErrorCode::GenusMismatch:
        case ErrorCode::OddCorrection:
        case ErrorCode::IdentityViolation:
        case ErrorCode::NonIntegralResult:
        case ErrorCode::ChiMismatch:
            return true;
        default:
            return false;
    }
}

}  // namespace fibercheck
