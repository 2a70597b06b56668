#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibercheck {

enum class ErrorCode {
    ZeroPolynomial,
    FieldMismatch,
    NotDivisible,
    ExtensionTowerUnsupported,
    DegreeCapExceeded,
    InvalidGerm,
    NonReducedGerm,
    NonIsolatedSingularity,
    ResolutionDepthExceeded,
    TruncationLimitExceeded,
    DisconnectedFiber,
    GenusMismatch,
    OddCorrection,
    IdentityViolation,
    DimensionMismatch,
    NonIntegralResult,
    ChiMismatch,
    NotApplicable,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type; callers switch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // True for errors that describe mathematically inconsistent (but readable) data.
    bool is_inconsistency() const noexcept;

private:
    ErrorCode code_;
};

}  // namespace fibercheck
