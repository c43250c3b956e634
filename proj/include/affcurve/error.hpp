#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affcurve {

enum class ErrorCode {
    InvalidArgument,
    ValidationFailed,
    DomainEscape,
    NonFinite,
    StepSizeUnderflow,
    UnsupportedModel,
    NoRoot,
    DerivativeUnavailable,
    QuadratureFailure,
    OrderingViolation,
    OutOfStateSpace,
    AllDead,
    GenerationExhausted,
    Disagreement,
};

std::string_view to_string(ErrorCode code);

/// Library error. Every failure mode carries a code so callers (the CLI in
/// particular) can map it onto exit statuses without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace affcurve
