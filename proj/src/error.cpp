#include "affcurve/error.hpp"

namespace affcurve {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::DomainEscape: return "DomainEscape";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
        case ErrorCode::UnsupportedModel: return "UnsupportedModel";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::DerivativeUnavailable: return "DerivativeUnavailable";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::OrderingViolation: return "OrderingViolation";
        case ErrorCode::OutOfStateSpace: return "OutOfStateSpace";
        case ErrorCode::AllDead: return "AllDead";
        case ErrorCode::GenerationExhausted: return "GenerationExhausted";
        case ErrorCode::Disagreement: return "Disagreement";
    }
    return "Unknown";
}

}  // namespace affcurve
