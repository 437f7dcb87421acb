#include "weylscatter/error.hpp"

namespace weylscatter {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::SingularArgument: return "SingularArgument";
        case ErrorKind::LowerHalfSpectrum: return "LowerHalfSpectrum";
        case ErrorKind::EvaluationDomain: return "EvaluationDomain";
        case ErrorKind::BoundaryLimitFailed: return "BoundaryLimitFailed";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::BandEdge: return "BandEdge";
        case ErrorKind::StepFailure: return "StepFailure";
        case ErrorKind::TruncationWarning: return "TruncationWarning";
        case ErrorKind::SingularJost: return "SingularJost";
        case ErrorKind::WrongModelKind: return "WrongModelKind";
        case ErrorKind::SpectralPoint: return "SpectralPoint";
        case ErrorKind::ImZero: return "ImZero";
        case ErrorKind::NonInvertible: return "NonInvertible";
        case ErrorKind::NotOperator: return "NotOperator";
        case ErrorKind::ThresholdPoint: return "ThresholdPoint";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Config: return "Config";
    }
    return "Unknown";
}

}  // namespace weylscatter
