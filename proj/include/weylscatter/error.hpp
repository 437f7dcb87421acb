#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weylscatter {

enum class ErrorKind {
    NotHermitian,
    NotPSD,
    SingularArgument,
    LowerHalfSpectrum,
    EvaluationDomain,
    BoundaryLimitFailed,
    SingularPoint,
    BandEdge,
    StepFailure,
    TruncationWarning,
    SingularJost,
    WrongModelKind,
    SpectralPoint,
    ImZero,
    NonInvertible,
    NotOperator,
    ThresholdPoint,
    InvalidArgument,
    Config,
};

std::string_view to_string(ErrorKind kind);

/// Every numerical failure in the library is reported through this type; `kind()`
/// identifies the failure and `value()` carries a diagnostic scalar (a condition
/// number, a residual, the offending λ) when one is meaningful.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double value = 0.0)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

    ErrorKind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }

private:
    ErrorKind kind_;
    double value_;
};

}  // namespace weylscatter
