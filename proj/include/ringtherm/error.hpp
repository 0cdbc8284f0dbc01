#pragma once

#include <stdexcept>
#include <string>

namespace ringtherm {

enum class ErrorKind {
    // validation
    Parity,
    Lookup,
    Size,
    Schema,
    Precondition,
    Explosion,
    Empty,
    InsufficientData,
    // numerical / domain
    Domain,
    SubThreshold,
    Divergence,
    Resolution,
    DegenerateFit,
    UndefinedMetric,
    Calibration,
};

const char* to_string(ErrorKind kind);

// CLI exit status: 1 for validation errors, 2 for numerical/domain errors.
int exit_status(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ringtherm
