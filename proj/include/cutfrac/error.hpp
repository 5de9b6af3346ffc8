#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cutfrac {

enum class ErrorKind {
    InvalidInput,
    EdgeCrossing,
    DanglingEndpoint,
    OnInterface,
    OutsideDomain,
    MultipleCrossings,
    FractureOnMeshFace,
    NotIncident,
    SnapTooFar,
    EmptyCut,
    NodeNotVertex,
    OutsideCoverage,
    NotConverged,
    IndefiniteDetected,
    OracleFailed,
    MissingExact,
};

std::string_view to_string(ErrorKind kind);

/// CLI exit code: 2 for malformed problem definitions, 1 for numerical/geometric failures.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cutfrac
