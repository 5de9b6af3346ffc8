#include "cutfrac/error.hpp"

namespace cutfrac {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::EdgeCrossing: return "EdgeCrossing";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::OnInterface: return "OnInterface";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::MultipleCrossings: return "MultipleCrossings";
    case ErrorKind::FractureOnMeshFace: return "FractureOnMeshFace";
    case ErrorKind::NotIncident: return "NotIncident";
    case ErrorKind::SnapTooFar: return "SnapTooFar";
    case ErrorKind::EmptyCut: return "EmptyCut";
    case ErrorKind::NodeNotVertex: return "NodeNotVertex";
    case ErrorKind::OutsideCoverage: return "OutsideCoverage";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::IndefiniteDetected: return "IndefiniteDetected";
    case ErrorKind::OracleFailed: return "OracleFailed";
    case ErrorKind::MissingExact: return "MissingExact";
    }
    return "Unknown";
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::EdgeCrossing:
    case ErrorKind::DanglingEndpoint:
    case ErrorKind::MissingExact:
    case ErrorKind::SnapTooFar:
    case ErrorKind::NodeNotVertex:
        return 2;
    default:
        return 1;
    }
}

} // namespace cutfrac
