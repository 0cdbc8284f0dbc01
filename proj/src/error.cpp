#include "ringtherm/error.hpp"

namespace ringtherm {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parity: return "parity error";
        case ErrorKind::Lookup: return "lookup error";
        case ErrorKind::Size: return "size error";
        case ErrorKind::Schema: return "schema error";
        case ErrorKind::Precondition: return "precondition error";
        case ErrorKind::Explosion: return "explosion error";
        case ErrorKind::Empty: return "empty error";
        case ErrorKind::InsufficientData: return "insufficient-data error";
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::SubThreshold: return "sub-threshold error";
        case ErrorKind::Divergence: return "divergence error";
        case ErrorKind::Resolution: return "resolution error";
        case ErrorKind::DegenerateFit: return "degenerate-fit error";
        case ErrorKind::UndefinedMetric: return "undefined-metric error";
        case ErrorKind::Calibration: return "calibration error";
    }
    return "error";
}

int exit_status(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parity:
        case ErrorKind::Lookup:
        case ErrorKind::Size:
        case ErrorKind::Schema:
        case ErrorKind::Precondition:
        case ErrorKind::Explosion:
        case ErrorKind::Empty:
        case ErrorKind::InsufficientData:
            return 1;
        default:
            return 2;
    }
}

}  // namespace ringtherm
