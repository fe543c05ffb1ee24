#include "potapov/errors.hpp"

namespace potapov {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::Unstable: return "Unstable";
        case ErrorKind::NonpositiveDelay: return "NonpositiveDelay";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::NearPole: return "NearPole";
        case ErrorKind::AtRoot: return "AtRoot";
        case ErrorKind::ContourThroughZero: return "ContourThroughZero";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::CountMismatch: return "CountMismatch";
        case ErrorKind::UnstablePoleFound: return "UnstablePoleFound";
        case ErrorKind::NotCommensurate: return "NotCommensurate";
        case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
        case ErrorKind::NotIsolated: return "NotIsolated";
        case ErrorKind::ZeroResidue: return "ZeroResidue";
        case ErrorKind::RankTooHigh: return "RankTooHigh";
        case ErrorKind::DegeneratePole: return "DegeneratePole";
        case ErrorKind::AtPole: return "AtPole";
        case ErrorKind::PoleOfMap: return "PoleOfMap";
        case ErrorKind::NotEqualDelays: return "NotEqualDelays";
        case ErrorKind::DeflationStall: return "DeflationStall";
        case ErrorKind::NotRealizable: return "NotRealizable";
        case ErrorKind::PortMismatch: return "PortMismatch";
        case ErrorKind::NonuniformGrid: return "NonuniformGrid";
    }
    return "Unknown";
}

}  // namespace potapov
