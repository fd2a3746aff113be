#include "fiberlift/error.hpp"

namespace fiberlift {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::EmptyAfterTrim: return "EmptyAfterTrim";
        case ErrorKind::NotIrreducible: return "NotIrreducible";
        case ErrorKind::InfiniteToOne: return "InfiniteToOne";
        case ErrorKind::NotInImage: return "NotInImage";
        case ErrorKind::FiberInfinite: return "FiberInfinite";
        case ErrorKind::NoPath: return "NoPath";
        case ErrorKind::NotErgodic: return "NotErgodic";
        case ErrorKind::NotFullySupported: return "NotFullySupported";
        case ErrorKind::NotConstantToOne: return "NotConstantToOne";
        case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
        case ErrorKind::ProjectionNotOnto: return "ProjectionNotOnto";
        case ErrorKind::Mismatch: return "Mismatch";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_refusal(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ProjectionNotOnto:
        case ErrorKind::Mismatch:
        case ErrorKind::Internal:
            return false;
        default:
            return true;
    }
}

}  // namespace fiberlift
