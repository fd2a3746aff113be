#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fiberlift {

enum class ErrorKind {
    InvalidInput,
    EmptyAfterTrim,
    NotIrreducible,
    InfiniteToOne,
    NotInImage,
    FiberInfinite,
    NoPath,
    NotErgodic,
    NotFullySupported,
    NotConstantToOne,
    HypothesisNotMet,
    ProjectionNotOnto,
    Mismatch,
    Internal,
};

std::string_view to_string(ErrorKind kind);

/// Precondition violations are refusals; everything else signals a bug or bad data.
bool is_refusal(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fiberlift
