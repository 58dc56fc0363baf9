#pragma once

#include <stdexcept>
#include <string>

namespace lrete {

enum class ErrorKind {
    MalformedMorphism,
    InvalidSubgraph,
    MalformedModification,
    MalformedGraph,
    MalformedQuery,
    UnsupportedQuery,
    UnsupportedNet,
    IncompleteConfiguration,
    MalformedDelta,
    PreconditionViolation,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace lrete
