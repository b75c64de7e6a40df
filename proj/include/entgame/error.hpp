#pragma once

#include <stdexcept>
#include <string>

namespace entgame {

/// Failure categories surfaced by the library. The CLI maps every kind to
/// exit code 2.
enum class ErrorKind {
    dimension_mismatch,
    invalid_argument,
    precondition_violated,
    cap_exceeded,
    reducible_matrix,
    blocking_state,
    parse_error,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::dimension_mismatch: return "dimension_mismatch";
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::precondition_violated: return "precondition_violated";
        case ErrorKind::cap_exceeded: return "cap_exceeded";
        case ErrorKind::reducible_matrix: return "reducible_matrix";
        case ErrorKind::blocking_state: return "blocking_state";
        case ErrorKind::parse_error: return "parse_error";
        case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

}  // namespace entgame
