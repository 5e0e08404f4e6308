#pragma once
#include <stdexcept>
#include <string>

namespace cfon {

// bad input text (edge lists, decompositions, coloring files)
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// structurally valid input that violates an operation's preconditions
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// instance too large for an exact search
struct CapError : std::runtime_error {
    explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

// a construction invariant failed; always a bug
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline void check_internal(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

} // namespace cfon
