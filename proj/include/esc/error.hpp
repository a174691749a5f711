#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace esc {

enum class ErrorKind {
    DivisionByZero,
    Magnitude,
    NotPrime,
    Ordering,
    Equation,
    Precondition,
    NotASolutionPair,
    Residue,
    NoSolution,
    StructureViolation,
    InternalInconsistency,
    UnknownStrategy,
    InvalidInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure the library reports goes through this type; callers switch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised when neither search strategy finds a decomposition. For a prime this
// would be a counterexample to the conjecture, so the prime travels with it.
class NoSolutionError : public Error {
public:
    explicit NoSolutionError(std::uint64_t p);

    std::uint64_t prime() const noexcept { return p_; }

private:
    std::uint64_t p_;
};

} // namespace esc
