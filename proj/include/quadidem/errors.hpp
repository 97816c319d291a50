#pragma once

#include <stdexcept>
#include <string>

namespace quadidem {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidRing : Error {
    explicit InvalidRing(const std::string& what) : Error(what) {}
};

struct MixedRings : Error {
    MixedRings() : Error("operands belong to different rings") {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct ModuliNotCoprime : Error {
    ModuliNotCoprime() : Error("crt moduli are not pairwise coprime") {}
};

struct NotPrime : Error {
    explicit NotPrime(const std::string& what) : Error(what) {}
};

struct SquareInput : Error {
    explicit SquareInput(const std::string& what) : Error(what) {}
};

struct NotRealQuadratic : Error {
    explicit NotRealQuadratic(const std::string& what) : Error(what) {}
};

struct BothZero : Error {
    BothZero() : Error("both elements are zero") {}
};

struct ZeroDivisorChain : Error {
    ZeroDivisorChain() : Error("weak chain requires a nonzero second element") {}
};

struct InvalidChain : Error {
    explicit InvalidChain(const std::string& what) : Error(what) {}
};

struct NonTerminatingReplay : Error {
    NonTerminatingReplay() : Error("quotient replay does not end in a zero remainder") {}
};

struct InvalidTrace : Error {
    explicit InvalidTrace(const std::string& what) : Error(what) {}
};

struct ZeroInput : Error {
    ZeroInput() : Error("inputs must be nonzero") {}
};

struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& which)
        : Error("precondition violated: " + which), which(which) {}
    std::string which;
};

struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& what) : Error(what) {}
};

struct NotSingular : Error {
    NotSingular() : Error("matrix is not singular") {}
};

struct NotHermitianShape : Error {
    NotHermitianShape()
        : Error("matrix must have rational-integer diagonal and conjugate off-diagonal entries") {}
};

struct NotIdempotent : Error {
    NotIdempotent() : Error("matrix is not idempotent") {}
};

struct OutOfScope : Error {
    explicit OutOfScope(const std::string& what) : Error(what) {}
};

// Raised when an internally derived identity fails to verify; indicates a bug.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace quadidem
