#pragma once
#include <stdexcept>
#include <string>

namespace holo {

enum class ErrorCode {
    NonPositiveDeterminant,
    SharedFixedPoint,
    NotHyperbolicTrace,
    EllipticHasNoSimplestLift,
    NotElliptic,
    RelatorNotSatisfied,
    EllipticBoundary,
    NotRealizable,
    NotConjugate,
    WrongRegime,
    DegeneratePentagon,
    ElementaryRepresentation,
    NotVAPair,
    CommutatorMismatch,
    NoWitness,
    RootNotBracketed,
    OutOfDisc,
    IdentityCurve,
    InvariantViolation,
    DriftExceeded,
    ParseError,
};

const char* errorName(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(errorName(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace holo
