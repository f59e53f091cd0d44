#pragma once

#include <stdexcept>
#include <string>

namespace singlat {

enum class ErrorCode {
    ParseError,          // malformed graph/cycle/chern input
    GraphMismatch,       // cycles over different graphs combined
    InvalidGraph,        // lattice operation on a graph that failed validation
    NotInLprime,         // rational cycle whose pairings with L are not integral
    RegionTooLarge,      // enumeration would exceed the configured point limit
    CminViolation,       // equality-mode tau requested but Z != C_min(Z, l')
    TNegative,           // binomial argument t_v < 0 on the support of l'
    PreconditionSupport, // support/effectivity precondition violated
    RationalGraph,       // operation requires a non-rational graph
    NotALattice,         // minimizer set lacks a pointwise min/max member
    ProviderFailure,     // h1 provider could not answer a query
    Internal,            // broken internal invariant; always a bug
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace singlat
