#pragma once

#include <stdexcept>
#include <string>

namespace drlqr {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: unparseable files, dimension mismatches, invalid weights.
struct InputError : Error {
    using Error::Error;
};

// An iterative method failed to converge (Riccati recursion, fixed point,
// bisection bracket). The message carries the diagnostic trail.
struct ConvergenceError : Error {
    using Error::Error;
};

// A feasibility problem has no solution (rational-approximation LP,
// H-infinity level certification below the achievable floor).
struct InfeasibleError : Error {
    using Error::Error;
};

}  // namespace drlqr
