#pragma once

#include <stdexcept>
#include <string>

namespace koblab {

// Base for all library errors. CLI maps subclasses onto stable exit codes:
// usage errors -> 2, numerical/construction failures -> 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter or invariant violations detected before any numerics run.
struct InvalidParameter : Error {
    using Error::Error;
};

struct DimensionMismatch : InvalidParameter {
    using InvalidParameter::InvalidParameter;
};

struct OutOfRange : InvalidParameter {
    using InvalidParameter::InvalidParameter;
};

// Feasibility condition of a closed-form construction fails; the requested
// disc does not exist for these parameters.
struct InfeasibleParameters : InvalidParameter {
    using InvalidParameter::InvalidParameter;
};

struct PoleError : Error {
    using Error::Error;
};

// Branch tracking of a holomorphic logarithm failed (base function vanishes
// or oscillates faster than the continuation can resolve).
struct BranchError : Error {
    using Error::Error;
};

// Supplied root anchor is not a q-th root of the base value at 0.
struct AnchorError : Error {
    using Error::Error;
};

// Gradient of a defining function is evaluated at a non-differentiable point.
struct SingularityError : Error {
    using Error::Error;
};

struct SearchFailure : Error {
    using Error::Error;
};

struct UsageError : Error {
    using Error::Error;
};

} // namespace koblab
