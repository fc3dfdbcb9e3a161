#pragma once

#include <stdexcept>
#include <string>

namespace stickslip {

/// Base class of all errors thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input: config files, trajectory CSV, sweep grids.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A domain invariant or operation precondition does not hold.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A set-valued constitutive inverse was queried at a point where the
/// value is a whole interval and the caller must choose (v = 0 for a
/// threshold law).
class SetValuedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An iterative numerical procedure failed: lost bracket, iteration cap,
/// or step budget exceeded.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace stickslip
