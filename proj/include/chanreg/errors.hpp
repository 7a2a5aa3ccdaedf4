#pragma once

#include <stdexcept>
#include <string>

namespace chanreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field data inconsistent with its grid, parity or representation.
class InvalidFieldError : public Error {
public:
    using Error::Error;
};

/// Operation called on a field in the wrong representation.
class RepresentationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (q < 1, beta <= alpha, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The vertically averaged horizontal divergence is not zero.
class IncompatibleDivergenceError : public Error {
public:
    using Error::Error;
};

/// A structural invariant that cannot fail unless the implementation is broken.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

/// Diagnostics records do not cover the requested time interval.
class CoverageError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Raised by the integrator when a coefficient becomes non-finite.
class BlowUpSignal : public Error {
public:
    BlowUpSignal(const std::string& what, double last_valid_time)
        : Error(what), last_valid_time_(last_valid_time) {}

    double last_valid_time() const noexcept { return last_valid_time_; }

private:
    double last_valid_time_;
};

} // namespace chanreg
