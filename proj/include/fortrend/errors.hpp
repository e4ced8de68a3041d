#ifndef FORTREND_ERRORS_HPP
#define FORTREND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fortrend {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// CSV header does not match the expected schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A record violates a domain invariant (e.g. non-positive attribute).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numeric field failed to parse.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The design matrix of a least-squares solve is rank deficient.
class DegenerateFitError : public Error {
public:
    using Error::Error;
};

/// Not enough records to estimate the requested model.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Gauge rescaling is undefined (alpha1 = 0, or c <= 0 for model D).
class GaugeError : public Error {
public:
    using Error::Error;
};

/// The kinetic-energy rewrite is only defined at the alpha1 = 2 gauge.
class FormUnavailableError : public Error {
public:
    using Error::Error;
};

/// Model D inner exponent would overflow exp().
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A profile search found no feasible point.
class NoFitError : public Error {
public:
    using Error::Error;
};

/// A hindcast window cannot be formed from the given data.
class WindowError : public Error {
public:
    using Error::Error;
};

} // namespace fortrend

#endif
