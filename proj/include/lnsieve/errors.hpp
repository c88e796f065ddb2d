#pragma once

#include <stdexcept>
#include <string>

namespace lnsieve {

// Every error raised by the library derives from Error so callers can catch
// one type; the subclasses exist for the cases a caller can act on.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (parity violation, mixed fields,
// p dividing 2q, zero modulus, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedField : public DomainError {
public:
    explicit UnsupportedField(long q)
        : DomainError("unsupported field Q(sqrt(" + std::to_string(q) +
                      ")): q must be one of 17, 41, 89, 97") {}
};

// Valuation of zero.
class InfiniteValuation : public DomainError {
public:
    InfiniteValuation() : DomainError("valuation of zero is infinite") {}
};

// Singular curve handed to an operation that needs good or multiplicative
// reduction.
class SingularCurve : public DomainError {
public:
    using DomainError::DomainError;
};

// Newform data could not be obtained (no snapshot, no cache, no network or
// the public database does not cover the level).
class DataUnavailable : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent data file.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Numeric embedding path could not certify an integer.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, double bound, int digits_needed)
        : Error(what), error_bound(bound), required_digits(digits_needed) {}
    double error_bound;
    int required_digits;
};

// A bounded search ran out of room.
class SearchExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace lnsieve
