#pragma once

#include <stdexcept>
#include <string>

namespace semirec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed a value outside an operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The operation is not defined for this input class (e.g. preimage of a nonlinear branch).
class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

/// A configured budget (word count, piece count, iteration cap, bit size) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A rational's numerator or denominator outgrew the configured bit cap.
class BitCapExceeded : public ResourceError {
public:
    using ResourceError::ResourceError;
};

/// A map or chain violates its structural invariants (totality, disjointness, range).
class ConstructionError : public Error {
public:
    using Error::Error;
};

} // namespace semirec
