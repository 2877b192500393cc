#pragma once

#include <stdexcept>
#include <string>

namespace qcclab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value failed one of its type invariants (Hermiticity, trace, spectrum...).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Deutsch-Jozsa promise a.b in {0, n} does not hold.
class PromiseViolation : public Error {
public:
    using Error::Error;
};

}  // namespace qcclab
