#pragma once

#include <stdexcept>
#include <string>

namespace qfisher {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the physical domain (non-positive-semidefinite state,
// acceleration parameter outside [0, pi/4], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Eigenvector derivatives are not unique at this point: two eigenvalues
// coincide while the perturbation couples their eigenvectors.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

// The perturbation has weight entirely inside the kernel of rho; the
// parameter cannot be estimated from this state.
class NotEstimableError : public Error {
public:
    using Error::Error;
};

// A closed-form denominator fell below the evaluation threshold.
class SingularDenominatorError : public Error {
public:
    using Error::Error;
};

// Closed-form evaluation requested inside a fallback region (for example
// x + y near 0, where the mu formulas are singular).
class FallbackRegionError : public Error {
public:
    using Error::Error;
};

// Malformed sweep configuration or unknown preset.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace qfisher
