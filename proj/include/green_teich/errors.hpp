#pragma once

#include <stdexcept>
#include <string>

namespace gt {

/// A point lies on or outside the boundary of the domain it was handed to.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A constant analytic disc sitting on the pole: every point is a preimage.
class DegenerateDiscError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The search could not place even the straight-line disc inside the domain.
class NoAdmissibleDiscError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every quadratic-differential basis element has vanishing L1 norm.
class DegenerateBasisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or command-line input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gt
