#pragma once

#include <stdexcept>
#include <string>

namespace pdm {

/// Raised when an evaluation point leaves the validity interval of a mass
/// model or a transformed potential. The message names the offending bound.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when parameters violate an energy-regime inequality (for example
/// gamma*H <= 0 where a square root of gamma*H is required, or E < epsilon).
/// The message cites the violated inequality.
class RegimeError : public std::runtime_error {
public:
    explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an iterative numerical procedure fails to reach its target
/// accuracy (quadrature refinement, root bracketing, step-size underflow).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for structurally invalid inputs (bad parameters, malformed config).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pdm
