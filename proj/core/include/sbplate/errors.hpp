#pragma once

#include <stdexcept>
#include <string>

namespace sbplate {

/// Invalid user-facing configuration: geometry, mesh parameters, boundary
/// letters, config files. Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation outside the physical domain or with a non-physical material
/// state (e.g. nu >= 0.5).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Assembly or solver failure: degenerate elements, singular coefficient
/// blocks, eigensolver breakdown. Maps to exit code 3 in the CLI.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sbplate
