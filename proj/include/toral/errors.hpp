#pragma once

#include <stdexcept>
#include <string>

namespace toral {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Singular or otherwise unusable lattice basis.
class DegenerateBasisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Enumeration would return more vectors than the configured cap.
class BudgetExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested rank or signature is outside what the algorithm supports.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative evaluation stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_increment)
        : std::runtime_error(what), last_increment_(last_increment) {}

    double last_increment() const noexcept { return last_increment_; }

private:
    double last_increment_;
};

/// Field data that fails schema or invariant validation.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace toral
