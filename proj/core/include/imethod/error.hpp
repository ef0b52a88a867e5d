#pragma once

#include <stdexcept>
#include <string>

namespace imethod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (s out of range, K < 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The time integrator produced a non-finite coefficient.
class BlowUpError : public Error {
public:
    BlowUpError(double time, const std::string& what)
        : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// A computation would exceed its configured work budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// An iterative method did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace imethod
