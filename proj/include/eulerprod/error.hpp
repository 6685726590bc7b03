#pragma once

#include <stdexcept>
#include <string>

namespace eulerprod {

enum class ErrorKind {
    invalid_argument,  // malformed input, unknown names
    domain,            // parameters outside the numeric regime of an operation
    budget_exceeded,   // iterative routine ran out of evaluations
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

// Thrown when an adaptive routine cannot reach its tolerance. Carries the best
// estimate found so callers can decide whether it is good enough.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, double best_estimate, double error_estimate)
        : Error(ErrorKind::budget_exceeded, what), best_estimate_(best_estimate),
          error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

}  // namespace eulerprod
