#pragma once

#include <stdexcept>
#include <string>

namespace hamjac {

// Argument outside a function's mathematical domain.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// State left the model's validity region (e.g. |alpha*v| >= 1 or |v| >= c).
struct ValidityDomainError : DomainError {
    double x, v;
    ValidityDomainError(const std::string& msg, double x_, double v_)
        : DomainError(msg), x(x_), v(v_) {}
};

// Momentum-profile radicand went negative; boundary_x is the bisected zero.
struct TurningPointError : DomainError {
    double boundary_x;
    TurningPointError(const std::string& msg, double bx)
        : DomainError(msg), boundary_x(bx) {}
};

// Guard predicate rejected the initial state of an integration.
struct GuardViolationError : std::runtime_error {
    double t, x, v;  // last valid state
    GuardViolationError(const std::string& msg, double t_, double x_, double v_)
        : std::runtime_error(msg), t(t_), x(x_), v(v_) {}
};

// An ODE right-hand side or integrand produced a non-finite value.
struct NonFiniteError : std::runtime_error {
    double where;  // offending abscissa or time
    NonFiniteError(const std::string& msg, double w)
        : std::runtime_error(msg), where(w) {}
};

// Adaptive quadrature hit its maximum recursion depth before the tolerance.
struct QuadratureDepthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A series used max_terms terms without meeting the truncation criterion.
struct SeriesDivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or invalid run configuration; the message names the field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hamjac
