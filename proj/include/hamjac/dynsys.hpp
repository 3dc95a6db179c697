#pragma once

#include "hamjac/numerics.hpp"
#include "hamjac/specfun.hpp"

namespace hamjac::dynsys {

// Physical parameters of the system family. gamma_tilde = lambda*alpha^2 -
// gamma is the effective drag coefficient of the reparametrized picture and
// may have either sign.
struct SystemParams {
    double m = 1.0;       // mass
    double lambda = 1.0;  // constant applied force
    double gamma = 0.0;   // quadratic drag coefficient
    double alpha = 0.0;   // inverse velocity scale (alpha^2 = 3/(2 c^2))
    double c = 0.0;       // speed of light, used only by exact_relativistic

    double gamma_tilde() const { return lambda * alpha * alpha - gamma; }
    void validate() const;  // throws DomainError on violated invariants
};

enum class Kind {
    exact_relativistic,   // m dv/dt = (lambda - gamma v^2)(1 - v^2/c^2)^{3/2}
    first_order,          // m dv/dt = (lambda - gamma v^2)(1 - alpha^2 v^2)
    transformed,          // m dv/dtau = lambda + gamma_tilde v^2
    quadratic_drag,       // first_order with alpha = 0
    free_constant_force,  // m dv/dt = lambda
    harmonic_reference,   // dv/dt = -x
};

struct CanonicalPoint {
    double x, p;
};

// Exponentially softened constant-force potential
//   Phi(x) = (m lambda / 2 gt)(e^{-2 gt x / m} - 1),
// evaluated as -lambda x (e^z - 1)/z with z = -2 gt x / m so that gt = 0 is a
// removable singularity (Phi -> -lambda x). Phi'(x) = -lambda e^{-2 gt x/m}.
double potential(const SystemParams& p, double x);
double potential_dx(const SystemParams& p, double x);

// Immutable one-dimensional autonomous system with analytic evaluators.
// Every kind provides force; the Lagrangian side (L, dL/dv, d2L/dv2, K) is
// provided for all kinds except exact_relativistic, which carries no
// Lagrangian.
class SystemSpec {
public:
    SystemSpec(Kind kind, SystemParams params);

    Kind kind() const { return kind_; }
    const SystemParams& params() const { return params_; }
    bool has_lagrangian() const { return kind_ != Kind::exact_relativistic; }

    // True while (x, v) is inside the model's validity region.
    bool in_validity_domain(double x, double v) const;

    double force(double x, double v) const;          // dv/dt (or dv/dtau)
    double lagrangian(double x, double v) const;
    double momentum(double x, double v) const;       // dL/dv
    double lagrangian_vv(double x, double v) const;  // d2L/dv2
    double lagrangian_x(double x, double v) const;   // dL/dx
    double lagrangian_xv(double x, double v) const;  // d2L/dx dv
    double energy(double x, double v) const;         // K = v dL/dv - L
    double energy_dx(double x, double v) const;      // dK/dx at fixed v

private:
    void require_lagrangian(const char* op) const;
    void check_validity(double x, double v) const;
    double env(double x) const;  // e^{-2 gt x / m}

    Kind kind_;
    SystemParams params_;
};

// Operation-style wrappers mirroring the module surface.
double force(const SystemSpec& spec, double x, double v);
double lagrangian(const SystemSpec& spec, double x, double v);
double legendre_energy(const SystemSpec& spec, double x, double v);
double momentum_from_velocity(const SystemSpec& spec, double x, double v);

// Max over trajectory samples of |d/dt(dL/dv) - dL/dx|, with the total time
// derivative expanded by the chain rule through the system's own force (not
// by differencing samples). Small values certify L generates the dynamics.
double euler_lagrange_residual(const SystemSpec& spec,
                               const numerics::Trajectory& traj);

// Series Hamiltonian of the first-order system in the (x, p) chart:
//   H = (m/2) e^{-2 gt x/m} sum_n alpha^{2n} v^{2n+2}(x, p) + Phi(x),
//   v^{2n+2}(x, p) = [ (p/m) e^{-2 gamma x/m} ((2n+1)/(n+1)!) (2 lambda x/m)^n ]^{(2n+2)/(2n+1)}.
// Physical only for x > 0, p > 0 (hard domain error otherwise); truncated
// when a term's relative contribution drops below tol.rel_tol, diverging
// after tol.max_terms terms raises SeriesDivergenceError.
double hamiltonian_series(const SystemSpec& spec, const CanonicalPoint& pt,
                          const specfun::SeriesTolerance& tol = {});

// Hamiltonian of the reparametrized picture:
//   H = (p^2 / 2m) e^{2 gt x/m} + Phi(x).
// Exactly equals legendre_energy(transformed, x, v) when p = m v e^{-2 gt x/m}.
double hamiltonian_transformed(const SystemParams& params, double x, double p);

}  // namespace hamjac::dynsys
