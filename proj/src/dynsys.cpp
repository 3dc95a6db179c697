#include "hamjac/dynsys.hpp"

#include <cmath>
#include <string>

#include "hamjac/errors.hpp"

namespace hamjac::dynsys {

void SystemParams::validate() const {
    if (!(m > 0.0)) throw DomainError("SystemParams: m must be > 0");
    if (!(lambda > 0.0)) throw DomainError("SystemParams: lambda must be > 0");
    if (!(gamma >= 0.0)) throw DomainError("SystemParams: gamma must be >= 0");
    if (!(alpha >= 0.0)) throw DomainError("SystemParams: alpha must be >= 0");
}

double potential(const SystemParams& p, double x) {
    return -p.lambda * x * specfun::expm1_ratio(-2.0 * p.gamma_tilde() * x / p.m);
}

double potential_dx(const SystemParams& p, double x) {
    return -p.lambda * std::exp(-2.0 * p.gamma_tilde() * x / p.m);
}

SystemSpec::SystemSpec(Kind kind, SystemParams params)
    : kind_(kind), params_(params) {
    params_.validate();
    if (kind_ == Kind::exact_relativistic && !(params_.c > 0.0))
        throw DomainError("SystemSpec: exact_relativistic requires c > 0");
    if (kind_ == Kind::quadratic_drag && params_.alpha != 0.0)
        throw DomainError("SystemSpec: quadratic_drag requires alpha = 0");
}

bool SystemSpec::in_validity_domain(double, double v) const {
    switch (kind_) {
        case Kind::exact_relativistic:
            return std::fabs(v) < params_.c;
        case Kind::first_order:
            return params_.alpha == 0.0 || std::fabs(params_.alpha * v) < 1.0;
        default:
            return true;
    }
}

void SystemSpec::check_validity(double x, double v) const {
    if (!in_validity_domain(x, v))
        throw ValidityDomainError(
            "state (x=" + std::to_string(x) + ", v=" + std::to_string(v) +
                ") outside model validity domain",
            x, v);
}

void SystemSpec::require_lagrangian(const char* op) const {
    if (!has_lagrangian())
        throw DomainError(std::string(op) +
                          ": no Lagrangian defined for exact_relativistic");
}

double SystemSpec::env(double x) const {
    return std::exp(-2.0 * params_.gamma_tilde() * x / params_.m);
}

double SystemSpec::force(double x, double v) const {
    const auto& p = params_;
    switch (kind_) {
        case Kind::exact_relativistic: {
            check_validity(x, v);
            double w = 1.0 - (v / p.c) * (v / p.c);
            return (p.lambda - p.gamma * v * v) * std::pow(w, 1.5) / p.m;
        }
        case Kind::first_order:
            check_validity(x, v);
            [[fallthrough]];
        case Kind::quadratic_drag:
            return (p.lambda - p.gamma * v * v) *
                   (1.0 - p.alpha * p.alpha * v * v) / p.m;
        case Kind::transformed:
            return (p.lambda + p.gamma_tilde() * v * v) / p.m;
        case Kind::free_constant_force:
            return p.lambda / p.m;
        case Kind::harmonic_reference:
            return -x;
    }
    return 0.0;
}

double SystemSpec::lagrangian(double x, double v) const {
    require_lagrangian("lagrangian");
    const auto& p = params_;
    switch (kind_) {
        case Kind::first_order:
        case Kind::quadratic_drag: {
            check_validity(x, v);
            // v atanh(alpha v)/alpha, Taylor v^2 (1 + u^2/3 + u^4/5) below
            // |u| = 1e-6 where the direct quotient loses precision.
            double u = p.alpha * v;
            double vat = (std::fabs(u) < 1e-6)
                             ? v * v * (1.0 + u * u * (1.0 / 3.0 + u * u * 0.2))
                             : v * std::atanh(u) / p.alpha;
            return 0.5 * p.m * vat * env(x) - potential(p, x);
        }
        case Kind::transformed:
            return 0.5 * p.m * v * v * env(x) - potential(p, x);
        case Kind::free_constant_force:
            return 0.5 * p.m * v * v + p.lambda * x;
        case Kind::harmonic_reference:
            return 0.5 * p.m * (v * v - x * x);
        default:
            return 0.0;
    }
}

double SystemSpec::momentum(double x, double v) const {
    require_lagrangian("momentum");
    const auto& p = params_;
    switch (kind_) {
        case Kind::first_order:
        case Kind::quadratic_drag: {
            check_validity(x, v);
            // (1/2alpha)(atanh(u) + u/(1-u^2)) -> v(1 + 2u^2/3 + 3u^4/5).
            double u = p.alpha * v;
            double bracket =
                (std::fabs(u) < 1e-6)
                    ? v * (1.0 + u * u * (2.0 / 3.0 + u * u * 0.6))
                    : (std::atanh(u) + u / (1.0 - u * u)) / (2.0 * p.alpha);
            return p.m * bracket * env(x);
        }
        case Kind::transformed:
            return p.m * v * env(x);
        case Kind::free_constant_force:
        case Kind::harmonic_reference:
            return p.m * v;
        default:
            return 0.0;
    }
}

double SystemSpec::lagrangian_vv(double x, double v) const {
    require_lagrangian("lagrangian_vv");
    const auto& p = params_;
    switch (kind_) {
        case Kind::first_order:
        case Kind::quadratic_drag: {
            check_validity(x, v);
            double w = 1.0 - p.alpha * p.alpha * v * v;
            return p.m * env(x) / (w * w);
        }
        case Kind::transformed:
            return p.m * env(x);
        case Kind::free_constant_force:
        case Kind::harmonic_reference:
            return p.m;
        default:
            return 0.0;
    }
}

double SystemSpec::lagrangian_x(double x, double v) const {
    require_lagrangian("lagrangian_x");
    const auto& p = params_;
    switch (kind_) {
        case Kind::first_order:
        case Kind::quadratic_drag: {
            check_validity(x, v);
            double u = p.alpha * v;
            double vat = (std::fabs(u) < 1e-6)
                             ? v * v * (1.0 + u * u * (1.0 / 3.0 + u * u * 0.2))
                             : v * std::atanh(u) / p.alpha;
            return env(x) * (p.lambda - p.gamma_tilde() * vat);
        }
        case Kind::transformed:
            return env(x) * (p.lambda - p.gamma_tilde() * v * v);
        case Kind::free_constant_force:
            return p.lambda;
        case Kind::harmonic_reference:
            return -p.m * x;
        default:
            return 0.0;
    }
}

double SystemSpec::lagrangian_xv(double x, double v) const {
    require_lagrangian("lagrangian_xv");
    switch (kind_) {
        case Kind::first_order:
        case Kind::quadratic_drag:
        case Kind::transformed:
            // dL/dv carries the x dependence only through e^{-2 gt x/m}.
            return -2.0 * params_.gamma_tilde() / params_.m * momentum(x, v);
        default:
            return 0.0;
    }
}

double SystemSpec::energy(double x, double v) const {
    require_lagrangian("energy");
    const auto& p = params_;
    switch (kind_) {
        case Kind::first_order:
        case Kind::quadratic_drag: {
            check_validity(x, v);
            double w = 1.0 - p.alpha * p.alpha * v * v;
            return 0.5 * p.m * v * v / w * env(x) + potential(p, x);
        }
        case Kind::transformed:
            return 0.5 * p.m * v * v * env(x) + potential(p, x);
        case Kind::free_constant_force:
            return 0.5 * p.m * v * v - p.lambda * x;
        case Kind::harmonic_reference:
            return 0.5 * p.m * (v * v + x * x);
        default:
            return 0.0;
    }
}

double SystemSpec::energy_dx(double x, double v) const {
    require_lagrangian("energy_dx");
    const auto& p = params_;
    switch (kind_) {
        case Kind::first_order:
        case Kind::quadratic_drag: {
            check_validity(x, v);
            double w = 1.0 - p.alpha * p.alpha * v * v;
            return -env(x) * (p.lambda + p.gamma_tilde() * v * v / w);
        }
        case Kind::transformed:
            return -env(x) * (p.lambda + p.gamma_tilde() * v * v);
        case Kind::free_constant_force:
            return -p.lambda;
        case Kind::harmonic_reference:
            return p.m * x;
        default:
            return 0.0;
    }
}

double force(const SystemSpec& spec, double x, double v) {
    return spec.force(x, v);
}

double lagrangian(const SystemSpec& spec, double x, double v) {
    return spec.lagrangian(x, v);
}

double legendre_energy(const SystemSpec& spec, double x, double v) {
    return spec.energy(x, v);
}

double momentum_from_velocity(const SystemSpec& spec, double x, double v) {
    return spec.momentum(x, v);
}

double euler_lagrange_residual(const SystemSpec& spec,
                               const numerics::Trajectory& traj) {
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        double a = spec.force(s.x, s.v);
        double res = spec.lagrangian_vv(s.x, s.v) * a +
                     spec.lagrangian_xv(s.x, s.v) * s.v -
                     spec.lagrangian_x(s.x, s.v);
        worst = std::max(worst, std::fabs(res));
    }
    return worst;
}

double hamiltonian_series(const SystemSpec& spec, const CanonicalPoint& pt,
                          const specfun::SeriesTolerance& tol) {
    if (spec.kind() != Kind::first_order && spec.kind() != Kind::quadratic_drag)
        throw DomainError("hamiltonian_series: defined for the first-order system");
    const auto& p = spec.params();
    if (!(pt.x > 0.0) || !(pt.p > 0.0))
        throw DomainError("hamiltonian_series: requires x > 0 and p > 0");

    const double a2 = p.alpha * p.alpha;
    const double base_core = (pt.p / p.m) * std::exp(-2.0 * p.gamma * pt.x / p.m);
    const double zx = 2.0 * p.lambda * pt.x / p.m;

    double sum = 0.0;
    double alpha_pow = 1.0;  // alpha^{2n}
    double fact = 1.0;       // (n+1)!
    double zpow = 1.0;       // (2 lambda x/m)^n
    bool converged = false;
    for (int n = 0; n < tol.max_terms; ++n) {
        fact *= n + 1;
        double base = base_core * (2.0 * n + 1.0) / fact * zpow;
        double term =
            alpha_pow * std::pow(base, (2.0 * n + 2.0) / (2.0 * n + 1.0));
        sum += term;
        if (term <= tol.rel_tol * std::fabs(sum) || a2 == 0.0) {
            converged = true;
            break;
        }
        alpha_pow *= a2;
        zpow *= zx;
    }
    if (!converged)
        throw SeriesDivergenceError(
            "hamiltonian_series: no convergence within max_terms terms");
    return 0.5 * p.m * std::exp(-2.0 * p.gamma_tilde() * pt.x / p.m) * sum +
           potential(p, pt.x);
}

double hamiltonian_transformed(const SystemParams& params, double x, double p) {
    return 0.5 * p * p / params.m *
               std::exp(2.0 * params.gamma_tilde() * x / params.m) +
           potential(params, x);
}

}  // namespace hamjac::dynsys
