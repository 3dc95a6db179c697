#include "hamjac/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hamjac/errors.hpp"

namespace hamjac::transform {

ParamTransform ParamTransform::identity() {
    return {[](double, double) { return 1.0; }, [](double v) { return v; },
            [](double vt) { return vt; }};
}

ParamTransform ParamTransform::relativistic(double alpha) {
    if (!(alpha >= 0.0))
        throw DomainError("ParamTransform::relativistic: alpha must be >= 0");
    auto check = [alpha](double v) {
        if (std::fabs(alpha * v) >= 1.0)
            throw ValidityDomainError(
                "relativistic transform: |alpha v| >= 1 at v=" + std::to_string(v),
                0.0, v);
    };
    return {[alpha, check](double, double v) {
                check(v);
                return std::sqrt(1.0 - alpha * alpha * v * v);
            },
            [alpha, check](double v) {
                check(v);
                return v / std::sqrt(1.0 - alpha * alpha * v * v);
            },
            [alpha](double vt) {
                return vt / std::sqrt(1.0 + alpha * alpha * vt * vt);
            }};
}

ParamTransform ParamTransform::scaled_time(double s) {
    if (!(s > 0.0))
        throw DomainError("ParamTransform::scaled_time: scale must be > 0");
    return {[s](double, double) { return s; }, [s](double v) { return v / s; },
            [s](double vt) { return vt * s; }};
}

namespace {

// Integral over [u, w] of the quadratic through (ta,ga), (tb,gb), (tc,gc),
// in Newton form about ta for conditioning.
double quad3_integral(double ta, double ga, double tb, double gb, double tc,
                      double gc, double u, double w) {
    double d1 = (gb - ga) / (tb - ta);
    double d2 = ((gc - gb) / (tc - tb) - d1) / (tc - ta);
    double tb1 = tb - ta;
    double su = u - ta, sw = w - ta;
    auto anti2 = [tb1](double s) { return s * s * s / 3.0 - 0.5 * tb1 * s * s; };
    return ga * (w - u) + 0.5 * d1 * (sw * sw - su * su) +
           d2 * (anti2(sw) - anti2(su));
}

}  // namespace

std::vector<std::pair<double, double>> tau_of_t(const numerics::Trajectory& traj,
                                                const ParamTransform& xf) {
    const auto& s = traj.samples;
    if (s.empty()) throw DomainError("tau_of_t: empty trajectory");

    std::vector<double> g(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        g[i] = xf.tau_integrand(s[i].x, s[i].v);
        if (!std::isfinite(g[i]) || !(g[i] > 0.0))
            throw DomainError("tau_of_t: integrand not positive at sample " +
                              std::to_string(i));
    }

    std::vector<std::pair<double, double>> out;
    out.reserve(s.size());
    out.emplace_back(s[0].t, 0.0);
    double tau = 0.0;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        double dtau;
        if (s.size() == 2) {
            dtau = 0.5 * (g[0] + g[1]) * (s[1].t - s[0].t);
        } else {
            // Quadratic through the triple centered on the interval, shifted
            // to (0, 1, 2) for the first interval.
            std::size_t j = (k == 0) ? 0 : k - 1;
            if (j + 2 >= s.size()) j = s.size() - 3;
            dtau = quad3_integral(s[j].t, g[j], s[j + 1].t, g[j + 1], s[j + 2].t,
                                  g[j + 2], s[k].t, s[k + 1].t);
        }
        if (!(dtau > 0.0))
            throw DomainError("tau_of_t: non-increasing tau at sample " +
                              std::to_string(k + 1));
        tau += dtau;
        out.emplace_back(s[k + 1].t, tau);
    }
    return out;
}

double velocity_map(const ParamTransform& xf, double v) {
    return xf.velocity_forward(v);
}

double velocity_unmap(const ParamTransform& xf, double vt) {
    return xf.velocity_inverse(vt);
}

double momentum_map(const dynsys::SystemParams& params, double x, double p) {
    if (x < 0.0) throw DomainError("momentum_map: requires x >= 0");
    double y = params.lambda * params.alpha * params.alpha * x / params.m;
    return p * specfun::bessel_combo(y);
}

double momentum_map_series(const dynsys::SystemParams& params, double x,
                           double v, const specfun::SeriesTolerance& tol) {
    double u = params.alpha * v;
    if (std::fabs(u) >= 1.0)
        throw ValidityDomainError(
            "momentum_map_series: |alpha v| >= 1 at v=" + std::to_string(v), x, v);
    double u2 = u * u;
    double term = v, sum = v;
    bool converged = (u2 == 0.0) || (v == 0.0);
    for (int n = 0; n < tol.max_terms && !converged; ++n) {
        term *= u2 * (2.0 * n + 1.0) / (2.0 * n + 2.0);
        sum += term;
        if (std::fabs(term) <= tol.rel_tol * std::fabs(sum)) converged = true;
    }
    if (!converged)
        throw SeriesDivergenceError(
            "momentum_map_series: no convergence within max_terms terms");
    return params.m * sum *
           std::exp(-2.0 * params.gamma_tilde() * x / params.m);
}

Theorem1Report theorem1_certify(const dynsys::SystemSpec& specA,
                                const dynsys::SystemSpec& specB,
                                const ParamTransform& xf,
                                const numerics::Trajectory& traj, double tol) {
    Theorem1Report rep;
    rep.samples = traj.samples.size();
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        try {
            double vdot = specA.force(s.x, s.v);
            double vt = xf.velocity_forward(s.v);
            double vtdot = specB.force(s.x, vt);

            double lhs = specA.lagrangian_vv(s.x, s.v) * vdot;
            double rhs = specB.lagrangian_vv(s.x, vt) * vtdot;
            double scale = std::max(std::fabs(lhs), std::fabs(rhs)) + 1.0;
            rep.max_condition_residual =
                std::max(rep.max_condition_residual, std::fabs(lhs - rhs) / scale);

            rep.max_energy_mismatch =
                std::max(rep.max_energy_mismatch,
                         std::fabs(specA.energy(s.x, s.v) - specB.energy(s.x, vt)));
            rep.max_dKdx_mismatch = std::max(
                rep.max_dKdx_mismatch,
                std::fabs(specA.energy_dx(s.x, s.v) - specB.energy_dx(s.x, vt)));
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " (at sample " +
                              std::to_string(i) + ")");
        }
    }
    rep.verdict = rep.max_condition_residual <= tol;
    return rep;
}

}  // namespace hamjac::transform
