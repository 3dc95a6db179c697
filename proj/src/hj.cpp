#include "hamjac/hj.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hamjac/errors.hpp"

namespace hamjac::hj {

double radicand(const dynsys::SystemParams& params, double E, double x) {
    return 2.0 * params.m * (E - dynsys::potential(params, x));
}

namespace {

// The radicand increases with x, so a negative value at x_bad means the
// accessible region starts at a boundary to the right; bracket it by
// doubling, then bisect to 1e-12.
[[noreturn]] void throw_turning_point(const dynsys::SystemParams& params,
                                      double E, double x_bad) {
    double span = std::max(1.0, std::fabs(x_bad));
    double lo = x_bad, hi = x_bad;
    bool bracketed = false;
    for (int k = 0; k < 100; ++k) {
        hi = x_bad + span;
        if (radicand(params, E, hi) >= 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
        span *= 2.0;
    }
    if (!bracketed)
        throw DomainError("momentum profile: energy below the potential on the "
                          "whole search range right of x=" +
                          std::to_string(x_bad));
    for (int k = 0; k < 200 && hi - lo > 1e-12; ++k) {
        double mid = 0.5 * (lo + hi);
        (radicand(params, E, mid) < 0.0 ? lo : hi) = mid;
    }
    throw TurningPointError("momentum profile: turning point at x=" +
                                std::to_string(hi) + " (radicand negative at x=" +
                                std::to_string(x_bad) + ")",
                            hi);
}

double bessel_arg(const dynsys::SystemParams& params, double x) {
    return params.lambda * params.alpha * params.alpha * x / params.m;
}

}  // namespace

double p_tilde_profile(const dynsys::SystemParams& params, double E, double x) {
    double rad = radicand(params, E, x);
    if (rad < 0.0) throw_turning_point(params, E, x);
    return std::exp(-params.gamma_tilde() * x / params.m) * std::sqrt(rad);
}

double p_profile(const dynsys::SystemParams& params, double E, double x) {
    if (x < 0.0) throw DomainError("p_profile: requires x >= 0");
    return p_tilde_profile(params, E, x) /
           specfun::bessel_combo(bessel_arg(params, x));
}

double dp_tilde_dE(const dynsys::SystemParams& params, double E, double x) {
    return params.m * std::exp(-2.0 * params.gamma_tilde() * x / params.m) /
           p_tilde_profile(params, E, x);
}

MomentumProfile::MomentumProfile(Picture pic, const dynsys::SystemParams& p,
                                 double energy, double lo, double hi)
    : picture(pic), params(p), E(energy), x_lo(lo), x_hi(hi) {
    params.validate();
    if (!(x_lo <= x_hi))
        throw DomainError("MomentumProfile: x_lo must be <= x_hi");
    if (picture == Picture::original && x_lo < 0.0)
        throw DomainError("MomentumProfile: original picture requires x_lo >= 0");
    const int n_scan = 256;
    for (int i = 0; i <= n_scan; ++i) {
        double x = x_lo + (x_hi - x_lo) * i / n_scan;
        if (radicand(params, E, x) < 0.0) throw_turning_point(params, E, x);
    }
}

double MomentumProfile::operator()(double x) const {
    return picture == Picture::transformed ? p_tilde_profile(params, E, x)
                                           : p_profile(params, E, x);
}

namespace {

// Antiderivatives of the Lagrange basis on the 5 Gauss-Legendre nodes:
// A_j(s) = integral from -1 to s of l_j, stored as monomial coefficients.
struct AntiderivBasis {
    std::array<std::array<double, 6>, 5> coef{};
};

const AntiderivBasis& antideriv_basis() {
    static const AntiderivBasis basis = [] {
        AntiderivBasis b;
        for (int j = 0; j < 5; ++j) {
            std::array<double, 5> poly{};  // l_j ascending coefficients
            poly[0] = 1.0;
            int deg = 0;
            double denom = 1.0;
            for (int i = 0; i < 5; ++i) {
                if (i == j) continue;
                double xi = numerics::kGL5Nodes[i];
                for (int k = deg; k >= 0; --k) {
                    poly[k + 1] += poly[k];
                    poly[k] *= -xi;
                }
                ++deg;
                denom *= numerics::kGL5Nodes[j] - xi;
            }
            std::array<double, 6> anti{};
            for (int k = 0; k <= 4; ++k) anti[k + 1] = poly[k] / denom / (k + 1);
            double at_m1 = 0.0, p = -1.0;
            for (int k = 1; k <= 5; ++k) {
                at_m1 += anti[k] * p;
                p *= -1.0;
            }
            anti[0] = -at_m1;
            b.coef[j] = anti;
        }
        return b;
    }();
    return basis;
}

HJSolution build_solution(const std::function<double(double)>& f,
                          const std::vector<double>& grid) {
    if (grid.size() < 2)
        throw DomainError("characteristic_function: grid needs >= 2 points");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw DomainError(
                "characteristic_function: grid not strictly increasing");

    HJSolution sol;
    sol.grid = grid;
    sol.W.assign(grid.size(), 0.0);
    sol.cell_f.resize(grid.size() - 1);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        double a = grid[k - 1], b = grid[k];
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double cell = 0.0;
        for (int j = 0; j < 5; ++j) {
            double y = f(mid + half * numerics::kGL5Nodes[j]);
            if (!std::isfinite(y))
                throw NonFiniteError(
                    "characteristic_function: non-finite profile at x=" +
                        std::to_string(mid + half * numerics::kGL5Nodes[j]),
                    mid + half * numerics::kGL5Nodes[j]);
            sol.cell_f[k - 1][j] = y;
            cell += numerics::kGL5Weights[j] * y;
        }
        double inc = half * cell;
        if (!(inc > 0.0))
            throw DomainError(
                "characteristic_function: profile not positive on cell ending at x=" +
                std::to_string(b));
        sol.W[k] = sol.W[k - 1] + inc;
    }
    auto res = numerics::quad_adaptive(f, grid.front(), grid.back());
    sol.err_estimate = std::fabs(res.value - sol.W.back()) + res.err_estimate;
    return sol;
}

}  // namespace

HJSolution characteristic_function(const MomentumProfile& profile,
                                   const std::vector<double>& grid) {
    double slack = 1e-12 * (1.0 + std::fabs(profile.x_hi));
    if (grid.front() < profile.x_lo - slack || grid.back() > profile.x_hi + slack)
        throw DomainError("characteristic_function: grid outside profile domain");
    HJSolution sol =
        build_solution([&](double x) { return profile(x); }, grid);
    sol.picture = profile.picture;
    sol.params = profile.params;
    sol.E = profile.E;
    sol.profile_backed = true;
    return sol;
}

HJSolution characteristic_function(const std::function<double(double)>& p_fn,
                                   const std::vector<double>& grid) {
    return build_solution(p_fn, grid);
}

double HJSolution::W_at(double x) const {
    double slack = 1e-12 * (1.0 + std::fabs(grid.back()));
    if (x < grid.front() - slack || x > grid.back() + slack)
        throw DomainError("W_at: x=" + std::to_string(x) + " outside grid range");
    x = std::clamp(x, grid.front(), grid.back());
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t i = (it == grid.begin()) ? 0 : (it - grid.begin() - 1);
    if (i >= grid.size() - 1) i = grid.size() - 2;
    double a = grid[i], b = grid[i + 1];
    double s = 2.0 * (x - a) / (b - a) - 1.0;
    const auto& basis = antideriv_basis();
    double acc = 0.0;
    for (int j = 0; j < 5; ++j) {
        const auto& cf = basis.coef[j];
        double val = cf[5];
        for (int k = 4; k >= 0; --k) val = val * s + cf[k];
        acc += cell_f[i][j] * val;
    }
    return W[i] + 0.5 * (b - a) * acc;
}

double principal_function(const HJSolution& sol, double x, double t) {
    return sol.S_at(x, t);
}

double hj_residual(Picture picture, const dynsys::SystemParams& params,
                   double E, const std::vector<double>& grid,
                   const specfun::SeriesTolerance& tol) {
    double worst = 0.0;
    if (picture == Picture::transformed) {
        for (double x : grid) {
            double pt = p_tilde_profile(params, E, x);
            worst = std::max(
                worst, std::fabs(dynsys::hamiltonian_transformed(params, x, pt) - E));
        }
        return worst;
    }
    dynsys::SystemSpec spec(dynsys::Kind::first_order, params);
    for (double x : grid) {
        double p = p_profile(params, E, x);
        worst = std::max(
            worst, std::fabs(dynsys::hamiltonian_series(spec, {x, p}, tol) - E));
    }
    return worst;
}

std::vector<std::pair<double, double>> recover_trajectory(
    const HJSolution& sol, double x0, bool allow_original_experiment) {
    if (!sol.profile_backed)
        throw DomainError("recover_trajectory: solution carries no profile");
    if (sol.picture == Picture::original && !allow_original_experiment)
        throw DomainError(
            "recover_trajectory: original-picture recovery is experimental and "
            "disabled by default");
    double span = sol.grid.back() - sol.grid.front();
    if (x0 < sol.grid.front() - 1e-9 * span || x0 > sol.grid.back() + 1e-9 * span)
        throw DomainError("recover_trajectory: x0 outside grid range");

    std::vector<double> xs{x0};
    for (double g : sol.grid)
        if (g > x0 + 1e-12 * (1.0 + span)) xs.push_back(g);

    for (double x : xs) {
        double rad = radicand(sol.params, sol.E, x);
        if (rad <= 0.0) throw_turning_point(sol.params, sol.E, x);
    }

    const auto& P = sol.params;
    auto integrand = [&](double x) {
        double g = dp_tilde_dE(P, sol.E, x);
        if (sol.picture == Picture::original)
            g /= specfun::bessel_combo(P.lambda * P.alpha * P.alpha * x / P.m);
        return g;
    };

    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    out.emplace_back(0.0, x0);
    double tau = 0.0;
    for (std::size_t k = 1; k < xs.size(); ++k) {
        tau += numerics::quad_adaptive(integrand, xs[k - 1], xs[k], 1e-12, 1e-12)
                   .value;
        out.emplace_back(tau, xs[k]);
    }
    return out;
}

std::vector<LimitRow> limit_sweep(
    const dynsys::SystemParams& base,
    const std::vector<std::pair<double, double>>& seq, double E,
    const std::vector<double>& grid) {
    std::vector<LimitRow> rows;
    rows.reserve(seq.size());
    for (auto [g, a] : seq) {
        dynsys::SystemParams P = base;
        P.gamma = g;
        P.alpha = a;
        auto p_cf = [&](double x) {
            return std::sqrt(2.0 * P.m * (E + P.lambda * x));
        };
        auto W_cf = [&](double x) {
            return std::pow(2.0 * P.m * (E + P.lambda * x), 1.5) /
                   (3.0 * P.m * P.lambda);
        };
        double p_err = 0.0;
        for (double x : grid)
            p_err = std::max(p_err, std::fabs(p_profile(P, E, x) - p_cf(x)));
        MomentumProfile prof(Picture::original, P, E, grid.front(), grid.back());
        HJSolution sol = characteristic_function(prof, grid);
        double w_err = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k)
            w_err = std::max(w_err, std::fabs(sol.W[k] - (W_cf(grid[k]) -
                                                          W_cf(grid.front()))));
        rows.push_back({g, a, p_err, w_err});
    }
    return rows;
}

}  // namespace hamjac::hj
