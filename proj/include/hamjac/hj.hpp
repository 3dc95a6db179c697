#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hamjac/dynsys.hpp"
#include "hamjac/numerics.hpp"
#include "hamjac/specfun.hpp"

namespace hamjac::hj {

// transformed: the reparametrized picture, momentum pt(x, E) in closed form.
// original: the first-order picture, p(x, E) = pt / (e^{-y}(I0(y)+I1(y))).
enum class Picture { transformed, original };

// 2m(E - Phi(x)); strictly increasing in x, so a zero is a left boundary.
double radicand(const dynsys::SystemParams& params, double E, double x);

// pt(x, E) = e^{-gt x/m} sqrt(2m(E - Phi(x))). Satisfies the algebraic
// identity H(x, pt(x, E)) = E in the transformed picture. A negative
// radicand raises TurningPointError carrying the bisected boundary.
double p_tilde_profile(const dynsys::SystemParams& params, double E, double x);

// p(x, E): the transformed profile pushed through the inverse momentum map,
// p = pt / bessel_combo(lambda alpha^2 x / m). Requires x >= 0 (x = 0 is the
// closure limit of the physical x > 0 domain).
double p_profile(const dynsys::SystemParams& params, double E, double x);

// Closed-form energy slope dpt/dE = m e^{-2 gt x/m} / pt, the integrand of
// trajectory recovery.
double dp_tilde_dE(const dynsys::SystemParams& params, double E, double x);

// Momentum as a function of x at fixed energy on [x_lo, x_hi]. Construction
// scans the radicand and raises TurningPointError if it goes negative.
struct MomentumProfile {
    Picture picture;
    dynsys::SystemParams params;
    double E;
    double x_lo, x_hi;

    MomentumProfile(Picture pic, const dynsys::SystemParams& p, double energy,
                    double lo, double hi);
    double operator()(double x) const;
};

// Grid representation of the characteristic function W(x; E) with the
// convention W(grid[0]) = 0. Between nodes, W is evaluated from the cell's
// 5-point Gauss-Legendre samples through the degree-5 antiderivative of
// their interpolating polynomial, so dW/dx tracks the profile to high order.
struct HJSolution {
    Picture picture = Picture::transformed;
    dynsys::SystemParams params;
    double E = 0.0;
    std::vector<double> grid;
    std::vector<double> W;
    double err_estimate = 0.0;

    double W_at(double x) const;
    double S_at(double x, double t) const { return W_at(x) - E * t; }

    // set when built from a MomentumProfile (required by recover_trajectory)
    bool profile_backed = false;
    std::vector<std::array<double, 5>> cell_f;  // profile at GL5 nodes per cell
};

// W(x) = integral of the profile over the grid (cumulative Gauss-Legendre).
HJSolution characteristic_function(const MomentumProfile& profile,
                                   const std::vector<double>& grid);
// Same quadrature for an arbitrary positive integrand (degenerate/test entry;
// the result carries no profile metadata).
HJSolution characteristic_function(const std::function<double(double)>& p_fn,
                                   const std::vector<double>& grid);

// S(x, t) = W(x) - E t (the transformed picture reads t as tau).
double principal_function(const HJSolution& sol, double x, double t);

// Max over the grid of |H(x, p(x, E)) - E|. In the transformed picture this
// is an algebraic identity (roundoff-level); in the original picture it is a
// measurement of the series Hamiltonian's accuracy, exact only at alpha = 0.
// Original picture requires every grid point > 0.
double hj_residual(Picture picture, const dynsys::SystemParams& params,
                   double E, const std::vector<double>& grid,
                   const specfun::SeriesTolerance& tol = {});

// Jacobi recovery: tau(x) = integral from x0 of dpt/dE, returned at x0 and
// every grid node beyond it. Transformed picture only, unless the
// experimental original-picture recovery is explicitly enabled.
std::vector<std::pair<double, double>> recover_trajectory(
    const HJSolution& sol, double x0, bool allow_original_experiment = false);

struct LimitRow {
    double gamma, alpha;
    double p_err;  // max |p_profile - sqrt(2m(E + lambda x))| over the grid
    double w_err;  // max |W - closed form| over the grid
};

// Discrepancy against the conservative closed forms for each (gamma, alpha)
// of the sequence; both columns must shrink as the parameters approach 0.
std::vector<LimitRow> limit_sweep(
    const dynsys::SystemParams& base,
    const std::vector<std::pair<double, double>>& seq, double E,
    const std::vector<double>& grid);

}  // namespace hamjac::hj
