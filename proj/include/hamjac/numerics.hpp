#pragma once

#include <array>
#include <functional>
#include <vector>

namespace hamjac::numerics {

enum class Method { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
    double step = 1e-4;
    double t_end = 1.0;
    Method method = Method::rk4_fixed;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

struct Sample {
    double t, x, v;
};

struct Trajectory {
    std::vector<Sample> samples;
    bool guard_hit = false;  // truncated where the guard predicate failed
};

using Rhs = std::function<std::array<double, 2>(double x, double v)>;
using Guard = std::function<bool(double x, double v)>;

// Integrates dx/dt = rhs[0], dv/dt = rhs[1] from (x0, v0) over [0, t_end].
// With a guard, the trajectory stops at the last admissible state: the final
// step is bisected until the accepted endpoint lies within 1e-12 (in time) of
// the guard boundary, and the result is marked guard_hit. A guard that
// rejects the initial state raises GuardViolationError; a non-finite
// right-hand side at an accepted state raises NonFiniteError.
Trajectory integrate_ode(const Rhs& rhs, double x0, double v0,
                         const IntegratorConfig& cfg, const Guard& guard = {});

struct QuadratureResult {
    double value = 0.0;
    double err_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive Simpson with Richardson correction, maximum recursion depth 40.
// err_estimate accumulates the per-panel corrections and is conservative for
// smooth integrands.
QuadratureResult quad_adaptive(const std::function<double(double)>& f,
                               double a, double b, double abs_tol = 1e-10,
                               double rel_tol = 1e-10);

// Running integral over a sorted grid using 5-point Gauss-Legendre per cell
// (exact for degree-9 polynomials). out[0] = 0.
std::vector<double> quad_cumulative(const std::function<double(double)>& f,
                                    const std::vector<double>& grid);

enum class FdOrder { first, second };

// Central finite difference at x0 with step h.
double fd_derivative(const std::function<double(double)>& f, double x0,
                     double h, FdOrder order);

// Cubic Hermite interpolation through (t_i, y_i) with prescribed slopes dy_i.
class HermiteInterp {
public:
    HermiteInterp(std::vector<double> t, std::vector<double> y,
                  std::vector<double> dy);
    double operator()(double tq) const;
    double t_min() const { return t_.front(); }
    double t_max() const { return t_.back(); }

private:
    std::vector<double> t_, y_, dy_;
};

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 5> kGL5Nodes = {
    -0.90617984593866399, -0.53846931010568309, 0.0, 0.53846931010568309,
    0.90617984593866399};
inline constexpr std::array<double, 5> kGL5Weights = {
    0.23692688505618909, 0.47862867049936647, 0.56888888888888889,
    0.47862867049936647, 0.23692688505618909};

}  // namespace hamjac::numerics
