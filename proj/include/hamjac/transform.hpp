#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "hamjac/dynsys.hpp"
#include "hamjac/numerics.hpp"
#include "hamjac/specfun.hpp"

namespace hamjac::transform {

// A time reparametrization dtau = g(x, v) dt with g > 0 that leaves position
// unchanged, plus the induced velocity maps v <-> dx/dtau.
struct ParamTransform {
    std::function<double(double x, double v)> tau_integrand;
    std::function<double(double v)> velocity_forward;
    std::function<double(double vt)> velocity_inverse;

    // tau = t, velocities unchanged.
    static ParamTransform identity();
    // dtau = sqrt(1 - alpha^2 v^2) dt; vt = v/sqrt(1 - alpha^2 v^2) and
    // v = vt/sqrt(1 + alpha^2 vt^2). Forward map requires |alpha v| < 1.
    static ParamTransform relativistic(double alpha);
    // dtau = s dt with constant s > 0, vt = v/s. Not energy-preserving for
    // s != 1; shipped as the certifier's negative control.
    static ParamTransform scaled_time(double s);
};

// Accumulated tau over a trajectory: per-interval integration of the local
// quadratic through three consecutive samples of g (Simpson-exact on uniform
// spacing, tolerant of a short final step). tau(0) = 0, strictly increasing.
std::vector<std::pair<double, double>> tau_of_t(const numerics::Trajectory& traj,
                                                const ParamTransform& xf);

double velocity_map(const ParamTransform& xf, double v);
double velocity_unmap(const ParamTransform& xf, double vt);

// Momentum map in closed form: pt = p e^{-y}(I0(y) + I1(y)), y = lambda
// alpha^2 x / m. Reduces to the identity at alpha = 0 or x = 0.
double momentum_map(const dynsys::SystemParams& params, double x, double p);

// Momentum map as the binomial series
//   pt = m e^{-2 gt x/m} sum_n (2n)! alpha^{2n} v^{2n+1} / (4^n (n!)^2),
// whose closed form is m vt e^{-2 gt x/m}. Requires |alpha v| < 1.
double momentum_map_series(const dynsys::SystemParams& params, double x,
                           double v, const specfun::SeriesTolerance& tol = {});

struct Theorem1Report {
    double max_condition_residual = 0.0;  // scaled
    double max_energy_mismatch = 0.0;
    double max_dKdx_mismatch = 0.0;
    bool verdict = false;
    std::size_t samples = 0;
};

// Certifies along a trajectory of specA that xf maps it onto specB with the
// energy left invariant. At every sample it checks
//   (i) the invariance condition  d2L/dv2 * dv/dt = d2Lb/dvt2 * dvt/dtau
//       (residual scaled by max magnitude + 1),
//   (ii) K(x, v) = Kb(x, vt),
//   (iii) the intermediate identity dK/dx = dKb/dx via analytic partials.
// verdict is max_condition_residual <= tol.
Theorem1Report theorem1_certify(const dynsys::SystemSpec& specA,
                                const dynsys::SystemSpec& specB,
                                const ParamTransform& xf,
                                const numerics::Trajectory& traj, double tol);

}  // namespace hamjac::transform
