#include "hamjac/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hamjac/errors.hpp"

namespace hamjac::numerics {

namespace {

struct State {
    double x, v;
};

std::array<double, 2> eval_rhs(const Rhs& rhs, double t, double x, double v) {
    auto d = rhs(x, v);
    if (!std::isfinite(d[0]) || !std::isfinite(d[1]))
        throw NonFiniteError(
            "integrate_ode: non-finite right-hand side near t=" + std::to_string(t), t);
    return d;
}

State rk4_step(const Rhs& rhs, double t, const State& s, double h) {
    auto k1 = eval_rhs(rhs, t, s.x, s.v);
    auto k2 = eval_rhs(rhs, t, s.x + 0.5 * h * k1[0], s.v + 0.5 * h * k1[1]);
    auto k3 = eval_rhs(rhs, t, s.x + 0.5 * h * k2[0], s.v + 0.5 * h * k2[1]);
    auto k4 = eval_rhs(rhs, t, s.x + h * k3[0], s.v + h * k3[1]);
    return {s.x + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            s.v + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

// Dormand-Prince 5(4) pair. Returns the 5th-order state and a scaled error
// norm (<= 1 means the step is acceptable at the given tolerances).
State dopri_step(const Rhs& rhs, double t, const State& s, double h,
                 double abs_tol, double rel_tol, double& err_norm) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    auto k1 = eval_rhs(rhs, t, s.x, s.v);
    auto k2 = eval_rhs(rhs, t, s.x + h * a21 * k1[0], s.v + h * a21 * k1[1]);
    auto k3 = eval_rhs(rhs, t, s.x + h * (a31 * k1[0] + a32 * k2[0]),
                       s.v + h * (a31 * k1[1] + a32 * k2[1]));
    auto k4 = eval_rhs(rhs, t, s.x + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                       s.v + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1]));
    auto k5 = eval_rhs(
        rhs, t, s.x + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
        s.v + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]));
    auto k6 = eval_rhs(rhs, t,
                       s.x + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] +
                                  a64 * k4[0] + a65 * k5[0]),
                       s.v + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] +
                                  a64 * k4[1] + a65 * k5[1]));
    State out{
        s.x + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]),
        s.v + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1])};
    auto k7 = eval_rhs(rhs, t, out.x, out.v);

    double ex = h * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] +
                     e6 * k6[0] + e7 * k7[0]);
    double ev = h * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] +
                     e6 * k6[1] + e7 * k7[1]);
    double sx = abs_tol + rel_tol * std::max(std::fabs(s.x), std::fabs(out.x));
    double sv = abs_tol + rel_tol * std::max(std::fabs(s.v), std::fabs(out.v));
    err_norm = std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ev / sv) * (ev / sv)));
    return out;
}

// Largest step fraction of h_full for which the guard still holds, found by
// bisection to 1e-12 (stepper exceptions count as out of bounds).
double bisect_guard_step(const std::function<State(double)>& step_to,
                         const Guard& guard, double h_full) {
    double lo = 0.0, hi = h_full;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        bool ok = false;
        try {
            State s = step_to(mid);
            ok = guard(s.x, s.v);
        } catch (const std::exception&) {
            ok = false;
        }
        (ok ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

Trajectory integrate_ode(const Rhs& rhs, double x0, double v0,
                         const IntegratorConfig& cfg, const Guard& guard) {
    if (!(cfg.step > 0.0) || !(cfg.t_end > 0.0))
        throw DomainError("integrate_ode: step and t_end must be positive");
    if (guard && !guard(x0, v0))
        throw GuardViolationError("integrate_ode: guard rejects initial state",
                                  0.0, x0, v0);

    Trajectory traj;
    double t = 0.0;
    State s{x0, v0};
    traj.samples.push_back({t, s.x, s.v});

    double h_next = cfg.step;  // adaptive method's working step
    while (t < cfg.t_end) {
        double h = std::min(cfg.method == Method::rk4_fixed ? cfg.step : h_next,
                            cfg.t_end - t);
        if (h <= 1e-15 * cfg.t_end) break;

        State cand;
        if (cfg.method == Method::rk4_fixed) {
            cand = rk4_step(rhs, t, s, h);
        } else {
            double err = 0.0;
            cand = dopri_step(rhs, t, s, h, cfg.abs_tol, cfg.rel_tol, err);
            if (err > 1.0) {
                h_next = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                if (h_next < 1e-14 * std::max(1.0, cfg.t_end))
                    throw NonFiniteError(
                        "integrate_ode: adaptive step underflow near t=" +
                            std::to_string(t),
                        t);
                continue;
            }
            h_next = h * std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2),
                                    0.2, 5.0);
        }

        if (guard && !guard(cand.x, cand.v)) {
            auto step_to = [&](double hh) {
                if (cfg.method == Method::rk4_fixed) return rk4_step(rhs, t, s, hh);
                double e = 0.0;
                return dopri_step(rhs, t, s, hh, cfg.abs_tol, cfg.rel_tol, e);
            };
            double h_ok = bisect_guard_step(step_to, guard, h);
            if (h_ok > 0.0) {
                State last = step_to(h_ok);
                traj.samples.push_back({t + h_ok, last.x, last.v});
            }
            traj.guard_hit = true;
            return traj;
        }

        s = cand;
        t += h;
        traj.samples.push_back({t, s.x, s.v});
    }
    return traj;
}

namespace {

struct QuadCtx {
    const std::function<double(double)>& f;
    long evals = 0;
    double err_acc = 0.0;
};

double quad_eval(QuadCtx& c, double x) {
    double y = c.f(x);
    ++c.evals;
    if (!std::isfinite(y))
        throw NonFiniteError(
            "quad_adaptive: non-finite integrand at x=" + std::to_string(x), x);
    return y;
}

double simpson_adapt(QuadCtx& c, double a, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double flm = quad_eval(c, 0.5 * (a + m));
    double frm = quad_eval(c, 0.5 * (m + b));
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = (left + right - whole) / 15.0;
    if (std::fabs(err) <= tol) {
        c.err_acc += std::fabs(err);
        return left + right + err;
    }
    if (depth >= 40)
        throw QuadratureDepthError(
            "quad_adaptive: depth 40 exhausted near x=" + std::to_string(m));
    return simpson_adapt(c, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_adapt(c, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

QuadratureResult quad_adaptive(const std::function<double(double)>& f, double a,
                               double b, double abs_tol, double rel_tol) {
    if (a > b) throw DomainError("quad_adaptive: a > b");
    if (a == b) return {0.0, 0.0, 0};
    QuadCtx ctx{f};
    double fa = quad_eval(ctx, a);
    double fm = quad_eval(ctx, 0.5 * (a + b));
    double fb = quad_eval(ctx, b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double tol = std::max(abs_tol, rel_tol * std::fabs(whole));
    double value = simpson_adapt(ctx, a, b, fa, fm, fb, whole, tol, 0);
    return {value, ctx.err_acc, ctx.evals};
}

std::vector<double> quad_cumulative(const std::function<double(double)>& f,
                                    const std::vector<double>& grid) {
    if (grid.size() < 2)
        throw DomainError("quad_cumulative: grid needs at least 2 points");
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        double a = grid[k - 1], b = grid[k];
        if (b < a) throw DomainError("quad_cumulative: grid not sorted");
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double cell = 0.0;
        for (int j = 0; j < 5; ++j) {
            double y = f(mid + half * kGL5Nodes[j]);
            if (!std::isfinite(y))
                throw NonFiniteError("quad_cumulative: non-finite integrand at x=" +
                                         std::to_string(mid + half * kGL5Nodes[j]),
                                     mid + half * kGL5Nodes[j]);
            cell += kGL5Weights[j] * y;
        }
        out[k] = out[k - 1] + half * cell;
    }
    return out;
}

double fd_derivative(const std::function<double(double)>& f, double x0, double h,
                     FdOrder order) {
    if (!(h > 0.0)) throw DomainError("fd_derivative: h must be positive");
    auto ev = [&](double x) {
        double y = f(x);
        if (!std::isfinite(y))
            throw NonFiniteError(
                "fd_derivative: non-finite evaluation at x=" + std::to_string(x), x);
        return y;
    };
    if (order == FdOrder::first) return (ev(x0 + h) - ev(x0 - h)) / (2.0 * h);
    return (ev(x0 + h) - 2.0 * ev(x0) + ev(x0 - h)) / (h * h);
}

HermiteInterp::HermiteInterp(std::vector<double> t, std::vector<double> y,
                             std::vector<double> dy)
    : t_(std::move(t)), y_(std::move(y)), dy_(std::move(dy)) {
    if (t_.size() < 2 || t_.size() != y_.size() || t_.size() != dy_.size())
        throw DomainError("HermiteInterp: need >= 2 samples of equal length");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1]))
            throw DomainError("HermiteInterp: abscissae not strictly increasing");
}

double HermiteInterp::operator()(double tq) const {
    double slack = 1e-9 * (t_.back() - t_.front());
    if (tq < t_.front() - slack || tq > t_.back() + slack)
        throw DomainError("HermiteInterp: query " + std::to_string(tq) +
                          " outside [" + std::to_string(t_.front()) + ", " +
                          std::to_string(t_.back()) + "]");
    tq = std::clamp(tq, t_.front(), t_.back());
    auto it = std::upper_bound(t_.begin(), t_.end(), tq);
    std::size_t i = (it == t_.begin()) ? 0 : (it - t_.begin() - 1);
    if (i >= t_.size() - 1) i = t_.size() - 2;
    double dt = t_[i + 1] - t_[i];
    double s = (tq - t_[i]) / dt;
    double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    double h10 = s * (1.0 - s) * (1.0 - s);
    double h01 = s * s * (3.0 - 2.0 * s);
    double h11 = s * s * (s - 1.0);
    return h00 * y_[i] + h10 * dt * dy_[i] + h01 * y_[i + 1] + h11 * dt * dy_[i + 1];
}

}  // namespace hamjac::numerics
