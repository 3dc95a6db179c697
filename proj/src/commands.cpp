#include "hamjac/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "hamjac/dynsys.hpp"
#include "hamjac/errors.hpp"
#include "hamjac/hj.hpp"
#include "hamjac/numerics.hpp"
#include "hamjac/report.hpp"
#include "hamjac/transform.hpp"

namespace hamjac::commands {

namespace {

using config::RunConfig;

// |x|, |v| ceiling: finite-escape solutions (gamma_tilde > 0 in the
// reparametrized picture) blow up at finite tau; the ceiling turns that into
// a clean guard stop instead of a float overflow.
constexpr double kStateCeiling = 1e100;

void ensure_out_dir(const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec)
        throw ConfigError("out_dir: cannot create '" + cfg.out_dir +
                          "': " + ec.message());
}

std::string table_path(const RunConfig& cfg, const std::string& base) {
    return cfg.out_dir + "/" + base +
           (cfg.format == RunConfig::Format::csv ? ".csv" : ".json");
}

void write_table(const RunConfig& cfg, const std::string& base,
                 const report::Table& t) {
    report::write_text_file(table_path(cfg, base),
                            cfg.format == RunConfig::Format::csv
                                ? report::table_csv(t)
                                : report::table_json(t));
}

void write_report(const RunConfig& cfg, const std::string& base,
                  report::Report& rep) {
    rep.config_digest = config::fnv1a_hex(config::serialize_config(cfg));
    report::write_text_file(cfg.out_dir + "/" + base + ".json",
                            rep.to_json() + "\n");
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
    g.front() = lo;
    g.back() = hi;
    return g;
}

numerics::Rhs system_rhs(const dynsys::SystemSpec& spec) {
    return [spec](double x, double v) -> std::array<double, 2> {
        return {v, spec.force(x, v)};
    };
}

numerics::Guard system_guard(const dynsys::SystemSpec& spec) {
    return [spec](double x, double v) {
        return spec.in_validity_domain(x, v) && std::fabs(x) <= kStateCeiling &&
               std::fabs(v) <= kStateCeiling;
    };
}

bool exponential_family(dynsys::Kind k) {
    return k == dynsys::Kind::first_order || k == dynsys::Kind::transformed ||
           k == dynsys::Kind::quadratic_drag ||
           k == dynsys::Kind::free_constant_force;
}

// E from the config, defaulting to the energy of the initial state in the
// configured kind's own chart.
double pick_energy(const RunConfig& cfg) {
    if (cfg.hj.has_E) return cfg.hj.E;
    if (cfg.kind == dynsys::Kind::exact_relativistic)
        throw ConfigError("hj.E: required for kind exact_relativistic");
    return dynsys::SystemSpec(cfg.kind, cfg.system).energy(cfg.x0, cfg.v0);
}

void require_exponential_family(const RunConfig& cfg, const char* cmd) {
    if (!exponential_family(cfg.kind))
        throw ConfigError(std::string("kind: ") + cmd +
                          " requires one of first_order, transformed, "
                          "quadratic_drag, free_constant_force");
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    dynsys::SystemSpec spec(cfg.kind, cfg.system);
    numerics::Trajectory traj = numerics::integrate_ode(
        system_rhs(spec), cfg.x0, cfg.v0, cfg.integrator, system_guard(spec));

    bool lag = spec.has_lagrangian();
    bool with_tau =
        cfg.kind == dynsys::Kind::first_order && cfg.system.alpha > 0.0;
    std::vector<std::pair<double, double>> taus;
    if (with_tau)
        taus = transform::tau_of_t(
            traj, transform::ParamTransform::relativistic(cfg.system.alpha));

    report::Table tbl;
    tbl.columns = {"t", "x", "v"};
    if (lag) {
        tbl.columns.push_back("K");
        tbl.columns.push_back("p");
    }
    if (with_tau) tbl.columns.push_back("tau");
    tbl.rows.reserve(traj.samples.size());
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const auto& s = traj.samples[k];
        std::vector<double> row{s.t, s.x, s.v};
        if (lag) {
            row.push_back(spec.energy(s.x, s.v));
            row.push_back(spec.momentum(s.x, s.v));
        }
        if (with_tau) row.push_back(taus[k].second);
        tbl.rows.push_back(std::move(row));
    }
    write_table(cfg, "simulate", tbl);

    if (traj.guard_hit) {
        const auto& last = traj.samples.back();
        std::cerr << "simulate: guard stopped the trajectory at t="
                  << report::format_g17(last.t)
                  << ", x=" << report::format_g17(last.x)
                  << ", v=" << report::format_g17(last.v) << "\n";
        return 3;
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    const auto& P = cfg.system;
    dynsys::SystemSpec A(dynsys::Kind::first_order, P);
    dynsys::SystemSpec B(dynsys::Kind::transformed, P);
    transform::ParamTransform xf =
        cfg.verify.tau_scale != 1.0
            ? transform::ParamTransform::scaled_time(cfg.verify.tau_scale)
            : transform::ParamTransform::relativistic(P.alpha);

    numerics::Trajectory trajA = numerics::integrate_ode(
        system_rhs(A), cfg.x0, cfg.v0, cfg.integrator, system_guard(A));
    transform::Theorem1Report cert =
        transform::theorem1_certify(A, B, xf, trajA, cfg.verify.condition_tol);

    report::Report rep;
    rep.add("theorem1_condition", cert.max_condition_residual,
            cfg.verify.condition_tol);
    rep.add("theorem1_energy", cert.max_energy_mismatch, cfg.verify.energy_tol);
    rep.add("theorem1_dkdx", cert.max_dKdx_mismatch, cfg.verify.dkdx_tol);

    double K0 = A.energy(cfg.x0, cfg.v0);
    double drift_t = 0.0;
    for (const auto& s : trajA.samples)
        drift_t = std::max(drift_t, std::fabs(A.energy(s.x, s.v) - K0));
    rep.add("energy_conservation_t", drift_t / (1.0 + std::fabs(K0)),
            cfg.verify.drift_tol);

    auto taus = transform::tau_of_t(trajA, xf);
    double tau_end = taus.back().second;
    double vt0 = xf.velocity_forward(cfg.v0);

    numerics::IntegratorConfig bcfg = cfg.integrator;
    bcfg.t_end = tau_end;
    numerics::Trajectory trajB = numerics::integrate_ode(
        system_rhs(B), cfg.x0, vt0, bcfg, system_guard(B));

    double K0b = B.energy(cfg.x0, vt0);
    double drift_tau = 0.0;
    for (const auto& s : trajB.samples)
        drift_tau = std::max(drift_tau, std::fabs(B.energy(s.x, s.v) - K0b));
    rep.add("energy_conservation_tau", drift_tau / (1.0 + std::fabs(K0b)),
            cfg.verify.drift_tol);

    rep.add("euler_lagrange_first_order",
            dynsys::euler_lagrange_residual(A, trajA), cfg.verify.el_tol);
    rep.add("euler_lagrange_transformed",
            dynsys::euler_lagrange_residual(B, trajB), cfg.verify.el_tol);

    double roundtrip = 0.0;
    for (const auto& s : trajA.samples)
        roundtrip = std::max(
            roundtrip,
            std::fabs(xf.velocity_inverse(xf.velocity_forward(s.v)) - s.v));
    rep.add("velocity_roundtrip", roundtrip, cfg.verify.roundtrip_tol);

    // Commuting dynamics: transporting the initial state to the new picture
    // and flowing in tau must land where the original flow sits at tau(t).
    std::vector<double> tb, xb, vb;
    tb.reserve(trajB.samples.size());
    for (const auto& s : trajB.samples) {
        tb.push_back(s.t);
        xb.push_back(s.x);
        vb.push_back(s.v);
    }
    double commute = 0.0;
    if (tb.size() >= 2) {
        numerics::HermiteInterp xB(tb, xb, vb);
        for (std::size_t k = 0; k < trajA.samples.size(); ++k)
            commute = std::max(
                commute, std::fabs(xB(taus[k].second) - trajA.samples[k].x));
    }
    rep.add("commuting_dynamics", commute, cfg.verify.commute_tol);

    write_report(cfg, "verify_report", rep);
    return rep.all_pass() ? 0 : 1;
}

int cmd_hj(const RunConfig& cfg) {
    require_exponential_family(cfg, "hj");
    if (!(cfg.hj.x_lo < cfg.hj.x_hi))
        throw ConfigError("hj.x_lo: must be < hj.x_hi for the hj command");
    if (cfg.hj.x_lo < 0.0)
        throw ConfigError("hj.x_lo: must be >= 0 (original picture)");
    ensure_out_dir(cfg);

    const auto& P = cfg.system;
    double E = pick_energy(cfg);
    std::vector<double> grid = linspace(cfg.hj.x_lo, cfg.hj.x_hi, cfg.hj.n_grid);
    specfun::SeriesTolerance tol{cfg.hj.rel_tol, cfg.hj.max_terms};

    hj::MomentumProfile prof_t(hj::Picture::transformed, P, E, cfg.hj.x_lo,
                               cfg.hj.x_hi);
    hj::MomentumProfile prof_o(hj::Picture::original, P, E, cfg.hj.x_lo,
                               cfg.hj.x_hi);
    hj::HJSolution sol_t = hj::characteristic_function(prof_t, grid);
    hj::HJSolution sol_o = hj::characteristic_function(prof_o, grid);

    report::Table tbl;
    tbl.columns = {"x", "p", "p_tilde", "W", "W_tilde", "S_at_t0"};
    tbl.rows.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        tbl.rows.push_back({grid[k], prof_o(grid[k]), prof_t(grid[k]),
                            sol_o.W[k], sol_t.W[k],
                            hj::principal_function(sol_o, grid[k], 0.0)});
    write_table(cfg, "hj_profile", tbl);

    report::Report rep;
    rep.add("hj_residual_transformed",
            hj::hj_residual(hj::Picture::transformed, P, E, grid, tol), 1e-12);

    // The series Hamiltonian is defined for x > 0 only; the x = 0 node (if
    // present) is excluded from the original-picture residual.
    std::vector<double> grid_pos;
    for (double x : grid)
        if (x > 0.0) grid_pos.push_back(x);
    double res_o = grid_pos.empty()
                       ? 0.0
                       : hj::hj_residual(hj::Picture::original, P, E, grid_pos,
                                         tol);
    if (P.alpha == 0.0)
        rep.add("hj_residual_original", res_o, 1e-10);
    else
        rep.add_info("hj_residual_original", res_o);

    if (!cfg.sweep.alpha_scan.empty()) {
        report::Table scan;
        scan.columns = {"alpha", "residual"};
        std::vector<double> resid(cfg.sweep.alpha_scan.size());
        for (std::size_t i = 0; i < cfg.sweep.alpha_scan.size(); ++i) {
            dynsys::SystemParams Q = P;
            Q.alpha = cfg.sweep.alpha_scan[i];
            resid[i] = grid_pos.empty()
                           ? 0.0
                           : hj::hj_residual(hj::Picture::original, Q, E,
                                             grid_pos, tol);
            scan.rows.push_back({Q.alpha, resid[i]});
        }
        write_table(cfg, "alpha_scan", scan);

        double worst_increase = 0.0;
        for (std::size_t i = 1; i < resid.size(); ++i)
            worst_increase = std::max(worst_increase, resid[i] - resid[i - 1]);
        rep.add("residual_alpha_monotone", std::max(0.0, worst_increase), 0.0);

        // Least-squares slope of log(residual) vs log(alpha) over the
        // positive entries; ~2 means the series misses at second order.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 0; i < resid.size(); ++i)
            if (cfg.sweep.alpha_scan[i] > 0.0 && resid[i] > 0.0) {
                double lx = std::log(cfg.sweep.alpha_scan[i]);
                double ly = std::log(resid[i]);
                sx += lx;
                sy += ly;
                sxx += lx * lx;
                sxy += lx * ly;
                ++n;
            }
        if (n >= 2)
            rep.add_info("alpha_scaling_exponent",
                         (n * sxy - sx * sy) / (n * sxx - sx * sx));

        for (std::size_t i = 0; i < resid.size(); ++i)
            if (cfg.sweep.alpha_scan[i] == 0.0)
                rep.add("hj_residual_alpha0", resid[i], 1e-10);
    }

    write_report(cfg, "hj_report", rep);
    return rep.all_pass() ? 0 : 1;
}

int cmd_recover(const RunConfig& cfg) {
    require_exponential_family(cfg, "recover");
    ensure_out_dir(cfg);
    const auto& P = cfg.system;
    double E = pick_energy(cfg);
    double x0 = cfg.recover.has_x0 ? cfg.recover.x0 : cfg.hj.x_lo;

    report::Table tbl;
    tbl.columns = {"tau", "x_ode", "x_hj", "abs_err"};
    report::Report rep;

    hj::Picture pic = cfg.recover.experiment_original ? hj::Picture::original
                                                      : hj::Picture::transformed;
    double grid_lo = std::min(cfg.hj.x_lo, x0);

    if (!(x0 < cfg.hj.x_hi)) {
        // Degenerate span: the recovered trajectory is the single point x0.
        tbl.rows.push_back({0.0, x0, x0, 0.0});
        rep.add("recover_max_err", 0.0, cfg.recover.tol);
        write_table(cfg, "recover", tbl);
        write_report(cfg, "recover_report", rep);
        return rep.all_pass() ? 0 : 1;
    }

    hj::MomentumProfile prof(pic, P, E, grid_lo, cfg.hj.x_hi);
    std::vector<double> grid = linspace(grid_lo, cfg.hj.x_hi, cfg.hj.n_grid);
    hj::HJSolution sol = hj::characteristic_function(prof, grid);
    auto pairs =
        hj::recover_trajectory(sol, x0, cfg.recover.experiment_original);

    if (pairs.size() < 2) {
        tbl.rows.push_back({0.0, x0, x0, 0.0});
        rep.add("recover_max_err", 0.0, cfg.recover.tol);
        write_table(cfg, "recover", tbl);
        write_report(cfg, "recover_report", rep);
        return rep.all_pass() ? 0 : 1;
    }

    // Direct integration reference: the same energy state pushed through the
    // matching picture's equations of motion, interpolated at the recovered
    // parameter values.
    double vt0 = hj::p_tilde_profile(P, E, x0) *
                 std::exp(2.0 * P.gamma_tilde() * x0 / P.m) / P.m;
    dynsys::Kind ode_kind = cfg.recover.experiment_original
                                ? dynsys::Kind::first_order
                                : dynsys::Kind::transformed;
    double v0 = cfg.recover.experiment_original
                    ? transform::velocity_unmap(
                          transform::ParamTransform::relativistic(P.alpha), vt0)
                    : vt0;
    dynsys::SystemSpec spec(ode_kind, P);
    numerics::IntegratorConfig icfg = cfg.integrator;
    icfg.t_end = pairs.back().first;
    numerics::Trajectory traj = numerics::integrate_ode(
        system_rhs(spec), x0, v0, icfg, system_guard(spec));

    std::vector<double> tt, xx, vv;
    for (const auto& s : traj.samples) {
        tt.push_back(s.t);
        xx.push_back(s.x);
        vv.push_back(s.v);
    }
    if (tt.size() < 2)
        throw DomainError("recover: reference integration produced no steps");
    numerics::HermiteInterp x_ode(tt, xx, vv);

    double max_err = 0.0;
    for (const auto& [tau, x_hj] : pairs) {
        double xr = x_ode(tau);
        double err = std::fabs(xr - x_hj);
        max_err = std::max(max_err, err);
        tbl.rows.push_back({tau, xr, x_hj, err});
    }
    rep.add("recover_max_err", max_err, cfg.recover.tol);

    write_table(cfg, "recover", tbl);
    write_report(cfg, "recover_report", rep);
    return rep.all_pass() ? 0 : 1;
}

int cmd_limits(const RunConfig& cfg) {
    if (!(cfg.hj.x_lo < cfg.hj.x_hi))
        throw ConfigError("hj.x_lo: must be < hj.x_hi for the limits command");
    if (cfg.hj.x_lo < 0.0)
        throw ConfigError("hj.x_lo: must be >= 0 (original picture)");
    ensure_out_dir(cfg);

    double E = pick_energy(cfg);
    std::vector<std::pair<double, double>> seq = cfg.sweep.pairs;
    if (seq.empty()) {
        for (int k = 0; k < 24; ++k) {
            double g = 0.1 * std::pow(2.0, -k);
            seq.emplace_back(g, g);
        }
        seq.emplace_back(1e-8, 1e-8);
        seq.emplace_back(0.0, 0.0);
    }
    std::vector<double> grid = linspace(cfg.hj.x_lo, cfg.hj.x_hi, cfg.hj.n_grid);
    std::vector<hj::LimitRow> rows = hj::limit_sweep(cfg.system, seq, E, grid);

    report::Table tbl;
    tbl.columns = {"gamma", "alpha", "p_err", "w_err"};
    for (const auto& r : rows) tbl.rows.push_back({r.gamma, r.alpha, r.p_err, r.w_err});
    write_table(cfg, "limits", tbl);

    report::Report rep;
    std::vector<const hj::LimitRow*> nz;
    for (const auto& r : rows)
        if (r.gamma != 0.0 || r.alpha != 0.0) nz.push_back(&r);

    double p_inc = 0.0, w_inc = 0.0;
    for (std::size_t i = 1; i < nz.size(); ++i) {
        p_inc = std::max(p_inc, nz[i]->p_err - nz[i - 1]->p_err);
        w_inc = std::max(w_inc, nz[i]->w_err - nz[i - 1]->w_err);
    }
    rep.add("limits_p_monotone", std::max(0.0, p_inc), 0.0);
    rep.add("limits_w_monotone", std::max(0.0, w_inc), 0.0);
    if (!nz.empty()) {
        rep.add("limits_p_final", nz.back()->p_err, 1e-6);
        rep.add("limits_w_final", nz.back()->w_err, 1e-6);
    }
    for (const auto& r : rows)
        if (r.gamma == 0.0 && r.alpha == 0.0) {
            rep.add("limits_p_exact", r.p_err, 1e-12);
            rep.add("limits_w_exact", r.w_err, 1e-12);
            break;
        }

    write_report(cfg, "limits_report", rep);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace hamjac::commands
