#pragma once

#include "hamjac/config.hpp"

namespace hamjac::commands {

// Each command writes its artifacts under cfg.out_dir and returns the process
// exit code: 0 all checks passed, 1 a check failed, 3 the run aborted on a
// domain boundary (turning point, validity region, guard). Configuration
// problems raise ConfigError, which the CLI maps to exit code 2.

// Integrates the configured system and writes simulate.{csv,json} with
// columns t,x,v plus K,p for Lagrangian kinds plus tau for the first-order
// kind at alpha > 0. A guard hit truncates the table and returns 3.
int cmd_simulate(const config::RunConfig& cfg);

// Certifies the first-order <-> reparametrized pair built from the system
// parameters along the configured trajectory and writes verify_report.json.
// verify.tau_scale != 1 swaps in the constant-rescaling control, which is not
// energy-preserving and must fail the condition check.
int cmd_verify(const config::RunConfig& cfg);

// Tabulates both momentum profiles and characteristic functions on the hj
// grid (hj_profile.{csv,json}) and writes hj_report.json with the algebraic
// residual checks and the optional alpha scan.
int cmd_hj(const config::RunConfig& cfg);

// Rebuilds the trajectory from the characteristic function (Jacobi's
// theorem) and compares it with direct integration; writes
// recover.{csv,json} and recover_report.json.
int cmd_recover(const config::RunConfig& cfg);

// Sweeps (gamma, alpha) -> (0, 0) and tabulates the distance of the momentum
// profile and characteristic function from the conservative closed forms;
// writes limits.{csv,json} and limits_report.json.
int cmd_limits(const config::RunConfig& cfg);

}  // namespace hamjac::commands
