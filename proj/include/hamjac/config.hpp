#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamjac/dynsys.hpp"
#include "hamjac/numerics.hpp"

namespace hamjac::config {

// Full run configuration for the CLI. Parsed from JSON; every field has a
// default so minimal configs stay short. Unknown keys are rejected so typos
// surface as config errors instead of silently using defaults.
struct RunConfig {
    dynsys::Kind kind = dynsys::Kind::first_order;
    dynsys::SystemParams system;
    double x0 = 0.0;
    double v0 = 0.0;
    numerics::IntegratorConfig integrator;

    struct Hj {
        bool has_E = false;   // when false, E defaults to the energy at (x0,v0)
        double E = 0.0;
        double x_lo = 0.0;
        double x_hi = 1.0;
        int n_grid = 101;
        double rel_tol = 1e-14;
        int max_terms = 200;
    } hj;

    struct Verify {
        double condition_tol = 1e-10;
        double energy_tol = 1e-9;
        double dkdx_tol = 1e-8;
        double el_tol = 1e-9;
        double roundtrip_tol = 1e-12;
        double commute_tol = 1e-7;
        double drift_tol = 1e-8;  // relative energy drift along a trajectory
        double tau_scale = 1.0;  // != 1 swaps in the scaled-time negative control
    } verify;

    struct Recover {
        bool has_x0 = false;  // when false, recovery starts at hj.x_lo
        double x0 = 0.0;
        double tol = 1e-6;
        bool experiment_original = false;
    } recover;

    struct Sweep {
        std::vector<std::pair<double, double>> pairs;  // (gamma, alpha)
        std::vector<double> alpha_scan;
    } sweep;

    std::string out_dir = ".";

    enum class Format { csv, json };
    Format format = Format::csv;
};

// Parses JSON text into a RunConfig, throwing ConfigError with the offending
// field path on any invalid entry.
RunConfig parse_config(const std::string& json_text);

// Reads and parses a config file; missing/unreadable files raise ConfigError.
RunConfig load_config_file(const std::string& path);

// Canonical JSON serialization of the computational fields of a config
// (sorted keys, all fields explicit; out_dir and format are excluded since
// they do not affect computed values). Feeding the output back through
// parse_config reproduces the same computation; the FNV-1a digest of this
// string identifies a run in every report.
std::string serialize_config(const RunConfig& cfg);

// FNV-1a (64-bit) hex digest of a byte string.
std::string fnv1a_hex(const std::string& bytes);

const char* kind_name(dynsys::Kind kind);

}  // namespace hamjac::config
