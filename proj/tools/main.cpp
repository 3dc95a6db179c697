#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hamjac/commands.hpp"
#include "hamjac/config.hpp"
#include "hamjac/errors.hpp"
#include "hamjac/report.hpp"

namespace {

struct CmdOpts {
    std::string config_path;
    std::string out_dir;
    std::string format;
};

void add_common(CLI::App* sub, CmdOpts& opts) {
    sub->add_option("--config", opts.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir,
                    "output directory (overrides config out_dir)");
    sub->add_option("--format", opts.format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

hamjac::config::RunConfig load(const CmdOpts& opts) {
    auto cfg = hamjac::config::load_config_file(opts.config_path);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.format == "csv") cfg.format = hamjac::config::RunConfig::Format::csv;
    if (opts.format == "json")
        cfg.format = hamjac::config::RunConfig::Format::json;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamilton-Jacobi toolkit for 1D dissipative systems with "
                 "energy-preserving reparametrization"};
    app.set_version_flag("--version",
                         std::string("hamjac ") + hamjac::report::kVersion);
    app.require_subcommand(1);

    CmdOpts opts;
    int (*run)(const hamjac::config::RunConfig&) = nullptr;

    auto* simulate =
        app.add_subcommand("simulate", "integrate the configured system");
    add_common(simulate, opts);
    simulate->callback([&] { run = hamjac::commands::cmd_simulate; });

    auto* verify = app.add_subcommand(
        "verify", "certify the energy-preserving reparametrization");
    add_common(verify, opts);
    verify->callback([&] { run = hamjac::commands::cmd_verify; });

    auto* hj = app.add_subcommand(
        "hj", "tabulate momentum profiles and characteristic functions");
    add_common(hj, opts);
    hj->callback([&] { run = hamjac::commands::cmd_hj; });

    auto* recover = app.add_subcommand(
        "recover", "rebuild the trajectory from the characteristic function");
    add_common(recover, opts);
    recover->callback([&] { run = hamjac::commands::cmd_recover; });

    auto* limits = app.add_subcommand(
        "limits", "sweep (gamma, alpha) toward the conservative limit");
    add_common(limits, opts);
    limits->callback([&] { run = hamjac::commands::cmd_limits; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        // CLI11 reserves 0 for --help/--version; anything else is a usage
        // error and maps to the configuration-error exit code.
        return rc == 0 ? 0 : 2;
    }

    try {
        return run(load(opts));
    } catch (const hamjac::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hamjac::TurningPointError& e) {
        std::cerr << "domain abort: " << e.what() << "\n";
        return 3;
    } catch (const hamjac::GuardViolationError& e) {
        std::cerr << "domain abort: " << e.what() << "\n";
        return 3;
    } catch (const hamjac::DomainError& e) {
        std::cerr << "domain abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        // NonFinite, SeriesDivergence, QuadratureDepth: runtime domain aborts.
        std::cerr << "domain abort: " << e.what() << "\n";
        return 3;
    }
}
