// chanreg: channel Navier-Stokes runs, inequality sweeps and convergence checks.

#include <iostream>

#include "CLI11.hpp"
#include "chanreg/cli.hpp"
#include "chanreg/errors.hpp"
#include "chanreg/parallel.hpp"

using namespace chanreg;

namespace {

int with_config(const std::string& path, auto&& fn) {
    try {
        return fn(cli::parse_config(path));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::IoFailure;
    }
}

} // namespace

int main(int argc, char** argv) {
    parallel::configure_from_env();

    CLI::App app{"pseudospectral channel solver with pressure-criterion diagnostics"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "chanreg_out";
    cli::VerifyOptions vo;
    std::vector<int> grid;

    auto* run = app.add_subcommand("run", "integrate a configuration and write diagnostics");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory");

    auto* verify = app.add_subcommand("verify-inequalities", "sweep the seeded field family");
    verify->add_option("--seed", vo.seed, "family seed");
    verify->add_option("--grid", grid, "base grid NX NY NZ")->expected(3);
    verify->add_option("--count", vo.count, "family size")->check(CLI::PositiveNumber);
    verify->add_option("--cap", vo.cap, "largest accepted empirical constant");
    verify->add_option("--out", out_dir, "output directory");
    verify->add_flag("--self-test-reversed-minkowski", vo.reversed_minkowski,
                     "swap the Minkowski sides (negative control, must fail)");

    auto* conv = app.add_subcommand("convergence", "temporal order at dt, dt/2, dt/4");
    conv->add_option("--config", config_path, "config file")->required();

    auto* report = app.add_subcommand("report", "re-render the criterion report from a run directory");
    report->add_option("--config", config_path, "config file")->required();
    report->add_option("--out", out_dir, "run directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : cli::IoFailure;
    }

    if (*run) return with_config(config_path, [&](const SolverConfig& c) { return cli::cmd_run(c, out_dir, std::cout); });
    if (*conv) return with_config(config_path, [&](const SolverConfig& c) { return cli::cmd_convergence(c, std::cout); });
    if (*report)
        return with_config(config_path, [&](const SolverConfig& c) { return cli::cmd_report(c, out_dir, std::cout); });
    if (grid.size() == 3) {
        vo.nx = grid[0];
        vo.ny = grid[1];
        vo.nz = grid[2];
    }
    try {
        return cli::cmd_verify_inequalities(vo, out_dir, std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::IoFailure;
    }
}
