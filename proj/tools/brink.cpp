#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "brink/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"bound states, critical couplings and decay envelopes of "
                 "radial well-plus-tail models"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (default: output.directory or .)");
        sub->add_option("--workers", workers, "worker budget for sweeps (default: BRINK_WORKERS)");
    };

    CLI::App* solve = app.add_subcommand("solve", "ground state of the configured model");
    CLI::App* critical = app.add_subcommand("critical", "critical coupling search");
    CLI::App* envelope = app.add_subcommand("envelope", "verify a decay envelope");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep with per-value solves");
    for (CLI::App* sub : {solve, critical, envelope, sweep}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    brink::CommandIO io;
    io.out_dir = out_dir;
    io.workers = workers;
    io.diag = &std::cerr;
    try {
        io.config = brink::Config::parse_file(config_path);
    } catch (const brink::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return brink::kExitConfig;
    }

    if (solve->parsed()) return brink::cmd_solve(io);
    if (critical->parsed()) return brink::cmd_critical(io);
    if (envelope->parsed()) return brink::cmd_envelope(io);
    if (sweep->parsed()) return brink::cmd_sweep(io);
    return brink::kExitInternal;
}
