// Command-line front end for the entropic Leggett-Garg toolkit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "elg/cli.hpp"

namespace {

using elg::cli::Command;
using elg::cli::OutputFormat;
using elg::cli::RunConfig;

void add_spin_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--spin", cfg.spin, "Spin as an exact fraction: 1/2, 1, 3/2, ...")->capture_default_str();
    sub.add_flag("--degrees", cfg.degrees, "Read every angle flag in degrees instead of radians");
    sub.add_option("-o,--output", cfg.output, "Output file ('-' for stdout); default $ELG_OUTPUT_DIR/<command>.<format>");
    sub.add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"csv", OutputFormat::Csv},
                                                                               {"json", OutputFormat::Json}}));
    sub.add_option("--workers", cfg.workers, "Worker threads (output does not depend on this)")->capture_default_str();
}

void add_grid_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--n", cfg.n, "Number of equidistant measurements")->capture_default_str();
    sub.add_option("--theta-min", cfg.theta_min, "Start of the total-angle grid")->capture_default_str();
    sub.add_option("--theta-max", cfg.theta_max, "End of the total-angle grid")->capture_default_str();
    sub.add_option("--steps", cfg.steps, "Number of grid points")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic Leggett-Garg inequalities for a spin-s quantum rotor"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::map<CLI::App*, Command> commands;

    auto* scan = app.add_subcommand("scan", "Sample the information deficit D_n(theta) over a grid");
    add_spin_options(*scan, cfg);
    add_grid_options(*scan, cfg);
    commands[scan] = Command::Scan;

    auto* feas = app.add_subcommand("feasibility", "Decide grand-joint existence by LP along a theta grid");
    add_spin_options(*feas, cfg);
    add_grid_options(*feas, cfg);
    commands[feas] = Command::Feasibility;

    auto* zeno = app.add_subcommand("zeno", "Approach of D_n(theta) to its many-measurement limit");
    add_spin_options(*zeno, cfg);
    zeno->add_option("--theta", cfg.theta, "Total rotation angle (default pi/2)");
    zeno->add_option("--n-ladder", cfg.n_ladder, "Measurement counts to tabulate")->delimiter(',')->capture_default_str();
    commands[zeno] = Command::Zeno;

    auto* sample = app.add_subcommand("sample", "Monte Carlo sequential measurements");
    add_spin_options(*sample, cfg);
    sample->add_option("--n", cfg.n, "Number of measurements (2 or 3)")->capture_default_str();
    sample->add_option("--theta", cfg.theta, "Total rotation angle (default pi/3)");
    sample->add_option("--shots", cfg.shots, "Number of trajectories")->capture_default_str();
    sample->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sample->add_option("--bootstrap", cfg.bootstrap, "Bootstrap resamples for the D_3 standard error")
        ->capture_default_str();
    commands[sample] = Command::Sample;

    auto* bc = app.add_subcommand("bc-check", "Compare the four-time chain with the singlet BC inequality");
    add_spin_options(*bc, cfg);
    bc->add_option("--theta", cfg.theta, "Total angle of the equidistant configuration (default pi)");
    bc->add_option("--configs", cfg.configs, "Number of random angle configurations instead")->capture_default_str();
    bc->add_option("--seed", cfg.seed, "Seed for the random configurations")->capture_default_str();
    commands[bc] = Command::BcCheck;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return elg::cli::kExitConfigError;
    }

    for (const auto& [sub, command] : commands) {
        if (sub->parsed()) {
            cfg.command = command;
        }
    }

    const auto result = elg::cli::run_command(cfg);
    if (result.exit_code == elg::cli::kExitConfigError || result.exit_code == elg::cli::kExitSizeLimit) {
        std::cerr << result.summary;
        return result.exit_code;
    }

    const auto path = elg::cli::resolve_output_path(cfg, std::getenv(elg::cli::kOutputDirEnv));
    if (path == "-") {
        std::cout << result.document;
        std::cerr << result.summary;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << path.string() << '\n';
            return elg::cli::kExitConfigError;
        }
        out << result.document;
        std::cout << result.summary << "wrote " << path.string() << '\n';
    }
    return result.exit_code;
}
