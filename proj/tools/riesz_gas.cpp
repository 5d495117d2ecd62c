#include "riesz/cli/commands.hpp"
#include "riesz/cli/config.hpp"
#include "riesz/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#ifndef RIESZ_GAS_VERSION
#define RIESZ_GAS_VERSION "0.0.0"
#endif

int main(int argc, char** argv)
{
    CLI::App app{"Radially symmetric Euler-Riesz gas: simulation, steady states and stability runs"};
    app.set_version_flag("--version", RIESZ_GAS_VERSION);

    riesz::cli::RunManifest manifest;
    manifest.version = RIESZ_GAS_VERSION;
    std::string config;
    app.add_option("command", manifest.subcommand, "Subcommand")
        ->required()
        ->check(CLI::IsMember(riesz::cli::subcommands));
    app.add_option("--config", config, "Configuration file (key = value lines)");
    app.add_option("--out", manifest.out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", manifest.seed, "Seed for randomised checks")->capture_default_str();
    app.add_option("--threads", manifest.threads, "Worker threads for sweeps")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (!config.empty()) manifest.config_path = config;

    if (const char* env = std::getenv("RIESZ_GAS_THREADS"); env && *env) {
        try {
            manifest.threads = static_cast<int>(riesz::cli::parse_integer(env, "RIESZ_GAS_THREADS"));
        } catch (const riesz::ParseError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return riesz::cli::run_command(manifest);
}
