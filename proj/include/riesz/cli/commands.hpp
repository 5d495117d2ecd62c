#pragma once

#include "riesz/cli/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riesz::cli {

extern const std::vector<std::string> subcommands;

struct RunManifest {
    std::string subcommand;
    std::optional<std::string> config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 1;
    std::string version;
};

// Text that identifies a run: program, version, subcommand, seed and the canonical config.
// The output directory and thread count are left out so they do not change the hash.
std::string manifest_text(const RunManifest& manifest, const Config& config);

// Loads the config, dispatches the subcommand and writes its outputs into manifest.out_dir.
// Throws the library errors unchanged; returns false only when verify finds a failing check.
bool execute(const RunManifest& manifest);

// execute() with errors mapped to exit codes: 0 success, 2 parse or domain error, 3 numerical
// abort, 4 non-convergence, 1 anything else (including a failing verify). Messages go to stderr.
int run_command(const RunManifest& manifest);

} // namespace riesz::cli
