// runner.hpp — Subcommand execution and report emission

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qfridge/cli/config.hpp"

namespace qfridge::cli {

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;  // overrides [output] dir
    unsigned threads{1};
    bool write_files{true};
};

struct RunReport {
    nlohmann::json report;
    bool physics_ok{true};
    std::string trajectory_csv;  // empty unless mode = cool
    std::string sweep_csv;       // empty unless mode = sweep
};

RunReport run_steady(const ScenarioConfig& config, const RunOptions& options = {});
RunReport run_cool(const ScenarioConfig& config, const RunOptions& options = {});
RunReport run_sweep(const ScenarioConfig& config, const RunOptions& options = {});
RunReport run_verify_laws(const ScenarioConfig& config, const RunOptions& options = {});

// Dispatch, then write report.json (and CSVs) under the output directory.
// Exit status: 0 success, 1 physics-check failure, 2 configuration error.
int run(Mode mode, const ScenarioConfig& config, const RunOptions& options);

// Full command line: <tool> <subcommand> --config <path> [--out <dir>] [--threads <n>].
int main_entry(int argc, char** argv);

} // namespace qfridge::cli
