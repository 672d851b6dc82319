#pragma once

#include <json.hpp>

#include "wavekit/cli/config.hpp"
#include "wavekit/cli/output.hpp"

namespace wavekit::cli {

// Each command writes its files into `out` and returns the results block of the manifest.
nlohmann::json cmd_simulate_pde(const ExperimentConfig& cfg, OutputDir& out);
nlohmann::json cmd_phase_plane(const ExperimentConfig& cfg, OutputDir& out);
nlohmann::json cmd_spectrum(const ExperimentConfig& cfg, OutputDir& out);
nlohmann::json cmd_lattice(const ExperimentConfig& cfg, OutputDir& out);
nlohmann::json cmd_speed_scan(const ExperimentConfig& cfg, OutputDir& out);

// Validates, echoes the config, dispatches on cfg.command and writes the manifest.
nlohmann::json run_experiment(const ExperimentConfig& cfg);

// Command-line entry point; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace wavekit::cli
