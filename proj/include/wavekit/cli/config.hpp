#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavekit/lattice.hpp"
#include "wavekit/model.hpp"
#include "wavekit/pde.hpp"

namespace wavekit::cli {

// Everything a run depends on. Serialised verbatim into each output directory.
struct ExperimentConfig {
    std::string command;

    // model
    double D_i = 0.25, D_g = 0.05;
    double lambda_i = 0.75, lambda_g = 0.75;
    double K_i = 0.0, K_g = 0.0;
    std::string D_kind = "adhesion";  // "adhesion" or "general"
    double D_scale = 1.0;          // general kind: a (u - r1)(u - r2)
    std::array<double, 2> roots{0.1, 0.3};

    // grid and initial data
    double x0 = 0.0, x1 = 100.0, dx = 0.1, dt = 0.01, t_end = 50.0;
    std::string ic = "heaviside";  // "heaviside" or "tanh"
    double eta = 1.0;
    double x_center = 40.0;
    std::string integrator = "heun";  // "heun" or "euler"
    bool auto_substep = true;
    double front_threshold = 1e-5;
    double output_interval = 5.0;  // time between written snapshots

    // phase-plane and spectrum
    double c = 0.866;
    double shoot_eps = 1e-6;
    double k_max = 5.0;
    int k_points = 201;
    std::optional<std::array<double, 3>> scan_nu;  // start, stop, step

    // speed-scan
    std::vector<double> etas{0.7, 0.8, 0.9, 1.0, 1.5, 2.0, 5.0};

    // lattice
    std::string lattice_mode = "both";       // "mean-field", "stochastic", "both"
    std::string lattice_initial = "heaviside";  // or "uniform"
    double lattice_u0 = 0.05;
    double delta = 0.1, tau = 0.01;
    std::size_t runs = 200, lattice_steps = 5000, snapshot_every = 10;
    // Explicit per-step probabilities replace the continuum mapping when set.
    std::optional<LatticeParams> lattice_explicit;

    std::string out_dir = "wavekit_out";
    std::uint64_t seed = 1;
    unsigned jobs = 1;

    bool operator==(const ExperimentConfig&) const = default;

    ModelParams model_params() const;
    Model model() const;
    Grid1D grid() const;
    InitialCondition initial_condition() const;
    SolverOptions solver_options() const;
    LatticeParams lattice_params() const;
    // Throws std::invalid_argument on any inconsistent field.
    void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// Parses "a:b:s".
std::array<double, 3> parse_range(const std::string& text);

}  // namespace wavekit::cli
