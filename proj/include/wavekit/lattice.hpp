#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavekit/model.hpp"
#include "wavekit/rng.hpp"

namespace wavekit {

// Per-step event probabilities of the exclusion process plus the lattice scales.
struct LatticeParams {
    double P_m_i = 0.0, P_m_g = 0.0;
    double P_p_i = 0.0, P_p_g = 0.0;
    double P_d_i = 0.0, P_d_g = 0.0;
    double delta = 0.1;
    double tau = 0.01;

    void validate() const;
    bool operator==(const LatticeParams&) const = default;
};

struct ContinuumMap {
    ModelParams params;
    std::vector<std::string> warnings;
};

// D = P_m delta^2 / (2 tau), lambda = P_p / tau, K = P_d / tau.
ContinuumMap continuum_limit_map(const LatticeParams& lp);
// Inverse of the map for fixed (delta, tau). Throws if a probability leaves [0,1].
LatticeParams lattice_from_continuum(const ModelParams& mp, double delta, double tau);

struct MeanFieldState {
    std::vector<double> occupancy;
    double time = 0.0;
    std::uint64_t clamp_events = 0;
    std::uint64_t site_updates = 0;

    double clamp_fraction() const {
        return site_updates == 0 ? 0.0 : static_cast<double>(clamp_events) / static_cast<double>(site_updates);
    }
    // More than 0.1% of site updates needed clamping.
    bool invalid() const { return clamp_fraction() > 1e-3; }
};

// Raw increment of the discrete conservation statement, before clamping.
// Sites outside the lattice are vacant; no agent moves or is placed across the ends.
std::vector<double> mean_field_increment(const std::vector<double>& U, const LatticeParams& lp);
// Requires at least 5 sites.
MeanFieldState mean_field_step(const MeanFieldState& state, const LatticeParams& lp);

struct AgentLattice {
    std::vector<std::uint8_t> occupied;
    std::uint64_t rng_seed = 0;
    std::uint64_t steps = 0;

    std::size_t agents() const;
    bool isolated(std::size_t j) const;
};

// One random-sequential sweep: every agent present at the start of the sweep
// attempts move, proliferation and death once, in a shuffled order.
AgentLattice stochastic_step(AgentLattice lattice, const LatticeParams& lp, Xoshiro256& rng);

struct EnsembleOptions {
    std::size_t runs = 200;
    std::size_t steps = 5000;
    std::size_t snapshot_every = 10;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct EnsembleResult {
    std::vector<double> times;
    std::vector<std::vector<double>> mean;    // [snapshot][site]
    std::vector<std::vector<double>> stderr_; // standard error of the mean
    std::size_t runs = 0;
};

EnsembleResult run_ensemble(const LatticeParams& lp, const std::vector<std::uint8_t>& initial, const EnsembleOptions& opt);

struct LevelFront {
    std::vector<double> t, x;
    double speed = 0.0;
    double rms_residual = 0.0;
};

// Position where a profile first drops below `level`, linearly interpolated.
// Returns x of site 0 if the first site is already below.
double level_crossing(const std::vector<double>& profile, double dx, double level);
// Tracks level_crossing over snapshots and fits the last `fit_fraction` of them.
LevelFront track_level(const std::vector<double>& times, const std::vector<std::vector<double>>& profiles, double dx,
                       double level = 0.5, double fit_fraction = 0.5);

std::vector<std::uint8_t> heaviside_occupancy(std::size_t sites, double delta, double x_jump);

}  // namespace wavekit
