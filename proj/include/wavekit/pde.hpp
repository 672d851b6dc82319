#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavekit/model.hpp"

namespace wavekit {

struct Grid1D {
    double x0 = 0.0;
    double x1 = 100.0;
    double dx = 0.1;
    double dt = 0.01;
    double t_end = 50.0;

    void validate() const;
    std::size_t points() const;
    std::size_t steps() const;
    std::vector<double> nodes() const;
};

struct InitialCondition {
    enum class Kind { Heaviside, Tanh, Constant };
    Kind kind = Kind::Heaviside;
    double x_center = 40.0;  // jump location or tanh centre
    double eta = 1.0;
    double value = 0.0;      // Constant only

    static InitialCondition heaviside(double x_jump = 40.0);
    static InitialCondition tanh_front(double eta, double x_center = 40.0);
    static InitialCondition constant(double value);

    // Heaviside: 1 left of the jump, 0 from the jump on.
    double operator()(double x, double dx) const;
};

enum class Integrator { ForwardEuler, Heun };

struct SolverOptions {
    double snapshot_interval = 0.1;
    Integrator integrator = Integrator::Heun;
    // Split each requested step into equal sub-steps satisfying the explicit limit.
    bool auto_substep = true;
};

struct Trajectory {
    std::vector<double> x;
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<std::string> warnings;
    double dx = 0.0;
    double dt = 0.0;
    int substeps = 1;

    // Snapshot whose time is within half a step of t; throws std::out_of_range otherwise.
    const std::vector<double>& at(double t) const;
};

class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double t, const std::string& what) : std::runtime_error(what), time(t) {}
    double time;
};

class NoFrontError : public std::runtime_error {
public:
    NoFrontError(double t, const std::string& what) : std::runtime_error(what), time(t) {}
    double time;
};

// Largest step the explicit diffusion update tolerates for this grid.
double explicit_step_limit(const Model& m, double dx);

// Conservative explicit finite-volume scheme with zero flux at both ends.
Trajectory evolve(const Model& m, const Grid1D& grid, const InitialCondition& ic, const SolverOptions& opt = {});
Trajectory evolve(const Model& m, const Grid1D& grid, const std::vector<double>& initial, const SolverOptions& opt = {});

struct FrontTrace {
    std::vector<double> t, L;
    double fit_t0 = 0.0, fit_t1 = 0.0;
    double speed = 0.0;
    double intercept = 0.0;
    double fit_residual = 0.0;
    bool converged = true;  // residual <= 1e-2 |speed|
};

// Smallest x with U < threshold at one snapshot, linearly interpolated.
double front_position(const std::vector<double>& x, const std::vector<double>& u, double threshold);
FrontTrace track_front(const Trajectory& traj, double threshold = 1e-5, double fit_fraction = 0.5);

struct ScanEntry {
    double eta = 0.0;
    std::optional<double> speed;
    bool converged = false;
    std::string error;
};

struct SpeedScan {
    std::vector<ScanEntry> entries;
    std::optional<double> limiting_speed;  // successful run with the largest eta
    bool tail_monotone = false;
    int tail_direction = 0;  // -1 decreasing, +1 increasing, 0 flat or mixed
};

// Tanh initial data for every eta; failures are recorded per entry.
SpeedScan speed_vs_eta_scan(const Model& m, const std::vector<double>& etas, const Grid1D& grid, unsigned jobs = 1,
                            double x_center = 40.0);

// Central differences, one-sided at the ends.
std::vector<double> gradient_profile(const Trajectory& traj, double t);
std::vector<double> gradient(const std::vector<double>& u, double dx);

}  // namespace wavekit
