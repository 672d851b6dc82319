#include "wavekit/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wavekit/fit.hpp"
#include "wavekit/parallel.hpp"

namespace wavekit {

void Grid1D::validate() const {
    if (!(dx > 0.0) || !(dt > 0.0)) throw std::invalid_argument("grid spacing and time step must be positive");
    if (!(x1 > x0)) throw std::invalid_argument("grid needs x1 > x0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
    if (points() < 3) throw std::invalid_argument("grid needs at least three points");
}

std::size_t Grid1D::points() const { return static_cast<std::size_t>(std::llround((x1 - x0) / dx)) + 1; }
std::size_t Grid1D::steps() const { return static_cast<std::size_t>(std::llround(t_end / dt)); }

std::vector<double> Grid1D::nodes() const {
    std::vector<double> x(points());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = x0 + static_cast<double>(j) * dx;
    return x;
}

InitialCondition InitialCondition::heaviside(double x_jump) {
    InitialCondition ic;
    ic.kind = Kind::Heaviside;
    ic.x_center = x_jump;
    return ic;
}

InitialCondition InitialCondition::tanh_front(double eta, double x_center) {
    if (!(eta > 0.0)) throw std::invalid_argument("tanh steepness must be positive");
    InitialCondition ic;
    ic.kind = Kind::Tanh;
    ic.eta = eta;
    ic.x_center = x_center;
    return ic;
}

InitialCondition InitialCondition::constant(double value) {
    InitialCondition ic;
    ic.kind = Kind::Constant;
    ic.value = value;
    return ic;
}

double InitialCondition::operator()(double x, double dx) const {
    switch (kind) {
        case Kind::Heaviside: return x < x_center - 1e-9 * dx ? 1.0 : 0.0;
        case Kind::Tanh: return 0.5 + 0.5 * std::tanh(-eta * (x - x_center));
        case Kind::Constant: return value;
    }
    return 0.0;
}

const std::vector<double>& Trajectory::at(double t) const {
    for (std::size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - t) <= 0.5 * dt) return states[k];
    throw std::out_of_range("no snapshot stored at the requested time");
}

double explicit_step_limit(const Model& m, double dx) {
    const double dmax = m.D.max_abs_on_unit();
    return dmax > 0.0 ? dx * dx / (2.0 * dmax) : std::numeric_limits<double>::infinity();
}

namespace {

// d/dt U_j = [F_{j+1/2} - F_{j-1/2}] / dx + R(U_j) with
// F_{j+1/2} = Dbar (U_{j+1} - U_j) / dx and Dbar the mean of the nodal values.
void rhs(const Model& m, const std::vector<double>& u, double dx, std::vector<double>& dnode, std::vector<double>& out) {
    const std::size_t n = u.size();
    for (std::size_t j = 0; j < n; ++j) dnode[j] = m.D(u[j]);
    const double inv = 1.0 / (dx * dx);
    for (std::size_t j = 0; j < n; ++j) out[j] = m.R(u[j]);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double flux = 0.5 * (dnode[j] + dnode[j + 1]) * (u[j + 1] - u[j]) * inv;
        out[j] += flux;
        out[j + 1] -= flux;
    }
}

}  // namespace

Trajectory evolve(const Model& m, const Grid1D& grid, const std::vector<double>& initial, const SolverOptions& opt) {
    grid.validate();
    if (initial.size() != grid.points()) throw std::invalid_argument("initial data does not match the grid");
    if (!(opt.snapshot_interval > 0.0)) throw std::invalid_argument("snapshot interval must be positive");

    Trajectory tr;
    tr.x = grid.nodes();
    tr.dx = grid.dx;
    tr.dt = grid.dt;

    const double limit = explicit_step_limit(m, grid.dx);
    if (grid.dt > limit) {
        std::ostringstream os;
        os.precision(6);
        os << "dt=" << grid.dt << " exceeds the explicit limit dx^2/(2 max|D|)=" << limit;
        if (opt.auto_substep) {
            tr.substeps = static_cast<int>(std::ceil(grid.dt / limit - 1e-12));
            os << "; using " << tr.substeps << " sub-steps per step";
        }
        tr.warnings.push_back(os.str());
    }
    const double h = grid.dt / tr.substeps;
    const auto every = static_cast<std::size_t>(std::max<long long>(1, std::llround(opt.snapshot_interval / grid.dt)));

    const std::size_t n = initial.size();
    std::vector<double> u = initial, k1(n), k2(n), u1(n), dnode(n);
    tr.times.push_back(0.0);
    tr.states.push_back(u);

    const std::size_t steps = grid.steps();
    for (std::size_t s = 1; s <= steps; ++s) {
        for (int sub = 0; sub < tr.substeps; ++sub) {
            rhs(m, u, grid.dx, dnode, k1);
            if (opt.integrator == Integrator::ForwardEuler) {
                for (std::size_t j = 0; j < n; ++j) u[j] += h * k1[j];
            } else {
                for (std::size_t j = 0; j < n; ++j) u1[j] = u[j] + h * k1[j];
                rhs(m, u1, grid.dx, dnode, k2);
                for (std::size_t j = 0; j < n; ++j) u[j] = 0.5 * (u[j] + u1[j] + h * k2[j]);
            }
        }
        for (double v : u) {
            if (!std::isfinite(v) || std::abs(v) > 1e6) {
                const double t = static_cast<double>(s) * grid.dt;
                std::ostringstream os;
                os << "solution blew up at t=" << t;
                throw BlowUpError(t, os.str());
            }
        }
        if (s % every == 0 || s == steps) {
            tr.times.push_back(static_cast<double>(s) * grid.dt);
            tr.states.push_back(u);
        }
    }
    return tr;
}

Trajectory evolve(const Model& m, const Grid1D& grid, const InitialCondition& ic, const SolverOptions& opt) {
    grid.validate();
    const std::vector<double> x = grid.nodes();
    std::vector<double> u0(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) u0[j] = ic(x[j], grid.dx);
    return evolve(m, grid, u0, opt);
}

double front_position(const std::vector<double>& x, const std::vector<double>& u, double threshold) {
    std::size_t j = 0;
    while (j < u.size() && !(u[j] < threshold)) ++j;
    if (j == u.size()) return std::numeric_limits<double>::quiet_NaN();
    if (j == 0) return x[0];
    const double a = u[j - 1], b = u[j];
    return x[j - 1] + (a - threshold) / (a - b) * (x[j] - x[j - 1]);
}

FrontTrace track_front(const Trajectory& traj, double threshold, double fit_fraction) {
    if (traj.times.empty()) throw std::invalid_argument("empty trajectory");
    if (!(fit_fraction > 0.0 && fit_fraction <= 1.0)) throw std::invalid_argument("fit fraction must lie in (0,1]");
    FrontTrace f;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double L = front_position(traj.x, traj.states[k], threshold);
        if (std::isnan(L)) {
            std::ostringstream os;
            os << "no point below " << threshold << " at t=" << traj.times[k] << "; the domain is too short";
            throw NoFrontError(traj.times[k], os.str());
        }
        f.t.push_back(traj.times[k]);
        f.L.push_back(L);
    }
    if (f.t.size() < 2) throw std::invalid_argument("front tracking needs at least two snapshots");
    const auto n = f.t.size();
    auto first = static_cast<std::size_t>(std::floor(static_cast<double>(n) * (1.0 - fit_fraction)));
    first = std::min(first, n - 2);
    const LineFit lf = fit_line(f.t, f.L, first);
    f.fit_t0 = f.t[first];
    f.fit_t1 = f.t.back();
    f.speed = lf.slope;
    f.intercept = lf.intercept;
    f.fit_residual = lf.rms_residual;
    f.converged = lf.rms_residual <= 1e-2 * std::abs(lf.slope);
    return f;
}

SpeedScan speed_vs_eta_scan(const Model& m, const std::vector<double>& etas, const Grid1D& grid, unsigned jobs,
                            double x_center) {
    SpeedScan scan;
    scan.entries.resize(etas.size());
    parallel_for(etas.size(), jobs, [&](std::size_t i) {
        ScanEntry& e = scan.entries[i];
        e.eta = etas[i];
        try {
            const Trajectory tr = evolve(m, grid, InitialCondition::tanh_front(etas[i], x_center));
            const FrontTrace ft = track_front(tr);
            e.speed = ft.speed;
            e.converged = ft.converged;
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
    });

    std::vector<const ScanEntry*> ok;
    for (const auto& e : scan.entries)
        if (e.speed) ok.push_back(&e);
    std::sort(ok.begin(), ok.end(), [](const ScanEntry* a, const ScanEntry* b) { return a->eta < b->eta; });
    if (ok.empty()) return scan;
    scan.limiting_speed = *ok.back()->speed;

    // Tail: the upper half of the successful etas.
    const std::size_t start = ok.size() / 2;
    constexpr double tol = 5e-4;
    bool up = true, down = true;
    for (std::size_t i = start + 1; i < ok.size(); ++i) {
        const double d = *ok[i]->speed - *ok[i - 1]->speed;
        if (d > tol) down = false;
        if (d < -tol) up = false;
    }
    scan.tail_monotone = up || down;
    const double span = *ok.back()->speed - *ok[start]->speed;
    scan.tail_direction = !scan.tail_monotone || std::abs(span) <= tol ? 0 : (span < 0 ? -1 : 1);
    return scan;
}

std::vector<double> gradient(const std::vector<double>& u, double dx) {
    const std::size_t n = u.size();
    std::vector<double> g(n, 0.0);
    if (n < 2) return g;
    g[0] = (u[1] - u[0]) / dx;
    g[n - 1] = (u[n - 1] - u[n - 2]) / dx;
    for (std::size_t j = 1; j + 1 < n; ++j) g[j] = (u[j + 1] - u[j - 1]) / (2.0 * dx);
    return g;
}

std::vector<double> gradient_profile(const Trajectory& traj, double t) { return gradient(traj.at(t), traj.dx); }

}  // namespace wavekit
