#include "wavekit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavekit/fit.hpp"
#include "wavekit/parallel.hpp"

namespace wavekit {

void LatticeParams::validate() const {
    const double probs[] = {P_m_i, P_m_g, P_p_i, P_p_g, P_d_i, P_d_g};
    for (double p : probs)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("lattice probabilities must lie in [0,1]");
    if (!(delta > 0.0) || !(tau > 0.0)) throw std::invalid_argument("lattice spacing and time step must be positive");
}

ContinuumMap continuum_limit_map(const LatticeParams& lp) {
    lp.validate();
    const double scale = lp.delta * lp.delta / (2.0 * lp.tau);
    ContinuumMap out;
    out.params.D_i = lp.P_m_i * scale;
    out.params.D_g = lp.P_m_g * scale;
    out.params.lambda_i = lp.P_p_i / lp.tau;
    out.params.lambda_g = lp.P_p_g / lp.tau;
    out.params.K_i = lp.P_d_i / lp.tau;
    out.params.K_g = lp.P_d_g / lp.tau;
    const std::pair<const char*, double> small[] = {
        {"P_p_i", lp.P_p_i}, {"P_p_g", lp.P_p_g}, {"P_d_i", lp.P_d_i}, {"P_d_g", lp.P_d_g}};
    for (const auto& [name, v] : small)
        if (v > 0.1) out.warnings.push_back(std::string(name) + " exceeds 0.1; the continuum limit assumes it is O(tau)");
    return out;
}

LatticeParams lattice_from_continuum(const ModelParams& mp, double delta, double tau) {
    if (!(delta > 0.0) || !(tau > 0.0)) throw std::invalid_argument("lattice spacing and time step must be positive");
    const double scale = 2.0 * tau / (delta * delta);
    LatticeParams lp;
    lp.delta = delta;
    lp.tau = tau;
    lp.P_m_i = mp.D_i * scale;
    lp.P_m_g = mp.D_g * scale;
    lp.P_p_i = mp.lambda_i * tau;
    lp.P_p_g = mp.lambda_g * tau;
    lp.P_d_i = mp.K_i * tau;
    lp.P_d_g = mp.K_g * tau;
    lp.validate();
    return lp;
}

std::vector<double> mean_field_increment(const std::vector<double>& U, const LatticeParams& lp) {
    const auto n = static_cast<std::ptrdiff_t>(U.size());
    if (n < 5) throw std::invalid_argument("mean-field lattice needs at least 5 sites");
    auto at = [&](std::ptrdiff_t k) { return (k >= 0 && k < n) ? U[static_cast<std::size_t>(k)] : 0.0; };
    // Probability per step that an agent at j hops to j+s (s = +1 or -1),
    // including the vacancy of the target. Isolation looks at the far neighbour.
    auto hop = [&](std::ptrdiff_t j, int s) {
        const double behind = at(j - s);
        return at(j) * (1.0 - at(j + s)) * (0.5 * lp.P_m_i * (1.0 - behind) + 0.5 * lp.P_m_g * behind);
    };
    auto birth = [&](std::ptrdiff_t j, int s) {
        const double behind = at(j - s);
        return at(j) * (1.0 - at(j + s)) * (0.5 * lp.P_p_i * (1.0 - behind) + 0.5 * lp.P_p_g * behind);
    };

    std::vector<double> dU(U.size(), 0.0);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        double d = 0.0;
        if (j > 0) d += hop(j - 1, +1) - hop(j, -1);
        if (j < n - 1) d += hop(j + 1, -1) - hop(j, +1);
        d += birth(j - 1, +1) + birth(j + 1, -1);
        const double alone = at(j) * (1.0 - at(j - 1)) * (1.0 - at(j + 1));
        d += -lp.P_d_i * alone - lp.P_d_g * at(j) + lp.P_d_g * alone;
        dU[static_cast<std::size_t>(j)] = d;
    }
    return dU;
}

MeanFieldState mean_field_step(const MeanFieldState& state, const LatticeParams& lp) {
    const std::vector<double> dU = mean_field_increment(state.occupancy, lp);
    MeanFieldState next = state;
    for (std::size_t j = 0; j < dU.size(); ++j) {
        double v = state.occupancy[j] + dU[j];
        if (v < 0.0 || v > 1.0) {
            ++next.clamp_events;
            v = std::clamp(v, 0.0, 1.0);
        }
        next.occupancy[j] = v;
    }
    next.site_updates += dU.size();
    next.time += lp.tau;
    return next;
}

std::size_t AgentLattice::agents() const {
    return static_cast<std::size_t>(std::count(occupied.begin(), occupied.end(), std::uint8_t{1}));
}

bool AgentLattice::isolated(std::size_t j) const {
    const bool left = j > 0 && occupied[j - 1];
    const bool right = j + 1 < occupied.size() && occupied[j + 1];
    return !left && !right;
}

AgentLattice stochastic_step(AgentLattice lattice, const LatticeParams& lp, Xoshiro256& rng) {
    auto& occ = lattice.occupied;
    const auto n = static_cast<std::ptrdiff_t>(occ.size());
    std::vector<std::ptrdiff_t> pos;
    for (std::ptrdiff_t j = 0; j < n; ++j)
        if (occ[static_cast<std::size_t>(j)]) pos.push_back(j);
    std::vector<std::uint32_t> order(pos.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<std::uint32_t>(k);
    rng.shuffle(order.begin(), order.end());

    auto vacant = [&](std::ptrdiff_t t) { return t >= 0 && t < n && !occ[static_cast<std::size_t>(t)]; };
    for (std::uint32_t id : order) {
        std::ptrdiff_t j = pos[id];
        if (j < 0) continue;
        bool iso = lattice.isolated(static_cast<std::size_t>(j));
        if (rng.uniform() < (iso ? lp.P_m_i : lp.P_m_g)) {
            const std::ptrdiff_t t = j + (rng.uniform() < 0.5 ? -1 : 1);
            if (vacant(t)) {
                occ[static_cast<std::size_t>(j)] = 0;
                occ[static_cast<std::size_t>(t)] = 1;
                j = t;
            }
        }
        iso = lattice.isolated(static_cast<std::size_t>(j));
        if (rng.uniform() < (iso ? lp.P_p_i : lp.P_p_g)) {
            const std::ptrdiff_t t = j + (rng.uniform() < 0.5 ? -1 : 1);
            if (vacant(t)) occ[static_cast<std::size_t>(t)] = 1;
        }
        iso = lattice.isolated(static_cast<std::size_t>(j));
        if (rng.uniform() < (iso ? lp.P_d_i : lp.P_d_g)) {
            occ[static_cast<std::size_t>(j)] = 0;
            j = -1;
        }
        pos[id] = j;
    }
    ++lattice.steps;
    return lattice;
}

EnsembleResult run_ensemble(const LatticeParams& lp, const std::vector<std::uint8_t>& initial, const EnsembleOptions& opt) {
    lp.validate();
    if (opt.runs == 0 || opt.snapshot_every == 0) throw std::invalid_argument("ensemble needs runs and a snapshot interval");
    const std::size_t sites = initial.size();
    const std::size_t snaps = opt.steps / opt.snapshot_every + 1;
    // One byte per (snapshot, site) per run, aggregated afterwards in run order.
    std::vector<std::vector<std::uint8_t>> record(opt.runs);
    parallel_for(opt.runs, opt.jobs, [&](std::size_t r) {
        AgentLattice lat{initial, split_seed(opt.seed, r), 0};
        Xoshiro256 rng(lat.rng_seed);
        auto& rec = record[r];
        rec.assign(snaps * sites, 0);
        std::copy(lat.occupied.begin(), lat.occupied.end(), rec.begin());
        for (std::size_t s = 1; s <= opt.steps; ++s) {
            lat = stochastic_step(std::move(lat), lp, rng);
            if (s % opt.snapshot_every == 0)
                std::copy(lat.occupied.begin(), lat.occupied.end(),
                          rec.begin() + static_cast<std::ptrdiff_t>((s / opt.snapshot_every) * sites));
        }
    });

    EnsembleResult out;
    out.runs = opt.runs;
    out.mean.assign(snaps, std::vector<double>(sites, 0.0));
    out.stderr_.assign(snaps, std::vector<double>(sites, 0.0));
    for (std::size_t k = 0; k < snaps; ++k) out.times.push_back(static_cast<double>(k * opt.snapshot_every) * lp.tau);
    std::vector<std::uint32_t> counts(snaps * sites, 0);
    for (const auto& rec : record)
        for (std::size_t i = 0; i < rec.size(); ++i) counts[i] += rec[i];
    const double nr = static_cast<double>(opt.runs);
    for (std::size_t k = 0; k < snaps; ++k) {
        for (std::size_t j = 0; j < sites; ++j) {
            const double p = counts[k * sites + j] / nr;
            out.mean[k][j] = p;
            out.stderr_[k][j] = opt.runs > 1 ? std::sqrt(p * (1.0 - p) / (nr - 1.0)) : 0.0;
        }
    }
    return out;
}

double level_crossing(const std::vector<double>& profile, double dx, double level) {
    std::size_t j = 0;
    while (j < profile.size() && profile[j] >= level) ++j;
    if (j == profile.size()) throw std::runtime_error("profile never drops below the tracking level");
    if (j == 0) return 0.0;
    const double a = profile[j - 1], b = profile[j];
    return (static_cast<double>(j - 1) + (a - level) / (a - b)) * dx;
}

LevelFront track_level(const std::vector<double>& times, const std::vector<std::vector<double>>& profiles, double dx,
                       double level, double fit_fraction) {
    LevelFront f;
    f.t = times;
    for (const auto& p : profiles) f.x.push_back(level_crossing(p, dx, level));
    const auto first = static_cast<std::size_t>(std::floor(static_cast<double>(times.size()) * (1.0 - fit_fraction)));
    const LineFit lf = fit_line(f.t, f.x, std::min(first, times.size() - 2));
    f.speed = lf.slope;
    f.rms_residual = lf.rms_residual;
    return f;
}

std::vector<std::uint8_t> heaviside_occupancy(std::size_t sites, double delta, double x_jump) {
    std::vector<std::uint8_t> occ(sites, 0);
    for (std::size_t j = 0; j < sites; ++j) occ[j] = static_cast<double>(j) * delta < x_jump - 1e-9 * delta ? 1 : 0;
    return occ;
}

}  // namespace wavekit
