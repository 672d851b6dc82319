#include "wavekit/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavekit::cli {

using nlohmann::json;

ModelParams ExperimentConfig::model_params() const { return ModelParams{D_i, D_g, lambda_i, lambda_g, K_i, K_g}; }

Model ExperimentConfig::model() const {
    if (D_kind == "general") {
        if (!(lambda_i == lambda_g && K_i == 0.0 && K_g == 0.0))
            return Model{Diffusivity::general(D_scale, roots[0], roots[1]),
                         Kinetics::general(lambda_i, lambda_g, K_i, K_g)};
        return Model::shifted(D_scale, roots[0], roots[1], lambda_i);
    }
    const ModelParams p = model_params();
    p.validate();
    return Model::from_params(p);
}

Grid1D ExperimentConfig::grid() const { return Grid1D{x0, x1, dx, dt, t_end}; }

InitialCondition ExperimentConfig::initial_condition() const {
    if (ic == "heaviside") return InitialCondition::heaviside(x_center);
    if (ic == "tanh") return InitialCondition::tanh_front(eta, x_center);
    throw std::invalid_argument("unknown initial condition '" + ic + "'");
}

SolverOptions ExperimentConfig::solver_options() const {
    SolverOptions o;
    o.integrator = integrator == "euler" ? Integrator::ForwardEuler : Integrator::Heun;
    o.auto_substep = auto_substep;
    return o;
}

LatticeParams ExperimentConfig::lattice_params() const {
    if (lattice_explicit) {
        LatticeParams p = *lattice_explicit;
        p.delta = delta;
        p.tau = tau;
        p.validate();
        return p;
    }
    return lattice_from_continuum(model_params(), delta, tau);
}

void ExperimentConfig::validate() const {
    if (D_kind != "adhesion" && D_kind != "general") throw std::invalid_argument("D-kind must be 'adhesion' or 'general'");
    if (ic != "heaviside" && ic != "tanh") throw std::invalid_argument("ic must be 'heaviside' or 'tanh'");
    if (integrator != "heun" && integrator != "euler") throw std::invalid_argument("integrator must be 'heun' or 'euler'");
    if (lattice_mode != "mean-field" && lattice_mode != "stochastic" && lattice_mode != "both")
        throw std::invalid_argument("lattice mode must be 'mean-field', 'stochastic' or 'both'");
    if (lattice_initial != "heaviside" && lattice_initial != "uniform")
        throw std::invalid_argument("lattice initial data must be 'heaviside' or 'uniform'");
    if (!(output_interval > 0.0)) throw std::invalid_argument("output interval must be positive");
    if (k_points < 2) throw std::invalid_argument("k grid needs at least two points");
    if (scan_nu && !((*scan_nu)[2] > 0.0 && (*scan_nu)[1] >= (*scan_nu)[0]))
        throw std::invalid_argument("nu scan needs start <= stop and a positive step");
    if (command == "speed-scan" && etas.empty()) throw std::invalid_argument("eta list is empty");
    if (runs == 0 || snapshot_every == 0) throw std::invalid_argument("runs and snapshot spacing must be positive");
    grid().validate();
    model();
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["command"] = c.command;
    j["model"] = {{"D_i", c.D_i},       {"D_g", c.D_g},         {"lambda_i", c.lambda_i}, {"lambda_g", c.lambda_g},
                  {"K_i", c.K_i},       {"K_g", c.K_g},         {"D_kind", c.D_kind},     {"D_scale", c.D_scale},
                  {"roots", c.roots}};
    j["grid"] = {{"x0", c.x0}, {"x1", c.x1}, {"dx", c.dx}, {"dt", c.dt}, {"t_end", c.t_end}};
    j["initial"] = {{"kind", c.ic}, {"eta", c.eta}, {"x_center", c.x_center}};
    j["solver"] = {{"integrator", c.integrator},
                   {"auto_substep", c.auto_substep},
                   {"front_threshold", c.front_threshold},
                   {"output_interval", c.output_interval}};
    j["wave"] = {{"c", c.c}, {"shoot_eps", c.shoot_eps}, {"k_max", c.k_max}, {"k_points", c.k_points}};
    j["wave"]["scan_nu"] = c.scan_nu ? json(*c.scan_nu) : json(nullptr);
    j["etas"] = c.etas;
    json lat = {{"mode", c.lattice_mode}, {"initial", c.lattice_initial}, {"u0", c.lattice_u0},
                {"delta", c.delta},       {"tau", c.tau},                 {"runs", c.runs},
                {"steps", c.lattice_steps}, {"snapshot_every", c.snapshot_every}};
    if (c.lattice_explicit) {
        const LatticeParams& p = *c.lattice_explicit;
        lat["explicit"] = {{"P_m_i", p.P_m_i}, {"P_m_g", p.P_m_g}, {"P_p_i", p.P_p_i},
                           {"P_p_g", p.P_p_g}, {"P_d_i", p.P_d_i}, {"P_d_g", p.P_d_g}};
    } else {
        lat["explicit"] = nullptr;
    }
    j["lattice"] = lat;
    j["out_dir"] = c.out_dir;
    j["seed"] = c.seed;
    j["jobs"] = c.jobs;
    return j;
}

namespace {

template <class T>
void read(const json& j, const char* key, T& dst) {
    if (j.contains(key)) j.at(key).get_to(dst);
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    read(j, "command", c.command);
    if (j.contains("model")) {
        const json& m = j["model"];
        read(m, "D_i", c.D_i);
        read(m, "D_g", c.D_g);
        read(m, "lambda_i", c.lambda_i);
        read(m, "lambda_g", c.lambda_g);
        read(m, "K_i", c.K_i);
        read(m, "K_g", c.K_g);
        read(m, "D_kind", c.D_kind);
        read(m, "D_scale", c.D_scale);
        read(m, "roots", c.roots);
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        read(g, "x0", c.x0);
        read(g, "x1", c.x1);
        read(g, "dx", c.dx);
        read(g, "dt", c.dt);
        read(g, "t_end", c.t_end);
    }
    if (j.contains("initial")) {
        read(j["initial"], "kind", c.ic);
        read(j["initial"], "eta", c.eta);
        read(j["initial"], "x_center", c.x_center);
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        read(s, "integrator", c.integrator);
        read(s, "auto_substep", c.auto_substep);
        read(s, "front_threshold", c.front_threshold);
        read(s, "output_interval", c.output_interval);
    }
    if (j.contains("wave")) {
        const json& w = j["wave"];
        read(w, "c", c.c);
        read(w, "shoot_eps", c.shoot_eps);
        read(w, "k_max", c.k_max);
        read(w, "k_points", c.k_points);
        if (w.contains("scan_nu") && !w["scan_nu"].is_null()) c.scan_nu = w["scan_nu"].get<std::array<double, 3>>();
    }
    read(j, "etas", c.etas);
    if (j.contains("lattice")) {
        const json& l = j["lattice"];
        read(l, "mode", c.lattice_mode);
        read(l, "initial", c.lattice_initial);
        read(l, "u0", c.lattice_u0);
        read(l, "delta", c.delta);
        read(l, "tau", c.tau);
        read(l, "runs", c.runs);
        read(l, "steps", c.lattice_steps);
        read(l, "snapshot_every", c.snapshot_every);
        if (l.contains("explicit") && !l["explicit"].is_null()) {
            const json& e = l["explicit"];
            LatticeParams p;
            read(e, "P_m_i", p.P_m_i);
            read(e, "P_m_g", p.P_m_g);
            read(e, "P_p_i", p.P_p_i);
            read(e, "P_p_g", p.P_p_g);
            read(e, "P_d_i", p.P_d_i);
            read(e, "P_d_g", p.P_d_g);
            p.delta = c.delta;
            p.tau = c.tau;
            c.lattice_explicit = p;
        }
    }
    read(j, "out_dir", c.out_dir);
    read(j, "seed", c.seed);
    read(j, "jobs", c.jobs);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    try {
        return config_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed config file '" + path + "': " + e.what());
    }
}

std::array<double, 3> parse_range(const std::string& text) {
    std::array<double, 3> r{};
    std::istringstream in(text);
    char sep1 = 0, sep2 = 0;
    if (!(in >> r[0] >> sep1 >> r[1] >> sep2 >> r[2]) || sep1 != ':' || sep2 != ':' || !in.eof())
        throw std::invalid_argument("expected a range of the form start:stop:step, got '" + text + "'");
    return r;
}

}  // namespace wavekit::cli
