#include "wavekit/cli/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "wavekit/lattice.hpp"
#include "wavekit/pde.hpp"
#include "wavekit/phase_plane.hpp"
#include "wavekit/spectral.hpp"

namespace wavekit::cli {

using nlohmann::json;

namespace {

std::string time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "t%.3f", t);
    return buf;
}

// Output times 0, h, 2h, ... up to t_end (always including t_end).
std::vector<double> output_times(double t_end, double h) {
    std::vector<double> ts;
    const auto n = static_cast<long long>(std::floor(t_end / h + 1e-9));
    for (long long k = 0; k <= n; ++k) ts.push_back(static_cast<double>(k) * h);
    if (t_end - ts.back() > 1e-9) ts.push_back(t_end);
    return ts;
}

json cplx_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json fit_json(const FrontTrace& f, double threshold) {
    return {{"speed", f.speed},       {"intercept", f.intercept}, {"fit_residual", f.fit_residual},
            {"converged", f.converged}, {"fit_t0", f.fit_t0},      {"fit_t1", f.fit_t1},
            {"threshold", threshold}};
}

}  // namespace

json cmd_simulate_pde(const ExperimentConfig& cfg, OutputDir& out) {
    const Model m = cfg.model();
    const Grid1D g = cfg.grid();
    const Trajectory tr = evolve(m, g, cfg.initial_condition(), cfg.solver_options());

    for (double t : output_times(g.t_end, cfg.output_interval)) {
        const auto& u = tr.at(t);
        std::vector<std::vector<double>> rows;
        rows.reserve(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) rows.push_back({tr.x[j], u[j]});
        out.write_dat("snapshots/u_" + time_tag(t) + ".dat", {"x", "U"}, rows);
    }

    const FrontTrace f = track_front(tr, cfg.front_threshold);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < f.t.size(); ++k) rows.push_back({fmt(f.t[k]), fmt(f.L[k])});
    out.write_csv("front.csv", {"t", "L"}, rows);
    out.write_json("front.json", fit_json(f, cfg.front_threshold));

    const auto grad = gradient_profile(tr, tr.times.back());
    std::vector<std::vector<double>> grows;
    for (std::size_t j = 0; j < grad.size(); ++j) grows.push_back({tr.x[j], grad[j]});
    out.write_dat("gradient_final.dat", {"x", "dUdx"}, grows);

    return {{"speed", f.speed},
            {"converged", f.converged},
            {"fit_residual", f.fit_residual},
            {"substeps", tr.substeps},
            {"warnings", tr.warnings},
            {"min_gradient_final", *std::min_element(grad.begin(), grad.end())}};
}

json cmd_phase_plane(const ExperimentConfig& cfg, OutputDir& out) {
    const Model m = cfg.model();
    const double c = cfg.c;
    json res;

    json eqs = json::array();
    for (const auto& e : classify_equilibria(m, c))
        eqs.push_back({{"name", e.name},
                       {"u", e.location.u},
                       {"eig_plus", cplx_json(e.eig_plus)},
                       {"eig_minus", cplx_json(e.eig_minus)},
                       {"class", to_string(e.cls)}});
    out.write_json("equilibria.json", eqs);
    res["equilibria"] = eqs;

    json cert;
    try {
        json regions = json::array();
        for (const auto& r : region_certificates(m, c))
            regions.push_back({{"region", r.region_id}, {"mu", r.mu}, {"margin", r.margin}, {"argmin", r.argmin},
                               {"valid", r.valid()}});
        cert["regions"] = regions;
    } catch (const std::logic_error& e) {
        cert["regions_error"] = e.what();
    }
    const SlopeReport s = slope_comparisons(m, c);
    cert["slopes"] = {{"one", s.at_one},   {"alpha", s.at_alpha},         {"zero", s.at_zero},
                      {"beta", s.at_beta}, {"all_negative", s.all_negative()}};
    out.write_json("certificates.json", cert);

    ShootOptions opt;
    opt.eps = cfg.shoot_eps;
    json segs = json::array();
    bool all_ok = true;
    for (SegmentId id : {SegmentId::OneToBeta, SegmentId::AlphaToBeta, SegmentId::AlphaToZero}) {
        json sj{{"segment", to_string(id)}};
        try {
            const PhaseOrbit o = shoot_segment(m, c, id, opt);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < o.u.size(); ++i) rows.push_back({o.xi[i], o.u[i], o.p[i], o.z[i]});
            out.write_dat(std::string("orbit_") + to_string(id) + ".dat", {"xi", "u", "p", "z"}, rows);
            sj.update({{"connected", o.endpoint_error <= opt.target_radius},
                       {"endpoint_error", o.endpoint_error},
                       {"steps", o.steps},
                       {"monotone_u", o.monotone_u},
                       {"u_nonnegative", o.u_nonnegative},
                       {"entered_spiral", o.entered_spiral}});
        } catch (const ShootingError& e) {
            all_ok = false;
            sj.update({{"connected", false}, {"error", e.what()}, {"exit_point", {e.exit_point.u, e.exit_point.p}}});
        }
        segs.push_back(sj);
    }
    res["segments"] = segs;

    if (all_ok) {
        const WaveProfile w = assemble_wave(m, c, opt);
        res["regime"] = to_string(w.regime);
        res["diagnostics"] = w.diagnostics;
        if (!w.z.empty()) {
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < w.z.size(); ++i) rows.push_back({w.z[i], w.u[i], w.dudz[i]});
            out.write_dat("profile.dat", {"z", "u", "dudz"}, rows);
            res["profile_min_u"] = *std::min_element(w.u.begin(), w.u.end());
        }
    } else {
        res["regime"] = to_string(Regime::NoConnection);
        res["diagnostics"] = {"at least one segment failed to connect"};
    }
    return res;
}

json cmd_spectrum(const ExperimentConfig& cfg, OutputDir& out) {
    const Model m = cfg.model();
    const double c = cfg.c;
    const SpectrumReport r = spectrum_report(m, c, symmetric_grid(cfg.k_max, static_cast<std::size_t>(cfg.k_points)));

    auto curve = [&](const std::vector<cplx>& v) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < v.size(); ++i) rows.push_back({r.dispersion.k[i], v[i].real(), v[i].imag()});
        return rows;
    };
    out.write_dat("dispersion_plus.dat", {"k", "ReLambda", "ImLambda"}, curve(r.dispersion.plus));
    out.write_dat("dispersion_minus.dat", {"k", "ReLambda", "ImLambda"}, curve(r.dispersion.minus));

    json report{{"c", c},
                {"K_plus", r.K.K_plus},
                {"K_minus", r.K.K_minus},
                {"ideal_weight", r.ideal_weight},
                {"K_plus_nu", r.K_nu.K_plus_nu},
                {"K_minus_nu", r.K_nu.K_minus_nu},
                {"weight_range", {{"kind", to_string(r.weight_range.kind)}}},
                {"verdict", to_string(r.verdict)}};
    if (r.weight_range.kind != WeightRange::Kind::Empty) {
        report["weight_range"]["lo"] = r.weight_range.lo;
        report["weight_range"]["hi"] = r.weight_range.hi;
    }

    if (cfg.scan_nu) {
        const auto [a, b, h] = *cfg.scan_nu;
        const auto n = static_cast<long long>(std::floor((b - a) / h + 1e-9));
        std::vector<std::vector<double>> rows;
        double best = std::numeric_limits<double>::infinity(), arg = a;
        for (long long i = 0; i <= n; ++i) {
            const double nu = a + static_cast<double>(i) * h;
            const WeightedIntersections w = weighted_intersections(m, c, nu);
            rows.push_back({nu, w.K_plus_nu, w.K_minus_nu});
            if (w.K_plus_nu < best) {
                best = w.K_plus_nu;
                arg = nu;
            }
        }
        out.write_dat("nu_scan.dat", {"nu", "K_plus_nu", "K_minus_nu"}, rows);
        report["nu_scan"] = {{"argmin", arg}, {"min_K_plus_nu", best}};
    }

    if (m.R.is_logistic() && m.D.sign_class() == SignClass::SignChangingTwice) {
        WaveProfile w;
        try {
            w = assemble_wave(m, c);
        } catch (const std::exception&) {
            w = WaveProfile{};
        }
        const PointSpectrumCertificate pc = point_spectrum_certificate(m, c, w);
        report["point_spectrum"] = {{"scope", "desingularised operator"},
                                    {"profile_samples", pc.potential_samples.size()},
                                    {"max_potential", pc.max_potential},
                                    {"polynomial_bound_max", pc.polynomial_bound_max},
                                    {"analytic_bound", pc.analytic_bound},
                                    {"certified", pc.certified}};
    }
    out.write_json("report.json", report);
    return report;
}

json cmd_lattice(const ExperimentConfig& cfg, OutputDir& out) {
    const LatticeParams lp = cfg.lattice_params();
    const ContinuumMap cm = continuum_limit_map(lp);
    const auto sites = static_cast<std::size_t>(std::llround((cfg.x1 - cfg.x0) / cfg.delta)) + 1;
    const bool uniform = cfg.lattice_initial == "uniform";
    const double t_end = static_cast<double>(cfg.lattice_steps) * cfg.tau;
    const auto out_every =
        static_cast<std::size_t>(std::max<long long>(1, std::llround(cfg.output_interval / cfg.tau)));

    std::vector<std::uint8_t> init;
    if (uniform) {
        Xoshiro256 rng(cfg.seed);
        init.resize(sites);
        for (auto& b : init) b = rng.uniform() < cfg.lattice_u0 ? 1 : 0;
    } else {
        init = heaviside_occupancy(sites, cfg.delta, cfg.x_center - cfg.x0);
    }
    auto site_x = [&](std::size_t j) { return cfg.x0 + static_cast<double>(j) * cfg.delta; };

    json res{{"lattice_params",
              {{"P_m_i", lp.P_m_i}, {"P_m_g", lp.P_m_g}, {"P_p_i", lp.P_p_i}, {"P_p_g", lp.P_p_g},
               {"P_d_i", lp.P_d_i}, {"P_d_g", lp.P_d_g}, {"delta", lp.delta}, {"tau", lp.tau}}},
             {"continuum_params",
              {{"D_i", cm.params.D_i}, {"D_g", cm.params.D_g}, {"lambda_i", cm.params.lambda_i},
               {"lambda_g", cm.params.lambda_g}, {"K_i", cm.params.K_i}, {"K_g", cm.params.K_g}}},
             {"warnings", cm.warnings},
             {"sites", sites}};

    const bool do_mf = cfg.lattice_mode != "stochastic";
    const bool do_st = cfg.lattice_mode != "mean-field";

    if (do_mf) {
        MeanFieldState s;
        if (uniform)
            s.occupancy.assign(sites, cfg.lattice_u0);
        else
            s.occupancy.assign(init.begin(), init.end());
        std::vector<double> times{0.0};
        std::vector<std::vector<double>> profiles{s.occupancy};
        std::vector<std::vector<std::string>> growth;
        double logistic = cfg.lattice_u0;
        auto growth_row = [&](std::size_t step) {
            double mean = 0.0;
            for (double v : s.occupancy) mean += v;
            mean /= static_cast<double>(sites);
            growth.push_back({std::to_string(step), fmt(s.time), fmt(s.occupancy[sites / 2]), fmt(mean), fmt(logistic)});
        };
        auto snap = [&](std::size_t step) {
            std::vector<std::vector<double>> rows;
            for (std::size_t j = 0; j < sites; ++j) rows.push_back({site_x(j), s.occupancy[j]});
            out.write_dat("snapshots/mean_field_" + time_tag(static_cast<double>(step) * cfg.tau) + ".dat", {"x", "U"},
                          rows);
        };
        snap(0);
        if (uniform) growth_row(0);
        for (std::size_t k = 1; k <= cfg.lattice_steps; ++k) {
            s = mean_field_step(s, lp);
            logistic += lp.P_p_i * logistic * (1.0 - logistic);
            if (uniform) growth_row(k);
            if (k % cfg.snapshot_every == 0) {
                times.push_back(s.time);
                profiles.push_back(s.occupancy);
            }
            if (k % out_every == 0 || k == cfg.lattice_steps) snap(k);
        }
        json mf{{"clamp_fraction", s.clamp_fraction()}, {"invalid", s.invalid()}};
        if (uniform) {
            out.write_csv("mean_field_growth.csv", {"step", "time", "centre_occupancy", "mean_occupancy", "logistic"},
                          growth);
        } else {
            const LevelFront lf = track_level(times, profiles, cfg.delta, 0.5);
            mf["speed"] = lf.speed;
            mf["rms_residual"] = lf.rms_residual;
        }
        res["mean_field"] = mf;
    }

    if (do_st) {
        EnsembleOptions eo;
        eo.runs = cfg.runs;
        eo.steps = cfg.lattice_steps;
        eo.snapshot_every = cfg.snapshot_every;
        eo.seed = cfg.seed;
        eo.jobs = cfg.jobs;
        const EnsembleResult er = run_ensemble(lp, init, eo);
        for (std::size_t k = 0; k < er.times.size(); ++k) {
            const auto step = static_cast<std::size_t>(std::llround(er.times[k] / cfg.tau));
            if (step % out_every != 0 && step != cfg.lattice_steps) continue;
            std::vector<std::vector<double>> rows;
            for (std::size_t j = 0; j < sites; ++j) rows.push_back({site_x(j), er.mean[k][j], er.stderr_[k][j]});
            out.write_dat("snapshots/stochastic_" + time_tag(er.times[k]) + ".dat", {"x", "mean", "stderr"}, rows);
        }
        json st{{"runs", er.runs}};
        if (!uniform) {
            const LevelFront lf = track_level(er.times, er.mean, cfg.delta, 0.5);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t k = 0; k < lf.t.size(); ++k) rows.push_back({fmt(lf.t[k]), fmt(lf.x[k])});
            out.write_csv("front_stochastic.csv", {"t", "x"}, rows);
            st["speed"] = lf.speed;
            st["rms_residual"] = lf.rms_residual;

            try {
                Grid1D g{cfg.x0, cfg.x1, cfg.dx, cfg.dt, t_end};
                const Trajectory tr = evolve(Model::from_params(cm.params), g, InitialCondition::heaviside(cfg.x_center));
                const double pde = track_front(tr, cfg.front_threshold).speed;
                st["pde_speed"] = pde;
                if (pde != 0.0) {
                    const double rel = std::abs(lf.speed - pde) / std::abs(pde);
                    st["relative_difference"] = rel;
                    st["within_15_percent"] = rel <= 0.15;
                }
            } catch (const std::exception& e) {
                st["pde_error"] = e.what();
            }
        }
        res["stochastic"] = st;
    }
    return res;
}

json cmd_speed_scan(const ExperimentConfig& cfg, OutputDir& out) {
    const Model m = cfg.model();
    const SpeedScan s = speed_vs_eta_scan(m, cfg.etas, cfg.grid(), cfg.jobs, cfg.x_center);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<double>> dat;
    json failures = json::array();
    for (const auto& e : s.entries) {
        rows.push_back({fmt(e.eta), e.speed ? fmt(*e.speed) : "", e.converged ? "true" : "false", e.error});
        if (e.speed)
            dat.push_back({e.eta, *e.speed});
        else
            failures.push_back({{"eta", e.eta}, {"error", e.error}});
    }
    out.write_csv("scan.csv", {"eta", "speed", "converged", "error"}, rows);
    out.write_dat("scan.dat", {"eta", "speed"}, dat);

    json res{{"tail_monotone", s.tail_monotone}, {"tail_direction", s.tail_direction}, {"failures", failures}};
    res["limiting_speed"] = s.limiting_speed ? json(*s.limiting_speed) : json(nullptr);
    if (m.D.sign_class() == SignClass::PositiveOnUnit && m.R.is_logistic()) {
        const PositiveBounds b = positive_D_bounds(m);
        bool inside = true;
        for (const auto& e : s.entries)
            if (e.speed && (*e.speed < b.s2 - 0.01 || *e.speed > b.s1 + 0.01)) inside = false;
        res["band"] = {{"S1", b.s1}, {"S2", b.s2}, {"all_within", inside}};
    }
    return res;
}

json run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    OutputDir out(resolve_output_dir(cfg.out_dir));
    const json cj = to_json(cfg);
    out.write_json("config.json", cj);
    const auto t0 = std::chrono::steady_clock::now();
    json results;
    if (cfg.command == "simulate-pde")
        results = cmd_simulate_pde(cfg, out);
    else if (cfg.command == "phase-plane")
        results = cmd_phase_plane(cfg, out);
    else if (cfg.command == "spectrum")
        results = cmd_spectrum(cfg, out);
    else if (cfg.command == "lattice")
        results = cmd_lattice(cfg, out);
    else if (cfg.command == "speed-scan")
        results = cmd_speed_scan(cfg, out);
    else
        throw std::invalid_argument("unknown command '" + cfg.command + "'");
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out.write_manifest(cj, results, wall);
}

int cli_main(int argc, char** argv) {
    ExperimentConfig cfg;
    // The config file supplies defaults; flags parsed afterwards override it.
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string a = argv[i];
            if (a == "--config" && i + 1 < argc) cfg = load_config(argv[i + 1]);
            if (a.rfind("--config=", 0) == 0) cfg = load_config(a.substr(9));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Travelling waves of reaction-diffusion equations with sign-changing diffusivity"};
    app.set_version_flag("--version", WAVEKIT_VERSION);
    app.require_subcommand(1);
    std::string config_path, scan_nu;

    auto common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON config file; flags override its values");
        s->add_option("--Di", cfg.D_i, "isolated-agent diffusivity D_i");
        s->add_option("--Dg", cfg.D_g, "grouped-agent diffusivity D_g");
        s->add_option_function<double>(
            "--lambda", [&](double v) { cfg.lambda_i = cfg.lambda_g = v; }, "common proliferation rate");
        s->add_option("--lambda-i", cfg.lambda_i);
        s->add_option("--lambda-g", cfg.lambda_g);
        s->add_option("--Ki", cfg.K_i, "isolated death rate");
        s->add_option("--Kg", cfg.K_g, "grouped death rate");
        s->add_option("--D-kind", cfg.D_kind, "adhesion | general")->check(CLI::IsMember({"adhesion", "general"}));
        s->add_option("--D-scale", cfg.D_scale, "leading coefficient of the general diffusivity");
        s->add_option_function<std::vector<double>>(
              "--roots", [&](const std::vector<double>& r) { cfg.roots = {r[0], r[1]}; },
              "roots r1 r2 of the general diffusivity")
            ->expected(2);
        s->add_option("--out", cfg.out_dir, "output directory (WAVEKIT_OUT overrides)");
        s->add_option("--seed", cfg.seed);
        s->add_option("--jobs", cfg.jobs, "worker threads for scans and ensembles");
    };
    auto grid = [&](CLI::App* s) {
        s->add_option("--x0", cfg.x0);
        s->add_option("--x1", cfg.x1);
        s->add_option("--dx", cfg.dx);
        s->add_option("--dt", cfg.dt);
        s->add_option("--t-end", cfg.t_end);
        s->add_option("--x-center", cfg.x_center, "jump or tanh centre");
        s->add_option("--integrator", cfg.integrator)->check(CLI::IsMember({"heun", "euler"}));
        s->add_option("--auto-substep", cfg.auto_substep);
        s->add_option("--threshold", cfg.front_threshold, "front threshold");
        s->add_option("--output-interval", cfg.output_interval, "time between written snapshots");
    };

    auto* pde = app.add_subcommand("simulate-pde", "evolve the PDE and measure the front speed");
    common(pde);
    grid(pde);
    pde->add_option("--ic", cfg.ic, "heaviside | tanh")->check(CLI::IsMember({"heaviside", "tanh"}));
    pde->add_option("--eta", cfg.eta, "tanh steepness");

    auto* pp = app.add_subcommand("phase-plane", "classify, shoot and assemble the travelling wave");
    common(pp);
    pp->add_option("--c", cfg.c, "wave speed");
    pp->add_option("--eps", cfg.shoot_eps, "shooting offset");

    auto* sp = app.add_subcommand("spectrum", "essential, absolute and weighted spectra");
    common(sp);
    sp->add_option("--c", cfg.c, "wave speed");
    sp->add_option("--k-max", cfg.k_max);
    sp->add_option("--k-points", cfg.k_points);
    sp->add_option("--scan-nu", scan_nu, "weight scan start:stop:step");

    auto* lat = app.add_subcommand("lattice", "mean-field and stochastic lattice model");
    common(lat);
    grid(lat);
    lat->add_option("--mode", cfg.lattice_mode)->check(CLI::IsMember({"mean-field", "stochastic", "both"}));
    lat->add_option("--initial", cfg.lattice_initial)->check(CLI::IsMember({"heaviside", "uniform"}));
    lat->add_option("--u0", cfg.lattice_u0, "uniform initial occupancy");
    lat->add_option("--delta", cfg.delta);
    lat->add_option("--tau", cfg.tau);
    lat->add_option("--runs", cfg.runs);
    lat->add_option("--steps", cfg.lattice_steps);
    lat->add_option("--snapshot-every", cfg.snapshot_every, "steps between ensemble snapshots");
    auto prob = [&](const char* name, double LatticeParams::*field) {
        lat->add_option_function<double>(name, [&cfg, field](double v) {
            if (!cfg.lattice_explicit) cfg.lattice_explicit = LatticeParams{};
            (*cfg.lattice_explicit).*field = v;
        });
    };
    prob("--Pm-i", &LatticeParams::P_m_i);
    prob("--Pm-g", &LatticeParams::P_m_g);
    prob("--Pp-i", &LatticeParams::P_p_i);
    prob("--Pp-g", &LatticeParams::P_p_g);
    prob("--Pd-i", &LatticeParams::P_d_i);
    prob("--Pd-g", &LatticeParams::P_d_g);

    auto* scan = app.add_subcommand("speed-scan", "front speed against tanh steepness");
    common(scan);
    grid(scan);
    scan->add_option("--etas", cfg.etas, "comma-separated steepness values")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!scan_nu.empty()) cfg.scan_nu = parse_range(scan_nu);
        if (cfg.lattice_explicit) {
            cfg.lattice_explicit->delta = cfg.delta;
            cfg.lattice_explicit->tau = cfg.tau;
        }
        const json manifest = run_experiment(cfg);
        std::cout << manifest.at("results").dump(2) << "\n";
        std::cout << "manifest: " << (resolve_output_dir(cfg.out_dir) / "manifest.json").string() << "\n";
        return 0;
    } catch (const BlowUpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace wavekit::cli
