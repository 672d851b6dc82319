#include "wavekit/phase_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace wavekit {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 3>;  // u, p, z

struct EigenPair {
    std::complex<double> plus, minus;
    EquilibriumClass cls;
};

// Roots of mu^2 + c mu + F = 0 with a relative tolerance on the discriminant.
EigenPair linearise(double c, double F) {
    double disc = c * c - 4.0 * F;
    const double tol = 1e-12 * std::max(c * c, 4.0 * std::abs(F));
    EigenPair e{};
    if (std::abs(disc) <= tol) disc = 0.0;
    const std::complex<double> root = std::sqrt(std::complex<double>(disc, 0.0));
    e.plus = 0.5 * (-c + root);
    e.minus = 0.5 * (-c - root);
    if (F < 0.0)
        e.cls = EquilibriumClass::Saddle;
    else if (F == 0.0 || c <= 0.0)
        e.cls = EquilibriumClass::Other;
    else
        e.cls = disc >= 0.0 ? EquilibriumClass::StableNode : EquilibriumClass::StableSpiral;
    return e;
}

RootPair require_roots(const Model& m) {
    const RootPair r = m.D.roots();
    if (r.status != RootStatus::TwoRoots)
        throw std::invalid_argument("phase-plane analysis needs a diffusivity with two roots in [0,1]");
    return r;
}

double max_nullcline(const Model& m, double c) {
    double best = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double u = k / 1000.0;
        best = std::max(best, std::abs(m.D(u) * m.R(u)));
    }
    return best / c;
}

// c^2/4 - D(u) R(u) / u with logistic kinetics.
double slack_r1(const Model& m, double c, double u) { return 0.25 * c * c - m.D(u) * m.R.lambda() * (1.0 - u); }

// c^2/4 - D(u) R(u) / (u - beta)
double slack_r23(const Model& m, double c, double alpha, double u) {
    return 0.25 * c * c - m.D.c2() * (u - alpha) * m.R(u);
}

// Real roots of a u^2 + b u + k inside (lo, hi).
void quadratic_roots_in(double a, double b, double k, double lo, double hi, std::vector<double>& out) {
    if (a == 0.0) {
        if (b != 0.0) {
            const double u = -k / b;
            if (u > lo && u < hi) out.push_back(u);
        }
        return;
    }
    const double disc = b * b - 4.0 * a * k;
    if (disc < 0.0) return;
    const double s = std::sqrt(disc);
    for (double u : {(-b + s) / (2.0 * a), (-b - s) / (2.0 * a)})
        if (u > lo && u < hi) out.push_back(u);
}

template <class Slack>
RegionCertificate certify(const std::string& id, double mu, double lo, double hi, std::vector<double> extra,
                          Slack slack) {
    RegionCertificate rc;
    rc.region_id = id;
    rc.mu = mu;
    rc.margin = std::numeric_limits<double>::infinity();
    constexpr int n = 10000;
    for (int k = 0; k <= n; ++k) extra.push_back(lo + (hi - lo) * k / n);
    for (double u : extra) {
        const double s = slack(u);
        if (s < rc.margin) {
            rc.margin = s;
            rc.argmin = u;
        }
    }
    return rc;
}

std::size_t sign_changes(const std::vector<double>& v, double about) {
    std::size_t n = 0;
    int last = 0;
    for (double x : v) {
        const int s = x > about ? 1 : (x < about ? -1 : 0);
        if (s != 0) {
            if (last != 0 && s != last) ++n;
            last = s;
        }
    }
    return n;
}

// Cubic Hermite interpolant on [z0, z1].
double hermite(double z0, double z1, double u0, double u1, double d0, double d1, double z) {
    const double h = z1 - z0;
    const double t = (z - z0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * u1 + (t3 - t2) * h * d1;
}

}  // namespace

std::array<double, 2> vector_field_desingularised(const Model& m, double c, PhasePoint x) {
    return {x.p, -c * x.p - m.D(x.u) * m.R(x.u)};
}

std::array<double, 2> vector_field_singular(const Model& m, double c, PhasePoint x) {
    const double d = m.D(x.u);
    return {x.p / d, (-c * x.p - d * m.R(x.u)) / d};
}

double nullcline_p(const Model& m, double c, double u) {
    if (!(c > 0.0)) throw std::invalid_argument("nullcline needs c > 0");
    return -m.D(u) * m.R(u) / c;
}

double nullcline_slope(const Model& m, double c, double u) {
    if (!(c > 0.0)) throw std::invalid_argument("nullcline needs c > 0");
    return -m.F(u) / c;
}

std::array<Equilibrium, 4> classify_equilibria(const Model& m, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("classification needs c > 0");
    const RootPair r = require_roots(m);
    const std::array<std::pair<const char*, double>, 4> where{
        {{"one", 1.0}, {"alpha", r.alpha}, {"zero", 0.0}, {"beta", r.beta}}};
    std::array<Equilibrium, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        const EigenPair e = linearise(c, m.F(where[i].second));
        Equilibrium& q = out[i];
        q.name = where[i].first;
        q.location = {where[i].second, 0.0};
        q.eig_plus = e.plus;
        q.eig_minus = e.minus;
        q.vec_plus = {1.0, e.plus};
        q.vec_minus = {1.0, e.minus};
        q.cls = e.cls;
    }
    return out;
}

std::array<RegionCertificate, 3> region_certificates(const Model& m, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("certificates need c > 0");
    const RootPair r = require_roots(m);
    (void)m.R.lambda();  // logistic kinetics required
    const double mu = -0.5 * c;

    // d/du [D(u)(1-u)] = (c1 - c0) + 2(c2 - c1) u - 3 c2 u^2
    std::vector<double> e1;
    quadratic_roots_in(-3.0 * m.D.c2(), 2.0 * (m.D.c2() - m.D.c1()), m.D.c1() - m.D.c0(), 0.0, r.alpha, e1);
    // d/du [(u - alpha) u (1 - u)] = -3u^2 + 2(1 + alpha) u - alpha
    std::vector<double> e23;
    quadratic_roots_in(-3.0, 2.0 * (1.0 + r.alpha), -r.alpha, 0.0, 1.0, e23);
    std::vector<double> e2, e3;
    for (double u : e23) (u > r.alpha && u < r.beta ? e2 : e3).push_back(u);
    std::erase_if(e3, [&](double u) { return !(u > r.beta && u < 1.0); });

    return {certify("R1", mu, 0.0, r.alpha, e1, [&](double u) { return slack_r1(m, c, u); }),
            certify("R2", mu, r.alpha, r.beta, e2, [&](double u) { return slack_r23(m, c, r.alpha, u); }),
            certify("R3", mu, r.beta, 1.0, e3, [&](double u) { return slack_r23(m, c, r.alpha, u); })};
}

SlopeReport slope_comparisons(const Model& m, double c) {
    const auto eq = classify_equilibria(m, c);
    auto diff = [&](const Equilibrium& e) { return e.eig_plus.real() - nullcline_slope(m, c, e.location.u); };
    SlopeReport s;
    s.at_one = diff(eq[0]);
    s.at_alpha = diff(eq[1]);
    s.at_zero = diff(eq[2]);
    s.at_beta = diff(eq[3]);
    return s;
}

PhaseOrbit shoot_segment(const Model& m, double c, SegmentId id, const ShootOptions& opt) {
    const auto eq = classify_equilibria(m, c);
    const Equilibrium& from = id == SegmentId::OneToBeta ? eq[0] : eq[1];
    const Equilibrium& to = id == SegmentId::AlphaToZero ? eq[2] : eq[3];
    if (from.cls != EquilibriumClass::Saddle)
        throw ShootingError(ShootingError::Kind::MissingEquilibrium, from.location,
                            std::string("origin equilibrium '") + from.name + "' is not a saddle");

    const double mu = from.eig_plus.real();
    const double dir = to.location.u < from.location.u ? -1.0 : 1.0;
    const double norm = std::hypot(1.0, mu);

    PhaseOrbit o;
    o.id = id;
    o.origin = from.location;
    o.target = to.location;

    State x{from.location.u + dir * opt.eps / norm, dir * opt.eps * mu / norm, 0.0};
    double xi = 0.0;
    double h = std::min(1e-3, opt.max_step);
    auto record = [&] {
        o.xi.push_back(xi);
        o.u.push_back(x[0]);
        o.p.push_back(x[1]);
        o.z.push_back(x[2]);
    };
    record();

    const double pbox = 10.0 * max_nullcline(m, c);
    auto sys = [&](const State& s, State& ds, double) {
        ds[0] = s[1];
        ds[1] = -c * s[1] - m.D(s[0]) * m.R(s[0]);
        ds[2] = m.D(s[0]);
    };
    auto stepper = ode::make_controlled(opt.atol, opt.rtol, ode::runge_kutta_dopri5<State>());

    auto dist = [&] { return std::hypot(x[0] - to.location.u, x[1] - to.location.p); };
    while (dist() >= opt.target_radius) {
        if (o.steps >= opt.max_steps) {
            std::ostringstream os;
            os << "step budget of " << opt.max_steps << " exhausted at xi=" << xi;
            throw ShootingError(ShootingError::Kind::BudgetExceeded, {x[0], x[1]}, os.str());
        }
        h = std::min(h, opt.max_step);
        const auto res = stepper.try_step(sys, x, xi, h);
        if (res == ode::fail) {
            if (h < 1e-14) throw ShootingError(ShootingError::Kind::Divergence, {x[0], x[1]}, "step size underflow");
            continue;
        }
        ++o.steps;
        record();
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || x[0] < -0.5 || x[0] > 1.5 || std::abs(x[1]) > pbox) {
            std::ostringstream os;
            os.precision(17);
            os << "orbit left the bounding box at (u,p)=(" << x[0] << "," << x[1] << ")";
            throw ShootingError(ShootingError::Kind::Divergence, {x[0], x[1]}, os.str());
        }
    }
    o.endpoint_error = dist();

    o.monotone_u = true;
    for (std::size_t i = 1; i < o.u.size(); ++i)
        if (dir * (o.u[i] - o.u[i - 1]) < 0.0) o.monotone_u = false;
    o.u_nonnegative = *std::min_element(o.u.begin(), o.u.end()) >= 0.0;
    o.entered_spiral = sign_changes(o.u, to.location.u) >= 2;
    return o;
}

double WaveProfile::value_at(double zq) const {
    if (z.empty()) throw std::logic_error("empty wave profile");
    if (zq <= z.front()) return u.front();
    if (zq >= z.back()) return u.back();
    const auto it = std::upper_bound(z.begin(), z.end(), zq);
    const auto i = static_cast<std::size_t>(it - z.begin()) - 1;
    return hermite(z[i], z[i + 1], u[i], u[i + 1], dudz[i], dudz[i + 1], zq);
}

WaveProfile assemble_wave(const Model& m, double c, const ShootOptions& opt) {
    const auto eq = classify_equilibria(m, c);
    WaveProfile w;
    w.c = c;
    const bool zero_spiral = eq[2].cls == EquilibriumClass::StableSpiral;
    const bool beta_spiral = eq[3].cls == EquilibriumClass::StableSpiral;
    if (beta_spiral) {
        w.regime = zero_spiral ? Regime::NoConnection : Regime::ShockRegime;
        w.diagnostics.push_back(zero_spiral ? "(beta,0) and (0,0) are both spirals; no smooth connection"
                                            : "(beta,0) is a spiral; only shock-fronted waves are possible");
        return w;
    }

    PhaseOrbit s1 = shoot_segment(m, c, SegmentId::OneToBeta, opt);
    PhaseOrbit s2 = shoot_segment(m, c, SegmentId::AlphaToBeta, opt);
    PhaseOrbit s3 = shoot_segment(m, c, SegmentId::AlphaToZero, opt);

    const double alpha = eq[1].location.u, beta = eq[3].location.u;
    // du/dz at the holes: p ~ lambda_+ (u - u_hole) and D ~ D'(u_hole)(u - u_hole).
    const double slope_alpha = eq[1].eig_plus.real() / m.D.derivative(alpha);
    const double slope_beta = eq[3].eig_plus.real() / m.D.derivative(beta);

    // z of each hole extrapolated linearly from the nearest sample on each side.
    const double z2_beta = s2.z.back() + (beta - s2.u.back()) / slope_beta;
    const double z1_beta = s1.z.back() + (beta - s1.u.back()) / slope_beta;
    const double z2_alpha = s2.z.front() + (alpha - s2.u.front()) / slope_alpha;
    const double z3_alpha = s3.z.front() + (alpha - s3.u.front()) / slope_alpha;
    const double shift1 = z2_beta - z1_beta, shift3 = z2_alpha - z3_alpha;

    auto push = [&](double z, double u, double d) {
        if (!w.z.empty() && !(z > w.z.back())) return;
        w.z.push_back(z);
        w.u.push_back(u);
        w.dudz.push_back(d);
    };
    for (std::size_t i = 0; i < s1.u.size(); ++i) push(s1.z[i] + shift1, s1.u[i], s1.p[i] / m.D(s1.u[i]));
    push(z2_beta, beta, slope_beta);
    for (std::size_t i = s2.u.size(); i-- > 0;) push(s2.z[i], s2.u[i], s2.p[i] / m.D(s2.u[i]));
    push(z2_alpha, alpha, slope_alpha);
    for (std::size_t i = 0; i < s3.u.size(); ++i) push(s3.z[i] + shift3, s3.u[i], s3.p[i] / m.D(s3.u[i]));

    // Normalise so that u(0) = 1/2, solving on the Hermite interpolant.
    std::size_t k = 0;
    while (k + 1 < w.u.size() && !(w.u[k] >= 0.5 && w.u[k + 1] < 0.5)) ++k;
    if (k + 1 < w.u.size()) {
        double lo = w.z[k], hi = w.z[k + 1];
        for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (hermite(w.z[k], w.z[k + 1], w.u[k], w.u[k + 1], w.dudz[k], w.dudz[k + 1], mid) >= 0.5 ? lo : hi) = mid;
        }
        const double z0 = 0.5 * (lo + hi);
        for (double& z : w.z) z -= z0;
    } else {
        w.diagnostics.push_back("profile does not cross u = 1/2; z left unnormalised");
    }

    const double umin = *std::min_element(w.u.begin(), w.u.end());
    const double dmax = *std::max_element(w.dudz.begin(), w.dudz.end());
    if (umin < 0.0) {
        w.regime = Regime::OscillatoryTail;
        w.diagnostics.push_back("profile oscillates about u = 0 in its leading edge");
    } else {
        w.regime = Regime::SmoothMonotone;
        if (zero_spiral)
            w.diagnostics.push_back("(0,0) is a weak spiral; the undershoot lies below the shooting resolution");
        if (dmax > 1e-10) w.diagnostics.push_back("positive du/dz samples present");
    }
    w.segments = {std::move(s1), std::move(s2), std::move(s3)};
    return w;
}

const char* to_string(EquilibriumClass c) {
    switch (c) {
        case EquilibriumClass::Saddle: return "Saddle";
        case EquilibriumClass::StableNode: return "StableNode";
        case EquilibriumClass::StableSpiral: return "StableSpiral";
        case EquilibriumClass::Other: return "Other";
    }
    return "?";
}

const char* to_string(SegmentId s) {
    switch (s) {
        case SegmentId::OneToBeta: return "OneToBeta";
        case SegmentId::AlphaToBeta: return "AlphaToBeta";
        case SegmentId::AlphaToZero: return "AlphaToZero";
    }
    return "?";
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::SmoothMonotone: return "SmoothMonotone";
        case Regime::OscillatoryTail: return "OscillatoryTail";
        case Regime::ShockRegime: return "ShockRegime";
        case Regime::NoConnection: return "NoConnection";
    }
    return "?";
}

}  // namespace wavekit
