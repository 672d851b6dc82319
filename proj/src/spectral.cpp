#include "wavekit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavekit {

namespace {

std::pair<double, double> endpoint(const Model& m, Side side) {
    const double u = side == Side::PlusInfinity ? 0.0 : 1.0;
    return {m.D(u), m.R.derivative(u)};
}

double poly(double u) { return 4.0 - 32.0 * u + 63.0 * u * u - 36.0 * u * u * u; }

}  // namespace

Matrix2c AsymptoticMatrix::at(cplx Lambda) const {
    if (D_end == 0.0) throw std::domain_error("asymptotic matrix needs a nonzero end-state diffusivity");
    return {{{cplx(nu, 0.0), cplx(1.0, 0.0)}, {(Lambda - Rp_end) / D_end, cplx(-c / D_end + nu, 0.0)}}};
}

AsymptoticMatrix asymptotic_matrix(const Model& m, double c, Side side, double nu) {
    const auto [d, rp] = endpoint(m, side);
    return AsymptoticMatrix{side, d, rp, c, nu};
}

std::pair<cplx, cplx> spatial_eigenvalues(const Model& m, double c, cplx Lambda, Side side) {
    const auto [d, rp] = endpoint(m, side);
    if (d == 0.0) throw std::domain_error("spatial eigenvalues need a nonzero end-state diffusivity");
    const cplx root = std::sqrt(cplx(c * c - 4.0 * d * rp, 0.0) + 4.0 * d * Lambda);
    return {(-c + root) / (2.0 * d), (-c - root) / (2.0 * d)};
}

std::vector<double> symmetric_grid(double k_max, std::size_t n) {
    if (n < 2) throw std::invalid_argument("grid needs at least two points");
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = -k_max + 2.0 * k_max * static_cast<double>(i) / static_cast<double>(n - 1);
    return k;
}

DispersionCurves dispersion_curves(const Model& m, double c, const std::vector<double>& k, double nu) {
    DispersionCurves dc;
    dc.k = k;
    dc.nu = nu;
    const auto curve = [&](Side s, std::vector<cplx>& out) {
        const auto [d, rp] = endpoint(m, s);
        out.reserve(k.size());
        for (double kk : k) out.emplace_back(-d * kk * kk + d * nu * nu - c * nu + rp, (c - 2.0 * d * nu) * kk);
    };
    curve(Side::PlusInfinity, dc.plus);
    curve(Side::MinusInfinity, dc.minus);
    return dc;
}

AbsoluteEndpoints absolute_spectrum_endpoints(const Model& m, double c) {
    const auto [d0, r0] = endpoint(m, Side::PlusInfinity);
    const auto [d1, r1] = endpoint(m, Side::MinusInfinity);
    if (d0 == 0.0 || d1 == 0.0) throw std::domain_error("absolute spectrum needs nonzero end-state diffusivities");
    return {-c * c / (4.0 * d0) + r0, -c * c / (4.0 * d1) + r1};
}

WeightedIntersections weighted_intersections(const Model& m, double c, double nu) {
    const auto [d0, r0] = endpoint(m, Side::PlusInfinity);
    const auto [d1, r1] = endpoint(m, Side::MinusInfinity);
    return {d0 * nu * nu - c * nu + r0, d1 * nu * nu - c * nu + r1};
}

bool WeightRange::contains(double nu) const {
    switch (kind) {
        case Kind::Empty: return false;
        case Kind::Singleton: return nu == lo;
        case Kind::Open: return nu > lo && nu < hi;
    }
    return false;
}

WeightRange admissible_weight_range(const Model& m, double c) {
    const auto [d0, r0] = endpoint(m, Side::PlusInfinity);
    if (!(d0 > 0.0)) throw std::domain_error("weight range needs D(0) > 0");
    double disc = c * c - 4.0 * d0 * r0;
    if (std::abs(disc) <= 1e-12 * std::max(c * c, 4.0 * d0 * std::abs(r0))) disc = 0.0;
    WeightRange w;
    if (disc < 0.0) return w;
    const double s = std::sqrt(disc);
    w.lo = (c - s) / (2.0 * d0);
    w.hi = (c + s) / (2.0 * d0);
    w.kind = disc == 0.0 ? WeightRange::Kind::Singleton : WeightRange::Kind::Open;
    return w;
}

double ideal_weight(const Model& m, double c) {
    const double d0 = m.D(0.0);
    if (d0 == 0.0) throw std::domain_error("ideal weight needs D(0) != 0");
    return c / (2.0 * d0);
}

SpectrumReport spectrum_report(const Model& m, double c, const std::vector<double>& k_grid) {
    SpectrumReport r;
    r.c = c;
    r.dispersion = dispersion_curves(m, c, k_grid);
    r.K = absolute_spectrum_endpoints(m, c);
    r.ideal_weight = ideal_weight(m, c);
    r.K_nu = weighted_intersections(m, c, r.ideal_weight);
    r.weight_range = admissible_weight_range(m, c);
    const double scale = std::max(std::abs(m.R.derivative(0.0)), c * c / (4.0 * m.D(0.0)));
    r.verdict = r.K.K_plus > 1e-12 * scale ? Verdict::AbsolutelyUnstable : Verdict::TransientlyStableWithWeight;
    return r;
}

PolyMax poly_max() {
    // p'(u) = -32 + 126u - 108u^2
    std::vector<double> cand{0.0, 1.0};
    const double disc = 126.0 * 126.0 - 4.0 * 108.0 * 32.0;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        for (double u : {(126.0 - s) / 216.0, (126.0 + s) / 216.0})
            if (u > 0.0 && u < 1.0) cand.push_back(u);
    }
    PolyMax best{poly(cand[0]), cand[0]};
    for (double u : cand)
        if (poly(u) > best.value) best = {poly(u), u};
    return best;
}

PointSpectrumCertificate point_spectrum_certificate(const Model& m, double c, const WaveProfile& profile) {
    const double lam = m.R.lambda();
    PointSpectrumCertificate pc;
    const double shift = 0.25 * c * c;
    pc.max_potential = -std::numeric_limits<double>::infinity();
    for (double u : profile.u) {
        pc.potential_samples.push_back(m.F(u) - shift);
        pc.max_potential = std::max(pc.max_potential, pc.potential_samples.back());
    }
    constexpr int n = 100000;
    for (int k = 0; k <= n; ++k) pc.max_potential = std::max(pc.max_potential, m.F(static_cast<double>(k) / n) - shift);
    pc.polynomial_bound_max = poly_max().value;
    pc.analytic_bound = 0.25 * (-c * c + lam * m.D(0.0) * pc.polynomial_bound_max);
    pc.certified = pc.max_potential <= 1e-10 && pc.analytic_bound <= 1e-10;
    return pc;
}

std::vector<LinearisationSample> linearisation_coefficients(const Model& m, const WaveProfile& profile, cplx Lambda) {
    std::vector<LinearisationSample> out;
    const double c = profile.c;
    for (std::size_t i = 0; i < profile.z.size(); ++i) {
        const double u = profile.u[i], up = profile.dudz[i];
        const double d = m.D(u);
        if (std::abs(d) < 1e-9) continue;
        const double dp = m.D.derivative(u), dpp = m.D.second_derivative();
        // u'' from the travelling-wave equation (D u')' + c u' + R = 0
        const double upp = -(dp * up * up + c * up + m.R(u)) / d;
        LinearisationSample s;
        s.z = profile.z[i];
        s.B = -(dp * upp + dpp * up * up + m.R.derivative(u) - Lambda) / d;
        s.C = -(2.0 * dp * up + c) / d;
        out.push_back(s);
    }
    return out;
}

const char* to_string(Verdict v) {
    return v == Verdict::AbsolutelyUnstable ? "AbsolutelyUnstable" : "TransientlyStableWithWeight";
}

const char* to_string(WeightRange::Kind k) {
    switch (k) {
        case WeightRange::Kind::Empty: return "Empty";
        case WeightRange::Kind::Singleton: return "Singleton";
        case WeightRange::Kind::Open: return "Open";
    }
    return "?";
}

const char* to_string(Side s) { return s == Side::PlusInfinity ? "PlusInfinity" : "MinusInfinity"; }

}  // namespace wavekit
