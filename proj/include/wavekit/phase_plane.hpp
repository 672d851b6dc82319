#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavekit/model.hpp"

namespace wavekit {

struct PhasePoint {
    double u = 0.0;
    double p = 0.0;
};

enum class EquilibriumClass { Saddle, StableNode, StableSpiral, Other };

struct Equilibrium {
    std::string name;  // "one", "alpha", "zero", "beta"
    PhasePoint location;
    std::complex<double> eig_plus, eig_minus;
    // Eigenvectors (1, eig) normalised to unit first component.
    std::array<std::complex<double>, 2> vec_plus, vec_minus;
    EquilibriumClass cls = EquilibriumClass::Other;
};

enum class SegmentId { OneToBeta, AlphaToBeta, AlphaToZero };

struct PhaseOrbit {
    SegmentId id = SegmentId::OneToBeta;
    PhasePoint origin, target;
    std::vector<double> xi, u, p, z;  // z integrates dz = D(u) dxi from 0
    bool monotone_u = false;
    bool u_nonnegative = false;
    bool entered_spiral = false;
    double endpoint_error = 0.0;  // distance of the last sample from the target
    std::size_t steps = 0;
};

enum class Regime { SmoothMonotone, OscillatoryTail, ShockRegime, NoConnection };

struct WaveProfile {
    std::vector<double> z, u, dudz;
    double c = 0.0;
    Regime regime = Regime::NoConnection;
    std::vector<PhaseOrbit> segments;  // empty unless all three were shot
    std::vector<std::string> diagnostics;

    // Cubic Hermite interpolation using the stored slopes; clamps to end values.
    double value_at(double zq) const;
};

struct RegionCertificate {
    std::string region_id;  // "R1", "R2", "R3"
    double mu = 0.0;
    double margin = 0.0;  // minimum slack over the region
    double argmin = 0.0;
    bool valid() const { return margin >= 0.0; }
};

struct SlopeReport {
    // Real part of lambda_+ minus the nullcline slope at each equilibrium.
    double at_one = 0.0, at_alpha = 0.0, at_zero = 0.0, at_beta = 0.0;
    bool all_negative() const { return at_one < 0 && at_alpha < 0 && at_zero < 0 && at_beta < 0; }
};

struct ShootOptions {
    double eps = 1e-6;
    double rtol = 1e-10;
    double atol = 1e-13;
    double max_step = 0.05;
    double target_radius = 1e-6;
    std::size_t max_steps = 1000000;
};

class ShootingError : public std::runtime_error {
public:
    enum class Kind { Divergence, BudgetExceeded, MissingEquilibrium };
    ShootingError(Kind k, PhasePoint at, const std::string& what) : std::runtime_error(what), kind(k), exit_point(at) {}
    Kind kind;
    PhasePoint exit_point;
};

// (du/dxi, dp/dxi) = (p, -c p - D(u) R(u)), with D(u) dxi = dz.
std::array<double, 2> vector_field_desingularised(const Model& m, double c, PhasePoint x);
// (du/dz, dp/dz) of the original system; singular where D vanishes.
std::array<double, 2> vector_field_singular(const Model& m, double c, PhasePoint x);

double nullcline_p(const Model& m, double c, double u);
// chi(u) = -F(u) / c
double nullcline_slope(const Model& m, double c, double u);

// Order: (1,0), (alpha,0), (0,0), (beta,0). Requires a sign-changing profile.
std::array<Equilibrium, 4> classify_equilibria(const Model& m, double c);

std::array<RegionCertificate, 3> region_certificates(const Model& m, double c);

PhaseOrbit shoot_segment(const Model& m, double c, SegmentId id, const ShootOptions& opt = {});

WaveProfile assemble_wave(const Model& m, double c, const ShootOptions& opt = {});

SlopeReport slope_comparisons(const Model& m, double c);

const char* to_string(EquilibriumClass c);
const char* to_string(SegmentId s);
const char* to_string(Regime r);

}  // namespace wavekit
