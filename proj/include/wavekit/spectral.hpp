#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "wavekit/model.hpp"
#include "wavekit/phase_plane.hpp"

namespace wavekit {

using cplx = std::complex<double>;
using Matrix2c = std::array<std::array<cplx, 2>, 2>;

enum class Side { PlusInfinity, MinusInfinity };

// First-order form of the eigenvalue problem linearised about u = 0 (+inf) or u = 1 (-inf).
struct AsymptoticMatrix {
    Side side = Side::PlusInfinity;
    double D_end = 0.0;   // D(0) or D(1)
    double Rp_end = 0.0;  // R'(0) or R'(1)
    double c = 0.0;
    double nu = 0.0;  // weight; the matrix is A(Lambda) + nu I

    Matrix2c at(cplx Lambda) const;
};

AsymptoticMatrix asymptotic_matrix(const Model& m, double c, Side side, double nu = 0.0);

// Roots of D mu^2 + c mu + R' - Lambda = 0, ordered (mu_+, mu_-); principal square root.
std::pair<cplx, cplx> spatial_eigenvalues(const Model& m, double c, cplx Lambda, Side side);

struct DispersionCurves {
    std::vector<double> k;
    std::vector<cplx> plus, minus;
    double nu = 0.0;
};

// Lambda(k) for which A(Lambda) + nu I has the eigenvalue i k.
DispersionCurves dispersion_curves(const Model& m, double c, const std::vector<double>& k, double nu = 0.0);
std::vector<double> symmetric_grid(double k_max, std::size_t n);

struct AbsoluteEndpoints {
    double K_plus = 0.0;
    double K_minus = 0.0;
};
AbsoluteEndpoints absolute_spectrum_endpoints(const Model& m, double c);

struct WeightedIntersections {
    double K_plus_nu = 0.0;
    double K_minus_nu = 0.0;
};
WeightedIntersections weighted_intersections(const Model& m, double c, double nu);

struct WeightRange {
    enum class Kind { Empty, Singleton, Open };
    Kind kind = Kind::Empty;
    double lo = 0.0, hi = 0.0;
    bool contains(double nu) const;
};
// Sub-level set {nu : D(0) nu^2 - c nu + R'(0) < 0}, closed singleton at the double root.
WeightRange admissible_weight_range(const Model& m, double c);

double ideal_weight(const Model& m, double c);

enum class Verdict { AbsolutelyUnstable, TransientlyStableWithWeight };

struct SpectrumReport {
    double c = 0.0;
    DispersionCurves dispersion;  // unweighted
    AbsoluteEndpoints K;
    double ideal_weight = 0.0;
    WeightedIntersections K_nu;  // at the ideal weight
    WeightRange weight_range;
    Verdict verdict = Verdict::AbsolutelyUnstable;
};

// K_plus within 1e-12 (relative) of zero counts as zero.
SpectrumReport spectrum_report(const Model& m, double c, const std::vector<double>& k_grid);

struct PolyMax {
    double value = 0.0;
    double argmax = 0.0;
};
// Maximum of 4 - 32u + 63u^2 - 36u^3 on [0, 1].
PolyMax poly_max();

// Applies to the desingularised, Liouville-transformed operator only.
struct PointSpectrumCertificate {
    std::vector<double> potential_samples;  // F(u) - c^2/4 along the profile
    double max_potential = 0.0;             // over the profile and a dense u-grid
    double polynomial_bound_max = 0.0;
    double analytic_bound = 0.0;  // (-c^2 + lambda D(0) polynomial_bound_max) / 4
    bool certified = false;
};

// An empty profile restricts the sampled potential to the dense u-grid.
PointSpectrumCertificate point_spectrum_certificate(const Model& m, double c, const WaveProfile& profile);

struct LinearisationSample {
    double z = 0.0;
    cplx B, C;  // q'' = B q + C q'
};
// Samples where |D(u)| < 1e-9 are omitted.
std::vector<LinearisationSample> linearisation_coefficients(const Model& m, const WaveProfile& profile, cplx Lambda);

const char* to_string(Verdict v);
const char* to_string(WeightRange::Kind k);
const char* to_string(Side s);

}  // namespace wavekit
