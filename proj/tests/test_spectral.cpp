#include <gtest/gtest.h>

#include <cmath>

#include "wavekit/rng.hpp"
#include "wavekit/spectral.hpp"

using namespace wavekit;

namespace {

constexpr double kDi = 0.25, kDg = 0.05, kLam = 0.75;
const double kCstar = 2.0 * std::sqrt(kLam * kDi);

Model baseline() { return Model::from_params(ModelParams::logistic(kDi, kDg, kLam)); }

Model random_model(Xoshiro256& rng) {
    const double Di = 0.05 + rng.uniform();
    const double Dg = 0.01 * Di + rng.uniform() * 0.24 * Di;
    return Model::from_params(ModelParams::logistic(Di, Dg, 0.1 + 2.0 * rng.uniform()));
}

cplx det2(const Matrix2c& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

}  // namespace

TEST(Asymptotic, EigenvaluesSolveCharacteristicPolynomial) {
    const Model m = baseline();
    for (Side s : {Side::PlusInfinity, Side::MinusInfinity}) {
        const cplx L(0.3, -0.7);
        const auto A = asymptotic_matrix(m, 1.1, s).at(L);
        const auto [mp, mm] = spatial_eigenvalues(m, 1.1, L, s);
        for (cplx mu : {mp, mm}) {
            Matrix2c B = A;
            B[0][0] -= mu;
            B[1][1] -= mu;
            EXPECT_LT(std::abs(det2(B)), 1e-12) << to_string(s);
        }
    }
}

TEST(Asymptotic, WeightShiftsTheDiagonal) {
    const auto a = asymptotic_matrix(baseline(), 1.0, Side::PlusInfinity).at({0.2, 0.1});
    const auto b = asymptotic_matrix(baseline(), 1.0, Side::PlusInfinity, 0.7).at({0.2, 0.1});
    EXPECT_EQ(b[0][0] - a[0][0], cplx(0.7));
    EXPECT_NEAR(std::abs(b[1][1] - a[1][1] - 0.7), 0.0, 1e-15);
    EXPECT_EQ(a[0][1], b[0][1]);
    EXPECT_EQ(a[1][0], b[1][0]);
    EXPECT_EQ(a[0][1], cplx(1.0));
    EXPECT_EQ(a[1][0], cplx((0.2 - kLam) / kDi, 0.1 / kDi));
}

TEST(Asymptotic, DoubleRootAtMinimumSpeed) {
    const auto [a, b] = spatial_eigenvalues(baseline(), kCstar, 0.0, Side::PlusInfinity);
    EXPECT_NEAR(a.real(), -kCstar / (2 * kDi), 1e-7);
    EXPECT_NEAR(b.real(), -kCstar / (2 * kDi), 1e-7);
    EXPECT_NEAR(-kCstar / (2 * kDi), -1.732, 1e-3);
}

TEST(Asymptotic, SaddleAtMinusInfinity) {
    const auto [a, b] = spatial_eigenvalues(baseline(), 0.866, 0.0, Side::MinusInfinity);
    EXPECT_EQ(a.imag(), 0.0);
    EXPECT_GT(a.real(), 0.0);
    EXPECT_LT(b.real(), 0.0);
}

TEST(Asymptotic, BranchPointsAtAbsoluteEndpoints) {
    Xoshiro256 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Model m = random_model(rng);
        const double c = 0.05 + 2.0 * rng.uniform();
        const AbsoluteEndpoints K = absolute_spectrum_endpoints(m, c);
        const auto [p1, p2] = spatial_eigenvalues(m, c, K.K_plus, Side::PlusInfinity);
        const auto [m1, m2] = spatial_eigenvalues(m, c, K.K_minus, Side::MinusInfinity);
        ASSERT_LT(std::abs(p1 - p2), 1e-6 * std::abs(p1)) << i;
        ASSERT_LT(std::abs(m1 - m2), 1e-6 * std::abs(m1)) << i;
        ASSERT_LT(K.K_minus, K.K_plus);
    }
}

TEST(Dispersion, EndpointsAndShape) {
    const auto k = symmetric_grid(5.0, 201);
    const DispersionCurves d = dispersion_curves(baseline(), 0.866, k);
    ASSERT_EQ(d.plus.size(), 201u);
    EXPECT_EQ(k[100], 0.0);
    EXPECT_EQ(d.plus[100], cplx(kLam));
    EXPECT_EQ(d.minus[100], cplx(-kLam));
    for (std::size_t i = 101; i < k.size(); ++i) {
        EXPECT_LT(d.plus[i].real(), d.plus[i - 1].real());
        EXPECT_LT(d.minus[i].real(), d.minus[i - 1].real());
        EXPECT_NEAR(d.plus[i].real(), d.plus[200 - i].real(), 1e-14);
    }
    const double kc = std::sqrt(kLam / kDi);
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_EQ(d.plus[i].real() > 0.0, std::abs(k[i]) < kc) << k[i];
}

TEST(Dispersion, CurvesLieOnTheSpectrum) {
    // det(A(Lambda(k)) + nu I - i k I) = 0
    const Model m = baseline();
    for (double nu : {0.0, 0.8, 2.0}) {
        const DispersionCurves d = dispersion_curves(m, 1.2, symmetric_grid(3.0, 31), nu);
        for (std::size_t i = 0; i < d.k.size(); ++i) {
            for (Side s : {Side::PlusInfinity, Side::MinusInfinity}) {
                Matrix2c A = asymptotic_matrix(m, 1.2, s, nu).at(s == Side::PlusInfinity ? d.plus[i] : d.minus[i]);
                A[0][0] -= cplx(0.0, d.k[i]);
                A[1][1] -= cplx(0.0, d.k[i]);
                ASSERT_LT(std::abs(det2(A)), 1e-12);
            }
        }
    }
}

TEST(Absolute, Endpoints) {
    EXPECT_NEAR(absolute_spectrum_endpoints(baseline(), kCstar).K_plus, 0.0, 1e-15);
    EXPECT_NEAR(absolute_spectrum_endpoints(baseline(), kCstar).K_minus, -4.5, 1e-12);
    EXPECT_NEAR(absolute_spectrum_endpoints(baseline(), 0.4).K_plus, 0.59, 1e-12);
}

TEST(Absolute, SignChangeLocatedByBisection) {
    double lo = 0.1, hi = 2.0;
    const Model m = baseline();
    ASSERT_GT(absolute_spectrum_endpoints(m, lo).K_plus, 0.0);
    ASSERT_LT(absolute_spectrum_endpoints(m, hi).K_plus, 0.0);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (absolute_spectrum_endpoints(m, mid).K_plus > 0.0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(0.5 * (lo + hi), min_wave_speed(m), 1e-10);
}

TEST(Weighted, ReducesAndHitsVertex) {
    const Model m = baseline();
    const auto w0 = weighted_intersections(m, 0.866, 0.0);
    EXPECT_EQ(w0.K_plus_nu, kLam);
    EXPECT_EQ(w0.K_minus_nu, -kLam);
    const auto d = dispersion_curves(m, 0.866, {0.0});
    EXPECT_EQ(w0.K_plus_nu, d.plus[0].real());
    EXPECT_EQ(w0.K_minus_nu, d.minus[0].real());
    EXPECT_NEAR(weighted_intersections(m, 1.0, 1.0).K_plus_nu, 0.0, 1e-15);

    Xoshiro256 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const Model r = random_model(rng);
        const double c = 0.05 + 2.0 * rng.uniform();
        const double nus = ideal_weight(r, c);
        const double vertex = weighted_intersections(r, c, nus).K_plus_nu;
        ASSERT_NEAR(vertex, absolute_spectrum_endpoints(r, c).K_plus, 1e-12);
        for (double h : {1e-3, -1e-3, 0.5, -0.5}) ASSERT_GT(weighted_intersections(r, c, nus + h).K_plus_nu, vertex);
    }
}

TEST(WeightRangeTest, EmptySingletonOpen) {
    const Model m = baseline();
    EXPECT_EQ(admissible_weight_range(m, 0.4).kind, WeightRange::Kind::Empty);
    const WeightRange s = admissible_weight_range(m, kCstar);
    EXPECT_EQ(s.kind, WeightRange::Kind::Singleton);
    EXPECT_NEAR(s.lo, kCstar / (2 * kDi), 1e-12);
    EXPECT_NEAR(weighted_intersections(m, kCstar, s.lo).K_plus_nu, 0.0, 1e-15);
    const WeightRange o = admissible_weight_range(m, 1.2);
    EXPECT_EQ(o.kind, WeightRange::Kind::Open);
    EXPECT_TRUE(o.contains(2.4));
    EXPECT_FALSE(o.contains(o.lo));
    EXPECT_NEAR(o.lo, (1.2 - std::sqrt(0.69)) / 0.5, 1e-12);
    EXPECT_NEAR(o.hi, (1.2 + std::sqrt(0.69)) / 0.5, 1e-12);
    for (double nu : {o.lo, o.hi}) EXPECT_NEAR(weighted_intersections(m, 1.2, nu).K_plus_nu, 0.0, 1e-12);
}

TEST(WeightRangeTest, EmptyExactlyBelowMinimumSpeed) {
    const Model m = baseline();
    for (int i = 0; i < 100; ++i) {
        const double c = 0.3 + 1.2 * i / 99.0;
        if (std::abs(c - kCstar) < 1e-9) continue;
        EXPECT_EQ(admissible_weight_range(m, c).kind == WeightRange::Kind::Empty, c < kCstar) << c;
    }
}

TEST(Report, Verdicts) {
    const auto k = symmetric_grid(4.0, 81);
    EXPECT_EQ(spectrum_report(baseline(), kCstar, k).verdict, Verdict::TransientlyStableWithWeight);
    EXPECT_EQ(spectrum_report(baseline(), 0.4, k).verdict, Verdict::AbsolutelyUnstable);
    const SpectrumReport r = spectrum_report(baseline(), 1.2, k);
    EXPECT_EQ(r.verdict, Verdict::TransientlyStableWithWeight);
    EXPECT_NEAR(r.ideal_weight, 2.4, 1e-15);
    EXPECT_NEAR(r.K_nu.K_plus_nu, r.K.K_plus, 1e-12);
    for (int i = 0; i < 100; ++i) {
        const double c = 0.3 + 1.2 * i / 99.0;
        EXPECT_EQ(spectrum_report(baseline(), c, k).verdict == Verdict::AbsolutelyUnstable, c < kCstar) << c;
    }
}

TEST(PointSpectrum, PolynomialMaximumAgainstGrid) {
    const PolyMax p = poly_max();
    double best = -1e9, arg = -1.0;
    for (int k = 0; k <= 1000000; ++k) {
        const double u = k / 1e6;
        const double v = 4 - 32 * u + 63 * u * u - 36 * u * u * u;
        if (v > best) {
            best = v;
            arg = u;
        }
    }
    EXPECT_NEAR(p.value, 4.0, 1e-15);
    EXPECT_EQ(p.argmax, 0.0);
    EXPECT_NEAR(p.value, best, 1e-9);
    EXPECT_EQ(arg, 0.0);
}

TEST(PointSpectrum, SupremumOfFluxDerivativeAtOrigin) {
    // F <= lambda D(0) on [0,1], attained at u = 0, although the cubic bound is not pointwise.
    Xoshiro256 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Model m = random_model(rng);
        const double top = m.R.lambda() * m.D(0.0);
        for (int k = 0; k <= 2000; ++k) ASSERT_LE(m.F(k / 2000.0), top * (1 + 1e-14)) << i;
    }
}

TEST(PointSpectrum, CertifiedExactlyFromMinimumSpeed) {
    const Model m = baseline();
    const PointSpectrumCertificate at = point_spectrum_certificate(m, kCstar, assemble_wave(m, kCstar));
    EXPECT_TRUE(at.certified);
    EXPECT_NEAR(at.analytic_bound, 0.0, 1e-15);
    EXPECT_FALSE(at.potential_samples.empty());

    const PointSpectrumCertificate slow = point_spectrum_certificate(m, 0.5, assemble_wave(m, 0.5));
    EXPECT_FALSE(slow.certified);
    EXPECT_NEAR(slow.analytic_bound, 0.125, 1e-15);

    for (int i = 0; i < 100; ++i) {
        const double c = kCstar * (0.6 + 0.8 * i / 99.0);
        const auto pc = point_spectrum_certificate(m, c, assemble_wave(m, c));
        EXPECT_EQ(pc.certified, c >= kCstar) << c;
        if (pc.certified) EXPECT_LE(pc.max_potential, 1e-10);
    }
}

TEST(Linearisation, FarFieldMatchesAsymptoticMatrix) {
    const Model m = baseline();
    const WaveProfile w = assemble_wave(m, 1.2);
    const cplx L(0.1, 0.2);
    const auto s = linearisation_coefficients(m, w, L);
    ASSERT_FALSE(s.empty());
    const auto Ap = asymptotic_matrix(m, 1.2, Side::PlusInfinity).at(L);
    const auto Am = asymptotic_matrix(m, 1.2, Side::MinusInfinity).at(L);
    EXPECT_LT(std::abs(s.back().B - Ap[1][0]), 1e-4);
    EXPECT_LT(std::abs(s.back().C - Ap[1][1]), 1e-4);
    EXPECT_LT(std::abs(s.front().B - Am[1][0]), 1e-3);
    EXPECT_LT(std::abs(s.front().C - Am[1][1]), 1e-3);
}
