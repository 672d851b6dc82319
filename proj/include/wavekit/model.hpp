#pragma once

#include <optional>
#include <string>

namespace wavekit {

// Continuum parameters of the isolated/grouped agent model.
struct ModelParams {
    double D_i = 0.25;
    double D_g = 0.05;
    double lambda_i = 0.75;
    double lambda_g = 0.75;
    double K_i = 0.0;
    double K_g = 0.0;

    static ModelParams logistic(double D_i, double D_g, double lambda);

    // Throws std::invalid_argument on negative fields or D_i <= 0.
    void validate() const;
    // Equal proliferation rates and no death: kinetics collapse to lambda u (1 - u).
    bool logistic_reduction() const;

    bool operator==(const ModelParams&) const = default;
};

enum class SignClass { PositiveOnUnit, SignChangingTwice, Degenerate, Indefinite };

enum class RootStatus { TwoRoots, NoSignChange, Degenerate };

struct RootPair {
    RootStatus status = RootStatus::NoSignChange;
    double alpha = 0.0;  // smaller root (double root location when Degenerate)
    double beta = 0.0;
};

// Quadratic diffusivity c0 + c1 u + c2 u^2.
class Diffusivity {
public:
    enum class Kind { AdhesionQuadratic, GeneralQuadratic };

    // D_i (1 - 4u + 3u^2) + D_g (4u - 3u^2)
    static Diffusivity adhesion(double D_i, double D_g);
    // a (u - r1)(u - r2), a != 0
    static Diffusivity general(double a, double r1, double r2);

    double operator()(double u) const { return c0_ + u * (c1_ + u * c2_); }
    double derivative(double u) const { return c1_ + 2.0 * c2_ * u; }
    double second_derivative() const { return 2.0 * c2_; }

    Kind kind() const { return kind_; }
    double c0() const { return c0_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    // Constructor arguments: (D_i, D_g) or (a, r1, r2).
    double arg(int k) const { return args_[k]; }

    RootPair roots() const;
    SignClass sign_class() const;
    double max_abs_on_unit() const;
    std::string describe() const;

private:
    Diffusivity(Kind kind, double c0, double c1, double c2, double a0, double a1, double a2);
    Kind kind_;
    double c0_, c1_, c2_;
    double args_[3];
};

class Kinetics {
public:
    static Kinetics logistic(double lambda);
    // lambda_g u(1-u) + (lambda_i - lambda_g - K_i + K_g) u (1-u)^2 - K_g u
    static Kinetics general(double lambda_i, double lambda_g, double K_i, double K_g);
    static Kinetics from_params(const ModelParams& p);

    double operator()(double u) const;
    double derivative(double u) const;

    bool is_logistic() const;
    // Common proliferation rate; throws std::logic_error unless is_logistic().
    double lambda() const;

    double lambda_i() const { return li_; }
    double lambda_g() const { return lg_; }
    double K_i() const { return ki_; }
    double K_g() const { return kg_; }

private:
    Kinetics(double li, double lg, double ki, double kg) : li_(li), lg_(lg), ki_(ki), kg_(kg) {}
    double li_, lg_, ki_, kg_;
};

// A diffusivity paired with kinetics: the object every analysis consumes.
struct Model {
    Diffusivity D;
    Kinetics R;

    static Model from_params(const ModelParams& p);
    // (u - r1)(u - r2) scaled by a, with logistic kinetics.
    static Model shifted(double a, double r1, double r2, double lambda);

    // D'(u) R(u) + D(u) R'(u)
    double F(double u) const { return D.derivative(u) * R(u) + D(u) * R.derivative(u); }
};

double eval_D(const Diffusivity& d, double u);
double eval_R(const Kinetics& k, double u);
RootPair roots_alpha_beta(const Diffusivity& d);

// 2 sqrt(lambda D(0)). Requires logistic kinetics and D(0) > 0.
double min_wave_speed(const Model& m);
// 2 sqrt(D'(beta) R(beta)). Requires a sign-changing profile.
double beta_node_threshold(const Model& m);

struct PositiveBounds {
    double s2 = 0.0;
    double s1 = 0.0;
    bool unimodal = true;  // golden-section path taken
};
// Requires a profile positive on [0,1].
PositiveBounds positive_D_bounds(const Model& m);

double flux_derivative_F(const Model& m, double u);

struct DerivedConstants {
    std::optional<double> alpha, beta;
    std::optional<double> c_star;
    std::optional<double> beta_threshold;
    std::optional<double> s1, s2;
    SignClass sign_class = SignClass::Indefinite;
};
DerivedConstants derive_constants(const Model& m);

const char* to_string(SignClass s);
const char* to_string(RootStatus s);

}  // namespace wavekit
