#include "wavekit/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavekit {

ModelParams ModelParams::logistic(double D_i, double D_g, double lambda) {
    ModelParams p;
    p.D_i = D_i;
    p.D_g = D_g;
    p.lambda_i = p.lambda_g = lambda;
    p.K_i = p.K_g = 0.0;
    return p;
}

void ModelParams::validate() const {
    const double fields[] = {D_i, D_g, lambda_i, lambda_g, K_i, K_g};
    for (double f : fields) {
        if (!std::isfinite(f) || f < 0.0) throw std::invalid_argument("model parameters must be finite and nonnegative");
    }
    if (!(D_i > 0.0)) throw std::invalid_argument("D_i must be positive");
}

bool ModelParams::logistic_reduction() const { return lambda_i == lambda_g && K_i == 0.0 && K_g == 0.0; }

Diffusivity::Diffusivity(Kind kind, double c0, double c1, double c2, double a0, double a1, double a2)
    : kind_(kind), c0_(c0), c1_(c1), c2_(c2), args_{a0, a1, a2} {}

Diffusivity Diffusivity::adhesion(double D_i, double D_g) {
    return Diffusivity(Kind::AdhesionQuadratic, D_i, 4.0 * (D_g - D_i), 3.0 * (D_i - D_g), D_i, D_g, 0.0);
}

Diffusivity Diffusivity::general(double a, double r1, double r2) {
    if (a == 0.0 || !std::isfinite(a) || !std::isfinite(r1) || !std::isfinite(r2))
        throw std::invalid_argument("general diffusivity needs a finite nonzero leading coefficient");
    return Diffusivity(Kind::GeneralQuadratic, a * r1 * r2, -a * (r1 + r2), a, a, r1, r2);
}

RootPair Diffusivity::roots() const {
    RootPair out;
    if (c2_ == 0.0) {
        // Linear or constant. The constructors only produce the constant case.
        if (c1_ != 0.0) {
            const double r = -c0_ / c1_;
            if (r >= 0.0 && r <= 1.0) {
                out.status = RootStatus::TwoRoots;
                out.alpha = out.beta = r;
            }
        }
        return out;
    }
    const double b2 = c1_ * c1_;
    const double ac4 = 4.0 * c0_ * c2_;
    const double disc = b2 - ac4;
    const double scale = std::max(b2, std::abs(ac4));
    if (std::abs(disc) <= 1e-14 * scale) {
        out.status = RootStatus::Degenerate;
        out.alpha = out.beta = -c1_ / (2.0 * c2_);
        return out;
    }
    if (disc < 0.0) return out;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (c1_ + std::copysign(sq, c1_));
    double r1 = q / c2_;
    double r2 = (q != 0.0) ? c0_ / q : -r1;
    if (r1 > r2) std::swap(r1, r2);
    const bool any_inside = (r1 >= 0.0 && r1 <= 1.0) || (r2 >= 0.0 && r2 <= 1.0);
    if (!any_inside) return out;
    out.status = RootStatus::TwoRoots;
    out.alpha = r1;
    out.beta = r2;
    return out;
}

SignClass Diffusivity::sign_class() const {
    const RootPair r = roots();
    if (r.status == RootStatus::Degenerate) return SignClass::Degenerate;
    if (r.status == RootStatus::TwoRoots) {
        if (r.alpha > 0.0 && r.beta < 1.0 && r.alpha < r.beta) return SignClass::SignChangingTwice;
        return SignClass::Indefinite;
    }
    return (*this)(0.5) > 0.0 ? SignClass::PositiveOnUnit : SignClass::Indefinite;
}

double Diffusivity::max_abs_on_unit() const {
    double m = std::max(std::abs((*this)(0.0)), std::abs((*this)(1.0)));
    if (c2_ != 0.0) {
        const double v = -c1_ / (2.0 * c2_);
        if (v > 0.0 && v < 1.0) m = std::max(m, std::abs((*this)(v)));
    }
    return m;
}

std::string Diffusivity::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (kind_ == Kind::AdhesionQuadratic)
        os << "adhesion(D_i=" << args_[0] << ", D_g=" << args_[1] << ")";
    else
        os << "general(a=" << args_[0] << ", r1=" << args_[1] << ", r2=" << args_[2] << ")";
    return os.str();
}

Kinetics Kinetics::logistic(double lambda) { return Kinetics(lambda, lambda, 0.0, 0.0); }

Kinetics Kinetics::general(double lambda_i, double lambda_g, double K_i, double K_g) {
    return Kinetics(lambda_i, lambda_g, K_i, K_g);
}

Kinetics Kinetics::from_params(const ModelParams& p) { return general(p.lambda_i, p.lambda_g, p.K_i, p.K_g); }

double Kinetics::operator()(double u) const {
    const double v = 1.0 - u;
    if (is_logistic()) return lg_ * u * v;
    return lg_ * u * v + (li_ - lg_ - ki_ + kg_) * u * v * v - kg_ * u;
}

double Kinetics::derivative(double u) const {
    if (is_logistic()) return lg_ * (1.0 - 2.0 * u);
    const double v = 1.0 - u;
    // d/du [u (1-u)^2] = (1-u)(1-3u)
    return lg_ * (1.0 - 2.0 * u) + (li_ - lg_ - ki_ + kg_) * v * (1.0 - 3.0 * u) - kg_;
}

bool Kinetics::is_logistic() const { return li_ == lg_ && ki_ == 0.0 && kg_ == 0.0; }

double Kinetics::lambda() const {
    if (!is_logistic()) throw std::logic_error("kinetics do not reduce to the logistic form");
    return lg_;
}

Model Model::from_params(const ModelParams& p) {
    p.validate();
    return Model{Diffusivity::adhesion(p.D_i, p.D_g), Kinetics::from_params(p)};
}

Model Model::shifted(double a, double r1, double r2, double lambda) {
    return Model{Diffusivity::general(a, r1, r2), Kinetics::logistic(lambda)};
}

double eval_D(const Diffusivity& d, double u) { return d(u); }
double eval_R(const Kinetics& k, double u) { return k(u); }
RootPair roots_alpha_beta(const Diffusivity& d) { return d.roots(); }

double min_wave_speed(const Model& m) {
    const double lambda = m.R.lambda();
    const double d0 = m.D(0.0);
    if (!(d0 > 0.0)) throw std::domain_error("minimum wave speed needs D(0) > 0");
    return 2.0 * std::sqrt(lambda * d0);
}

double beta_node_threshold(const Model& m) {
    const RootPair r = m.D.roots();
    if (m.D.sign_class() != SignClass::SignChangingTwice)
        throw std::domain_error("beta threshold needs a diffusivity changing sign twice on (0,1)");
    const double v = m.D.derivative(r.beta) * m.R(r.beta);
    return 2.0 * std::sqrt(std::max(v, 0.0));
}

namespace {

// Maximise a smooth function on [a, b] by golden-section search.
template <class Fn>
double golden_max(Fn f, double a, double b, double rtol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 400 && (b - a) > rtol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

PositiveBounds positive_D_bounds(const Model& m) {
    if (m.D.sign_class() != SignClass::PositiveOnUnit)
        throw std::domain_error("positive-D bounds need a diffusivity positive on [0,1]");
    const double lambda = m.R.lambda();
    auto g = [&](double u) { return (1.0 - u) * m.D(u); };
    auto dg = [&](double u) { return -m.D(u) + (1.0 - u) * m.D.derivative(u); };

    PositiveBounds out;
    out.s2 = 2.0 * std::sqrt(lambda * m.D(0.0));

    constexpr int n = 50;
    int changes = 0, last_plus = -1;
    bool down = false;
    for (int k = 0; k <= n; ++k) {
        const double s = dg(static_cast<double>(k) / n);
        if (s > 0.0) {
            if (down) ++changes;  // rises again after falling
            last_plus = k;
        } else if (s < 0.0) {
            down = true;
        }
    }
    double best = g(0.0);
    if (changes == 0) {
        if (last_plus >= 0) {
            const double lo = static_cast<double>(last_plus) / n;
            const double hi = std::min(1.0, lo + 1.0 / n);
            best = std::max(best, g(golden_max(g, lo, hi, 1e-12)));
        }
    } else {
        out.unimodal = false;
        constexpr int dense = 100000;
        int kbest = 0;
        for (int k = 0; k <= dense; ++k) {
            const double v = g(static_cast<double>(k) / dense);
            if (v > best) {
                best = v;
                kbest = k;
            }
        }
        const double lo = std::max(0.0, (kbest - 1.0) / dense), hi = std::min(1.0, (kbest + 1.0) / dense);
        best = std::max(best, g(golden_max(g, lo, hi, 1e-12)));
    }
    out.s1 = std::max(out.s2, 2.0 * std::sqrt(lambda * best));
    return out;
}

double flux_derivative_F(const Model& m, double u) { return m.F(u); }

DerivedConstants derive_constants(const Model& m) {
    DerivedConstants dc;
    dc.sign_class = m.D.sign_class();
    const RootPair r = m.D.roots();
    if (dc.sign_class == SignClass::SignChangingTwice) {
        dc.alpha = r.alpha;
        dc.beta = r.beta;
    }
    if (m.R.is_logistic() && m.D(0.0) > 0.0) dc.c_star = min_wave_speed(m);
    if (m.R.is_logistic() && dc.sign_class == SignClass::SignChangingTwice) dc.beta_threshold = beta_node_threshold(m);
    if (m.R.is_logistic() && dc.sign_class == SignClass::PositiveOnUnit) {
        const PositiveBounds b = positive_D_bounds(m);
        dc.s1 = b.s1;
        dc.s2 = b.s2;
    }
    return dc;
}

const char* to_string(SignClass s) {
    switch (s) {
        case SignClass::PositiveOnUnit: return "PositiveOnUnit";
        case SignClass::SignChangingTwice: return "SignChangingTwice";
        case SignClass::Degenerate: return "Degenerate";
        case SignClass::Indefinite: return "Indefinite";
    }
    return "?";
}

const char* to_string(RootStatus s) {
    switch (s) {
        case RootStatus::TwoRoots: return "TwoRoots";
        case RootStatus::NoSignChange: return "NoSignChange";
        case RootStatus::Degenerate: return "Degenerate";
    }
    return "?";
}

}  // namespace wavekit
