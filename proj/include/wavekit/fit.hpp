#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wavekit {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

// Ordinary least squares y = slope * t + intercept over [first, t.size()).
inline LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y, std::size_t first = 0) {
    const std::size_t n = t.size() - first;
    if (t.size() != y.size() || t.size() <= first || n < 2) throw std::invalid_argument("line fit needs at least two points");
    double mt = 0.0, my = 0.0;
    for (std::size_t i = first; i < t.size(); ++i) {
        mt += t[i];
        my += y[i];
    }
    mt /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = first; i < t.size(); ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        sty += (t[i] - mt) * (y[i] - my);
    }
    if (stt == 0.0) throw std::invalid_argument("line fit needs distinct abscissae");
    LineFit f;
    f.slope = sty / stt;
    f.intercept = my - f.slope * mt;
    double ss = 0.0;
    for (std::size_t i = first; i < t.size(); ++i) {
        const double r = y[i] - (f.slope * t[i] + f.intercept);
        ss += r * r;
    }
    f.rms_residual = std::sqrt(ss / static_cast<double>(n));
    return f;
}

}  // namespace wavekit
