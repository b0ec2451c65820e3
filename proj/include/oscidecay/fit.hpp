// Least-squares line fits for decay-exponent and scaling estimates.

#ifndef OSCIDECAY_FIT_HPP
#define OSCIDECAY_FIT_HPP

#include <cmath>
#include <span>
#include <stdexcept>

namespace oscidecay {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    int points = 0;
    bool ok = false;
};

inline LinearFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit input size mismatch");
    LinearFit fit;
    fit.points = (int)x.size();
    if (fit.points < 2) return fit;
    double sx = 0, sy = 0;
    for (int i = 0; i < fit.points; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / fit.points, my = sy / fit.points;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < fit.points; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    fit.ok = true;
    return fit;
}

}  // namespace oscidecay

#endif
