// Compactly supported smooth cutoff: exp(-1/(1-t^2)) scaled to 1 at the
// center, identically zero outside the closed ball. Smooth to all orders; the
// recorded smoothness order is metadata for relaxed-regularity experiments.

#ifndef OSCIDECAY_CUTOFF_HPP
#define OSCIDECAY_CUTOFF_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace oscidecay {

struct CutoffFunction {
    std::vector<double> center;
    double radius = 1.0;
    int order = 6;

    CutoffFunction() = default;
    CutoffFunction(std::vector<double> c, double r, int s = 6)
        : center(std::move(c)), radius(r), order(s) {
        if (radius <= 0) throw std::invalid_argument("cutoff radius must be positive");
        if (order < 1) throw std::invalid_argument("cutoff order must be positive");
    }

    int dimension() const { return (int)center.size(); }

    double operator()(std::span<const double> x) const {
        if (x.size() != center.size()) throw std::invalid_argument("cutoff dimension mismatch");
        double rr = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - center[i];
            rr += d * d;
        }
        const double t2 = rr / (radius * radius);
        if (t2 >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - t2));
    }
};

}  // namespace oscidecay

#endif
