// Lambda-uniformity diagnostic: scans modulated polynomial phases e^{iq} of
// bounded degree with coefficients on a finite grid and reports the largest
// generalized Fourier coefficient of a sampled function. The scan is an
// explicit lower bound for the supremum over all phases, never a certificate
// of uniformity.

#ifndef OSCIDECAY_UNIFORMITY_HPP
#define OSCIDECAY_UNIFORMITY_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oscidecay {

/// Uniform samples of a complex function on [a, b], endpoints included.
struct SampledFunction {
    double a = -1, b = 1;
    std::vector<std::complex<double>> values;

    int count() const { return (int)values.size(); }
    double spacing() const { return (b - a) / (count() - 1); }
    double node(int i) const { return a + spacing() * i; }
};

/// Coefficient grid for the scanned phases q(t) = sum_{k=1..d} c_k t^k:
/// each c_k ranges over `points[k-1]` equispaced values in [-extent, extent].
struct CoefficientGridSpec {
    double extent = 0;
    std::vector<int> points;
};

/// Default grid: coefficients in [-3 lambda, 3 lambda], stepped so adjacent
/// phases differ by less than pi/4 on the interval, capped per axis.
inline CoefficientGridSpec default_coefficient_grid(double lambda, int degree, double half_width,
                                                    int cap_per_axis = 257) {
    CoefficientGridSpec spec;
    spec.extent = 3 * std::abs(lambda);
    for (int k = 1; k <= degree; ++k) {
        const double reach = std::pow(half_width, k);
        const double step = M_PI / (4 * std::max(reach, 1e-12));
        int pts = (int)std::floor(2 * spec.extent / step) + 1;
        pts = std::max(3, std::min(pts, cap_per_axis));
        if (pts % 2 == 0) ++pts;  // keep zero on the grid
        spec.points.push_back(pts);
    }
    return spec;
}

struct UniformityReport {
    double lambda = 0;
    int degree = 0;
    double tau = 0;
    double max_coefficient = 0;            // max over scanned q of |int f e^{-iq}|
    bool uniform = true;                   // no scanned phase passed the correlation test
    std::vector<double> best_coefficients; // c_1..c_d of the maximising phase
    std::complex<double> best_scalar{0, 0};
    double f_l2 = 0;
    double threshold = 0;                  // |G| level at which the test flips
};

/// Scans all phases on the grid. A phase flags nonuniformity when the optimal
/// scalar multiple of e^{iq} approximates f within the (1 - |lambda|^{-tau})
/// fraction of its L2 mass.
inline UniformityReport uniformity_scan(const SampledFunction& f, double lambda, int degree,
                                        double tau, const CoefficientGridSpec& grid,
                                        int nodes_per_wavelength = 4) {
    if (f.count() < 2) throw std::invalid_argument("sampled function needs at least two nodes");
    if (degree < 1) throw std::invalid_argument("phase degree must be positive");
    if ((int)grid.points.size() != degree) throw std::invalid_argument("one grid size per degree required");
    if (std::abs(lambda) < 1) throw std::invalid_argument("lambda must have magnitude at least 1");
    if (tau <= 0) throw std::invalid_argument("tau must be positive");

    const double half_width = std::max(std::abs(f.a), std::abs(f.b));
    double max_phase_slope = 0;
    for (int k = 1; k <= degree; ++k)
        max_phase_slope += grid.extent * k * std::pow(half_width, k - 1);
    const double h = f.spacing();
    if (h * max_phase_slope > 2 * M_PI / nodes_per_wavelength)
        throw std::invalid_argument("sample grid under-resolves the scanned phases");

    // trapezoid weights over the sample nodes
    std::vector<double> w(f.count(), h);
    w.front() = w.back() = h / 2;

    double norm_sq = 0;
    for (int i = 0; i < f.count(); ++i) norm_sq += w[i] * std::norm(f.values[i]);

    UniformityReport report;
    report.lambda = lambda;
    report.degree = degree;
    report.tau = tau;
    report.f_l2 = std::sqrt(norm_sq);
    report.best_coefficients.assign(degree, 0.0);

    const double interval = f.b - f.a;
    const double shrink = 1.0 - std::pow(std::abs(lambda), -tau);
    // |G|^2 >= |B| |f|^2 (1 - shrink^2) flips the classification
    report.threshold = std::sqrt(std::max(0.0, interval * norm_sq * (1.0 - shrink * shrink)));

    if (norm_sq == 0) return report;  // vacuously uniform

    std::vector<double> coeff(degree, 0.0);
    std::vector<int> idx(degree, 0);
    auto grid_value = [&](int k, int i) {
        const int pts = grid.points[k];
        if (pts == 1) return 0.0;
        return -grid.extent + (2 * grid.extent) * i / (pts - 1);
    };
    while (true) {
        for (int k = 0; k < degree; ++k) coeff[k] = grid_value(k, idx[k]);
        std::complex<double> G(0, 0);
        for (int i = 0; i < f.count(); ++i) {
            const double t = f.node(i);
            double q = 0, tp = t;
            for (int k = 0; k < degree; ++k) {
                q += coeff[k] * tp;
                tp *= t;
            }
            G += w[i] * f.values[i] * std::complex<double>(std::cos(q), -std::sin(q));
        }
        const double mag = std::abs(G);
        if (mag > report.max_coefficient) {
            report.max_coefficient = mag;
            report.best_coefficients = coeff;
            report.best_scalar = G / interval;
        }
        int ax = degree - 1;
        while (ax >= 0 && ++idx[ax] == grid.points[ax]) idx[ax--] = 0;
        if (ax < 0) break;
    }

    report.uniform = !(report.max_coefficient >= report.threshold);
    return report;
}

}  // namespace oscidecay

#endif
