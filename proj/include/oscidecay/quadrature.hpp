// Composite tensor-product Gauss-Legendre quadrature with oscillation-aware
// panel counts and refinement-to-tolerance.

#ifndef OSCIDECAY_QUADRATURE_HPP
#define OSCIDECAY_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace oscidecay {

struct QuadratureSpec {
    int nodes_per_wavelength = 4;   // >= 4
    int base_panels_per_axis = 4;
    int max_refinements = 8;
    double relative_tolerance = 1e-7;
};

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1] (positive abscissas; symmetric)
inline constexpr double kGauss16Nodes[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
inline constexpr double kGauss16Weights[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

inline void kahan_add(double& sum, double& comp, double term) {
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
}

}  // namespace detail

struct QuadratureAxis {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Composite 16-point Gauss-Legendre grid over [lo, hi] with `panels` panels.
inline QuadratureAxis composite_gauss_axis(double lo, double hi, int panels) {
    if (panels < 1) throw std::invalid_argument("panel count must be positive");
    QuadratureAxis axis;
    axis.nodes.reserve(16 * panels);
    axis.weights.reserve(16 * panels);
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        const double half = 0.5 * width;
        for (int k = 7; k >= 0; --k) {
            axis.nodes.push_back(mid - half * detail::kGauss16Nodes[k]);
            axis.weights.push_back(half * detail::kGauss16Weights[k]);
        }
        for (int k = 0; k < 8; ++k) {
            axis.nodes.push_back(mid + half * detail::kGauss16Nodes[k]);
            axis.weights.push_back(half * detail::kGauss16Weights[k]);
        }
    }
    return axis;
}

/// Integrates a complex-valued integrand over the tensor grid, with
/// compensated accumulation in a fixed deterministic order.
template <typename F>
std::complex<double> tensor_integrate(const std::vector<QuadratureAxis>& axes, F&& f) {
    const int m = (int)axes.size();
    if (m == 0) throw std::invalid_argument("no axes to integrate over");
    std::vector<double> pt(m);
    std::vector<std::size_t> idx(m, 0);
    double sum_re = 0, comp_re = 0, sum_im = 0, comp_im = 0;
    while (true) {
        double outer_w = 1;
        for (int i = 0; i + 1 < m; ++i) {
            pt[i] = axes[i].nodes[idx[i]];
            outer_w *= axes[i].weights[idx[i]];
        }
        const auto& last = axes[m - 1];
        for (std::size_t k = 0; k < last.nodes.size(); ++k) {
            pt[m - 1] = last.nodes[k];
            const std::complex<double> v = f(std::span<const double>(pt));
            const double w = outer_w * last.weights[k];
            detail::kahan_add(sum_re, comp_re, w * v.real());
            detail::kahan_add(sum_im, comp_im, w * v.imag());
        }
        int ax = m - 2;
        while (ax >= 0 && ++idx[ax] == axes[ax].nodes.size()) idx[ax--] = 0;
        if (ax < 0) break;
    }
    return {sum_re + comp_re, sum_im + comp_im};
}

struct RefinedValue {
    std::complex<double> value{0, 0};
    bool converged = false;
    std::vector<int> panels;  // per-axis panel counts of the final evaluation
};

/// Evaluates with the given starting panel counts, then doubles all axes
/// until two successive estimates agree to the relative tolerance.
template <typename F>
RefinedValue refine_to_tolerance(std::vector<double> lo, std::vector<double> hi,
                                 std::vector<int> panels, const QuadratureSpec& spec, F&& f) {
    RefinedValue out;
    std::complex<double> prev{0, 0};
    bool have_prev = false;
    for (int ref = 0; ref <= spec.max_refinements; ++ref) {
        std::vector<QuadratureAxis> axes;
        for (size_t i = 0; i < lo.size(); ++i) axes.push_back(composite_gauss_axis(lo[i], hi[i], panels[i]));
        const std::complex<double> value = tensor_integrate(axes, f);
        if (have_prev) {
            const double diff = std::abs(value - prev);
            const double scale = std::max(std::abs(value), std::abs(prev));
            if (diff <= spec.relative_tolerance * scale || diff == 0.0) {
                out.value = value;
                out.converged = true;
                out.panels = panels;
                return out;
            }
        }
        prev = value;
        have_prev = true;
        out.value = value;
        out.panels = panels;
        for (auto& p : panels) p *= 2;
    }
    return out;  // not converged within the refinement budget
}

}  // namespace oscidecay

#endif
