// Principal-value evaluation of the oscillatory bilinear transform
//   T_P(f,g)(x) = p.v. integral of e^{iP(x,t)} f(x-t) g(x+t) / t dt
// over symmetric dyadic shells with exact +-t node pairing, the exact
// degree-<=2 modulation reduction to the zero phase, and norm-ratio sweeps
// across expanding coefficient scales.

#ifndef OSCIDECAY_BILINEAR_HPP
#define OSCIDECAY_BILINEAR_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <memory>

#include "oscidecay/fit.hpp"
#include "oscidecay/parallel.hpp"
#include "oscidecay/polynomial.hpp"
#include "oscidecay/quadrature.hpp"
#include "oscidecay/rng.hpp"

namespace oscidecay {

/// Real polynomial phase P(x, t) in two variables.
struct BilinearPhase {
    Polynomial P;

    explicit BilinearPhase(Polynomial poly) : P(std::move(poly)) {
        if (P.dimension() != 2) throw std::invalid_argument("bilinear phase must have two variables");
    }
    static BilinearPhase zero() { return BilinearPhase(Polynomial(2)); }
    int degree() const { return P.degree(); }

    double coefficient(int x_pow, int t_pow) const {
        return to_double(P.coefficient(Monomial({x_pow, t_pow})));
    }
};

struct PrincipalValueSpec {
    double inner_cutoff = 1.0 / (1 << 20);  // dyadic epsilon_0
    double outer_radius = 2.0;              // shells tile [eps_0, R]
    int min_nodes_per_shell = 16;
    int nodes_per_wavelength = 6;
    int max_nodes_per_shell = 1 << 15;      // beyond this a shell is flagged unresolved

    int shell_count() const {
        return (int)std::ceil(std::log2(outer_radius / inner_cutoff));
    }
};

/// A compactly supported smooth complex function on the line.
class SmoothFunction1D {
public:
    SmoothFunction1D(double support_lo, double support_hi,
                     std::function<std::complex<double>(double)> fn)
        : lo_(support_lo), hi_(support_hi), fn_(std::move(fn)) {
        if (!(lo_ < hi_)) throw std::invalid_argument("empty support interval");
    }

    /// Seeded smooth bump: exp-bump envelope times a low-order trigonometric
    /// modulation, sup-normalised to about one.
    static SmoothFunction1D seeded_bump(double center, double radius, std::uint64_t seed) {
        Rng rng(seed);
        const double a0 = rng.uniform(0.4, 1.0);
        const double a1 = rng.uniform(-0.6, 0.6);
        const double b1 = rng.uniform(-0.6, 0.6);
        const double w = rng.uniform(0.5, 4.0);
        const double mass = std::abs(a0) + std::abs(a1) + std::abs(b1);
        return SmoothFunction1D(center - radius, center + radius, [=](double t) {
            const double s = (t - center) / radius;
            if (std::abs(s) >= 1.0) return std::complex<double>(0, 0);
            const double bump = std::exp(1.0 - 1.0 / (1.0 - s * s));
            const double mod = (a0 + a1 * std::cos(w * t) + b1 * std::sin(w * t)) / mass;
            return std::complex<double>(bump * mod, 0);
        });
    }

    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }

    std::complex<double> operator()(double t) const {
        if (t <= lo_ || t >= hi_) return {0, 0};
        return fn_(t);
    }

    /// Pointwise modulation by e^{i (alpha t^2 + beta t)}.
    SmoothFunction1D modulated(double alpha, double beta) const {
        auto base = *this;
        return SmoothFunction1D(lo_, hi_, [base, alpha, beta](double t) {
            const double arg = alpha * t * t + beta * t;
            return base(t) * std::complex<double>(std::cos(arg), std::sin(arg));
        });
    }

    /// Trapezoid L^p norm on a dense uniform grid over the support.
    double lp_norm(double p, int nodes = 4097) const {
        const double h = (hi_ - lo_) / (nodes - 1);
        double acc = 0;
        for (int i = 0; i < nodes; ++i) {
            const double w = (i == 0 || i == nodes - 1) ? h / 2 : h;
            acc += w * std::pow(std::abs((*this)(lo_ + i * h)), p);
        }
        return std::pow(acc, 1.0 / p);
    }

private:
    double lo_, hi_;
    std::function<std::complex<double>(double)> fn_;
};

struct BilinearTransformResult {
    std::vector<double> x_grid;
    std::vector<std::complex<double>> values;
    std::vector<char> resolved;  // per x: every shell met its node budget

    double max_abs() const {
        double m = 0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }

    /// Trapezoid L^q norm over the x grid (uniform grid assumed).
    double lq_norm(double q) const {
        const double h = x_grid.size() > 1 ? x_grid[1] - x_grid[0] : 1.0;
        double acc = 0;
        for (size_t i = 0; i < values.size(); ++i) {
            const double w = (i == 0 || i + 1 == values.size()) ? h / 2 : h;
            acc += w * std::pow(std::abs(values[i]), q);
        }
        return std::pow(acc, 1.0 / q);
    }
};

/// Symmetric dyadic-shell principal-value quadrature. Within each shell the
/// +t and -t nodes are paired exactly, so the odd kernel cancels the constant
/// mode of the integrand structurally.
inline BilinearTransformResult bht_apply(const BilinearPhase& phase, const SmoothFunction1D& f,
                                         const SmoothFunction1D& g,
                                         const std::vector<double>& x_grid,
                                         const PrincipalValueSpec& spec, int threads = 1) {
    BilinearTransformResult result;
    result.x_grid = x_grid;
    result.values.assign(x_grid.size(), {0, 0});
    result.resolved.assign(x_grid.size(), 1);

    const Polynomial dPdt = phase.P.partial_derivative(1);
    const int shells = spec.shell_count();

    parallel_for(x_grid.size(), threads, [&](std::size_t xi) {
        const double x = x_grid[xi];
        double sr = 0, cr = 0, si = 0, ci = 0;
        bool resolved = true;
        for (int shell = 0; shell < shells; ++shell) {
            const double t0 = spec.inner_cutoff * std::pow(2.0, shell);
            const double t1 = std::min(t0 * 2.0, spec.outer_radius);
            if (t0 >= spec.outer_radius) break;
            // oscillation budget of e^{iP(x, +-t)} on the shell
            const double cx[2] = {x, 0.0};
            const double hw[2] = {0.0, t1};
            const double slope = dPdt.magnitude_bound(std::span<const double>(cx, 2),
                                                      std::span<const double>(hw, 2));
            const double cycles = slope * (t1 - t0) / (2 * M_PI);
            int nodes = std::max(spec.min_nodes_per_shell,
                                 (int)std::ceil(spec.nodes_per_wavelength * cycles));
            if (nodes > spec.max_nodes_per_shell) {
                nodes = spec.max_nodes_per_shell;
                resolved = false;
            }
            const int panels = (nodes + 15) / 16;
            auto axis = composite_gauss_axis(t0, t1, panels);
            for (size_t k = 0; k < axis.nodes.size(); ++k) {
                const double t = axis.nodes[k];
                const double w = axis.weights[k] / t;
                const double pt_pos[2] = {x, t};
                const double pt_neg[2] = {x, -t};
                const double arg_pos = phase.P.evaluate(std::span<const double>(pt_pos, 2));
                const double arg_neg = phase.P.evaluate(std::span<const double>(pt_neg, 2));
                const std::complex<double> term =
                    std::complex<double>(std::cos(arg_pos), std::sin(arg_pos)) * f(x - t) * g(x + t) -
                    std::complex<double>(std::cos(arg_neg), std::sin(arg_neg)) * f(x + t) * g(x - t);
                detail::kahan_add(sr, cr, w * term.real());
                detail::kahan_add(si, ci, w * term.imag());
            }
        }
        result.values[xi] = {sr + cr, si + ci};
        result.resolved[xi] = resolved ? 1 : 0;
    });
    return result;
}

/// Modulations turning a degree-<=2 phase into the zero phase: with
/// f~(y) = e^{i(alpha y^2 + p y)} f(y) and g~(y) = e^{i(beta y^2 + q y)} g(y),
/// |T_P(f,g)(x)| = |T_0(f~,g~)(x)| pointwise. The leftover pure-x phase is
/// reported for completeness.
struct QuadraticReduction {
    double alpha = 0, beta = 0;   // quadratic modulation coefficients
    double p = 0, q = 0;          // linear modulation coefficients
    double out_x2 = 0, out_x1 = 0, out_const = 0;
};

inline QuadraticReduction quadratic_reduction(const BilinearPhase& phase) {
    if (phase.degree() > 2) throw std::invalid_argument("reduction applies to degree <= 2 phases");
    QuadraticReduction red;
    const double a_xt = phase.coefficient(1, 1);
    const double a_tt = phase.coefficient(0, 2);
    const double a_t = phase.coefficient(0, 1);
    red.alpha = a_tt / 2 - a_xt / 4;
    red.beta = a_tt / 2 + a_xt / 4;
    red.p = -a_t / 2;
    red.q = a_t / 2;
    red.out_x2 = phase.coefficient(2, 0) - (red.alpha + red.beta);
    red.out_x1 = phase.coefficient(1, 0) - (red.p + red.q);
    red.out_const = phase.coefficient(0, 0);
    return red;
}

struct NormRatioSample {
    int trial = 0;
    double scale = 0;
    std::vector<double> coefficients;  // graded-lex coefficient list of P
    double ratio = 0;
    bool resolved = true;
};

struct NormRatioReport {
    double p1 = 2, p2 = 2, q = 1;
    std::vector<NormRatioSample> samples;
    double max_ratio = 0;
    std::vector<double> scale_levels;
    std::vector<double> max_ratio_per_scale;
    double slope_vs_scale = 0;  // log max-ratio against log scale
    bool any_unresolved = false;
};

/// Samples phases with coefficients on expanding scales and function pairs,
/// and reports the running maximum of |T_P(f,g)|_q / (|f|_p1 |g|_p2): an
/// empirical lower envelope of the operator norm, not a claimed bound.
inline NormRatioReport norm_ratio_sweep(int degree, double p1, double p2,
                                        const std::vector<double>& scales, int pairs_per_scale,
                                        std::uint64_t seed, const PrincipalValueSpec& spec,
                                        int x_grid_points = 97, int threads = 1) {
    if (p1 <= 1 || p2 <= 1) throw std::invalid_argument("exponents must exceed one");
    NormRatioReport report;
    report.p1 = p1;
    report.p2 = p2;
    report.q = 1.0 / (1.0 / p1 + 1.0 / p2);
    if (report.q <= 2.0 / 3.0) throw std::invalid_argument("q must exceed 2/3");
    report.scale_levels = scales;

    std::vector<double> x_grid(x_grid_points);
    const double R = spec.outer_radius;
    for (int i = 0; i < x_grid_points; ++i)
        x_grid[i] = -R + 2 * R * i / (x_grid_points - 1);

    const auto monos = monomials_up_to_degree(2, degree);
    for (size_t sc = 0; sc < scales.size(); ++sc) {
        double level_max = 0;
        for (int trial = 0; trial < pairs_per_scale; ++trial) {
            Rng rng(seed, {(std::uint64_t)sc, (std::uint64_t)trial});
            Polynomial P(2);
            std::vector<double> coeffs;
            for (const auto& mono : monos) {
                const double c = scales[sc] * rng.uniform(-1, 1);
                coeffs.push_back(c);
                // rational snap keeps the phase polynomial exact
                P.set_coefficient(mono, make_rational((long)std::llround(c * (1 << 20)), 1 << 20));
            }
            // keep supports inside [-R/2, R/2]
            const double bump_radius = R / 2 - 0.35;
            auto f = SmoothFunction1D::seeded_bump(rng.uniform(-0.3, 0.3), bump_radius,
                                                   hash_stream({seed, (std::uint64_t)sc,
                                                                (std::uint64_t)trial, 1}));
            auto g = SmoothFunction1D::seeded_bump(rng.uniform(-0.3, 0.3), bump_radius,
                                                   hash_stream({seed, (std::uint64_t)sc,
                                                                (std::uint64_t)trial, 2}));
            auto T = bht_apply(BilinearPhase(P), f, g, x_grid, spec, threads);
            NormRatioSample sample;
            sample.trial = trial;
            sample.scale = scales[sc];
            sample.coefficients = std::move(coeffs);
            sample.ratio = T.lq_norm(report.q) / (f.lp_norm(p1) * g.lp_norm(p2));
            for (char rflag : T.resolved)
                if (!rflag) sample.resolved = false;
            if (!sample.resolved) report.any_unresolved = true;
            level_max = std::max(level_max, sample.ratio);
            report.max_ratio = std::max(report.max_ratio, sample.ratio);
            report.samples.push_back(std::move(sample));
        }
        report.max_ratio_per_scale.push_back(level_max);
    }

    std::vector<double> xs, ys;
    for (size_t sc = 0; sc < scales.size(); ++sc) {
        if (report.max_ratio_per_scale[sc] <= 0) continue;
        xs.push_back(std::log(scales[sc]));
        ys.push_back(std::log(report.max_ratio_per_scale[sc]));
    }
    if (xs.size() >= 2) report.slope_vs_scale = least_squares_line(xs, ys).slope;
    return report;
}

}  // namespace oscidecay

#endif
