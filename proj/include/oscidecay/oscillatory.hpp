// Numerical evaluation of the oscillatory functional
//   integral of e^{i lambda P(x)} prod_j f_j(pi_j(x)) eta(x) dx
// over the cutoff support, and geometric-grid sweeps with decay-exponent
// fits.

#ifndef OSCIDECAY_OSCILLATORY_HPP
#define OSCIDECAY_OSCILLATORY_HPP

#include <complex>

#include "oscidecay/cutoff.hpp"
#include "oscidecay/fit.hpp"
#include "oscidecay/parallel.hpp"
#include "oscidecay/quadrature.hpp"
#include "oscidecay/subspace.hpp"
#include "oscidecay/test_function.hpp"

namespace oscidecay {

struct LambdaValue {
    std::complex<double> value{0, 0};
    bool converged = false;
};

namespace detail {

// double-precision frame-coordinate matrix (kappa x m) of a subspace
inline std::vector<std::vector<double>> coordinate_matrix(const Subspace& V) {
    std::vector<std::vector<double>> M;
    for (const auto& form : V.canonical_frame_coordinates()) {
        std::vector<double> row(V.ambient(), 0.0);
        for (const auto& [mono, c] : form.terms())
            for (int i = 0; i < V.ambient(); ++i)
                if (mono.exponents[i] == 1) row[i] = to_double(c);
        M.push_back(std::move(row));
    }
    return M;
}

// conservative per-axis oscillation count of e^{i lambda P} over the box
inline std::vector<int> oscillation_panels(const Polynomial& P, double lambda,
                                           const CutoffFunction& eta, const QuadratureSpec& spec) {
    const int m = P.dimension();
    std::vector<double> halfwidth(m, eta.radius);
    std::vector<int> panels(m, spec.base_panels_per_axis);
    for (int i = 0; i < m; ++i) {
        const double grad_bound =
            P.partial_derivative(i).magnitude_bound(eta.center, halfwidth);
        const double oscillations = std::abs(lambda) * grad_bound * (2 * eta.radius) / (2 * M_PI);
        const int nodes = (int)std::ceil(spec.nodes_per_wavelength * oscillations);
        panels[i] = std::max(panels[i], (nodes + 15) / 16);
    }
    return panels;
}

}  // namespace detail

/// One evaluation of the functional at a fixed lambda. The convergence flag
/// reports whether the refinement tolerance was met; a false flag is a
/// warning, not an error.
inline LambdaValue lambda_functional(const Polynomial& P, const SubspaceFamily& F,
                                     const std::vector<TestFunction>& fs,
                                     const CutoffFunction& eta, double lambda,
                                     const QuadratureSpec& spec) {
    const int m = F.ambient();
    if (P.dimension() != m) throw std::invalid_argument("phase dimension mismatch");
    if (eta.dimension() != m) throw std::invalid_argument("cutoff dimension mismatch");
    if (spec.nodes_per_wavelength < 4) throw std::invalid_argument("nodes_per_wavelength must be at least 4");
    if ((int)fs.size() != F.size()) throw std::invalid_argument("one test function per subspace required");
    for (int j = 0; j < F.size(); ++j)
        if (fs[j].dimension() != F[j].dim()) throw std::invalid_argument("test function dimension mismatch");

    std::vector<std::vector<std::vector<double>>> coords;
    for (int j = 0; j < F.size(); ++j) coords.push_back(detail::coordinate_matrix(F[j]));

    std::vector<double> lo(m), hi(m);
    for (int i = 0; i < m; ++i) {
        lo[i] = eta.center[i] - eta.radius;
        hi[i] = eta.center[i] + eta.radius;
    }

    std::vector<double> u_buf;
    auto integrand = [&](std::span<const double> x) -> std::complex<double> {
        const double bump = eta(x);
        if (bump == 0.0) return {0, 0};
        std::complex<double> prod(bump, 0);
        for (int j = 0; j < F.size(); ++j) {
            const auto& M = coords[j];
            u_buf.assign(M.size(), 0.0);
            for (size_t r = 0; r < M.size(); ++r) {
                double s = 0;
                for (int i = 0; i < m; ++i) s += M[r][i] * x[i];
                u_buf[r] = s;
            }
            prod *= fs[j](std::span<const double>(u_buf), lambda);
            if (prod == std::complex<double>(0, 0)) return prod;
        }
        const double arg = lambda * P.evaluate(x);
        return prod * std::complex<double>(std::cos(arg), std::sin(arg));
    };

    auto panels = detail::oscillation_panels(P, lambda, eta, spec);
    auto refined = refine_to_tolerance(lo, hi, panels, spec, integrand);
    return {refined.value, refined.converged};
}

/// How the tuple of test functions is produced per sweep point.
struct FunctionFamily {
    enum class Kind { fixed, random_trig };
    Kind kind = Kind::fixed;
    std::vector<TestFunction> tuple;  // fixed kind
    int samples = 8;                  // random kind: tuples sampled per lambda
    int trig_degree = 3;
    std::uint64_t seed = 0;

    static FunctionFamily fixed(std::vector<TestFunction> fns) {
        FunctionFamily fam;
        fam.kind = Kind::fixed;
        fam.tuple = std::move(fns);
        return fam;
    }
    static FunctionFamily random_trig(int samples, int degree, std::uint64_t seed) {
        FunctionFamily fam;
        fam.kind = Kind::random_trig;
        fam.samples = samples;
        fam.trig_degree = degree;
        fam.seed = seed;
        return fam;
    }
};

struct DecaySweepResult {
    std::vector<double> lambdas;
    std::vector<std::complex<double>> values;  // worst case over sampled tuples
    std::vector<char> converged;
    double epsilon_hat = 0;
    double intercept = 0;
    double fit_r2 = 0;
    int fit_points = 0;
    bool fit_ok = false;
};

/// f_j = e^{-i lambda p_j} built from a degenerate decomposition (or any
/// per-subspace phases); the modulation tracks the evaluation lambda.
inline std::vector<TestFunction> adversarial_functions(const std::vector<Polynomial>& minimizers) {
    std::vector<TestFunction> fs;
    fs.reserve(minimizers.size());
    for (const auto& p : minimizers) fs.push_back(TestFunction::modulated_exponential(p));
    return fs;
}

/// Evaluates the functional across a geometric lambda grid and fits the decay
/// exponent on the converged points of the upper half of the grid (small
/// lambda is preasymptotic). Randomised families take the worst (largest
/// modulus) tuple per grid point, with seeds hash(master, lambda idx, tuple idx).
inline DecaySweepResult decay_sweep(const Polynomial& P, const SubspaceFamily& F,
                                    const FunctionFamily& family, const CutoffFunction& eta,
                                    const std::vector<double>& lambda_grid,
                                    const QuadratureSpec& spec, int threads = 1) {
    if ((int)lambda_grid.size() < 6) throw std::invalid_argument("lambda grid needs at least 6 points");
    if (lambda_grid.front() < 1) throw std::invalid_argument("lambda grid must start at 1 or above");
    for (size_t k = 1; k < lambda_grid.size(); ++k)
        if (lambda_grid[k] <= lambda_grid[k - 1])
            throw std::invalid_argument("lambda grid must be strictly increasing");

    DecaySweepResult result;
    result.lambdas = lambda_grid;
    const size_t K = lambda_grid.size();
    const size_t S = family.kind == FunctionFamily::Kind::fixed ? 1 : (size_t)family.samples;
    std::vector<std::complex<double>> values(K * S);
    std::vector<char> flags(K * S, 0);

    parallel_for(K * S, threads, [&](size_t idx) {
        const size_t k = idx / S, s = idx % S;
        std::vector<TestFunction> tuple;
        if (family.kind == FunctionFamily::Kind::fixed) {
            tuple = family.tuple;
        } else {
            const std::uint64_t tuple_seed = hash_stream({family.seed, (std::uint64_t)k, (std::uint64_t)s});
            for (int j = 0; j < F.size(); ++j)
                tuple.push_back(TestFunction::trig_polynomial(F[j].dim(), family.trig_degree,
                                                              hash_stream({tuple_seed, (std::uint64_t)j})));
        }
        auto lv = lambda_functional(P, F, tuple, eta, lambda_grid[k], spec);
        values[idx] = lv.value;
        flags[idx] = lv.converged ? 1 : 0;
    });

    result.values.resize(K);
    result.converged.resize(K);
    for (size_t k = 0; k < K; ++k) {
        std::complex<double> worst = values[k * S];
        bool all_conv = flags[k * S] != 0;
        for (size_t s = 1; s < S; ++s) {
            if (std::abs(values[k * S + s]) > std::abs(worst)) worst = values[k * S + s];
            all_conv = all_conv && flags[k * S + s] != 0;
        }
        result.values[k] = worst;
        result.converged[k] = all_conv ? 1 : 0;
    }

    std::vector<double> xs, ys;
    for (size_t k = K / 2; k < K; ++k) {
        if (!result.converged[k]) continue;
        const double mag = std::abs(result.values[k]);
        if (mag <= 0 || lambda_grid[k] <= 0) continue;
        xs.push_back(std::log(lambda_grid[k]));
        ys.push_back(std::log(mag));
    }
    result.fit_points = (int)xs.size();
    if (result.fit_points >= 4) {
        auto fit = least_squares_line(xs, ys);
        result.epsilon_hat = -fit.slope;
        result.intercept = fit.intercept;
        result.fit_r2 = fit.r2;
        result.fit_ok = fit.ok;
    }
    return result;
}

}  // namespace oscidecay

#endif
