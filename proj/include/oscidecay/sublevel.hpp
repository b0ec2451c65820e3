// Monte Carlo estimation of sublevel-set measures |{x in B : |P - sum g_j o
// pi_j| < eps}|, the scaling fit in eps, the corner-configuration obstruction
// implied by a difference scheme, and the shear-lifting equivalence used to
// reduce corner configurations to the axis-parallel case.

#ifndef OSCIDECAY_SUBLEVEL_HPP
#define OSCIDECAY_SUBLEVEL_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <memory>

#include "oscidecay/difference_scheme.hpp"
#include "oscidecay/fit.hpp"
#include "oscidecay/parallel.hpp"
#include "oscidecay/rng.hpp"
#include "oscidecay/subspace.hpp"

namespace oscidecay {

/// Real-valued evaluable function on subspace frame coordinates.
class RealFunction {
public:
    static RealFunction zero(int dimension) {
        return RealFunction(dimension, [](std::span<const double>) { return 0.0; });
    }

    /// Exact polynomial on the frame coordinates (e.g. best-fit minimizers).
    static RealFunction polynomial(Polynomial p) {
        auto shared = std::make_shared<Polynomial>(std::move(p));
        return RealFunction(shared->dimension(),
                            [shared](std::span<const double> u) { return shared->evaluate(u); });
    }

    /// Seeded real trigonometric polynomial with sup norm <= 1.
    static RealFunction trig_polynomial(int dimension, int degree, std::uint64_t seed) {
        Rng rng(seed);
        auto freq = std::make_shared<std::vector<double>>(dimension);
        bool nonzero = false;
        for (auto& w : *freq) {
            w = (double)rng.uniform_int(-2, 2);
            if (w != 0) nonzero = true;
        }
        if (!nonzero) (*freq)[0] = 1;
        auto amps = std::make_shared<std::vector<std::pair<double, double>>>();
        double mass = 0;
        for (int k = 1; k <= degree; ++k) {
            const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
            amps->push_back({a, b});
            mass += std::abs(a) + std::abs(b);
        }
        if (mass == 0) { (*amps)[0].first = 1; mass = 1; }
        for (auto& [a, b] : *amps) { a /= mass; b /= mass; }
        return RealFunction(dimension, [freq, amps](std::span<const double> u) {
            double theta = 0;
            for (size_t i = 0; i < u.size(); ++i) theta += (*freq)[i] * u[i];
            double v = 0;
            for (size_t k = 0; k < amps->size(); ++k)
                v += (*amps)[k].first * std::cos((double)(k + 1) * theta) +
                     (*amps)[k].second * std::sin((double)(k + 1) * theta);
            return v;
        });
    }

    int dimension() const { return dim_; }
    double operator()(std::span<const double> u) const { return fn_(u); }

    /// Pointwise difference g - p with p a polynomial on the same coordinates.
    friend RealFunction operator-(const RealFunction& g, const Polynomial& p) {
        auto shared = std::make_shared<Polynomial>(p);
        auto base = g;
        return RealFunction(g.dim_, [base, shared](std::span<const double> u) {
            return base(u) - shared->evaluate(u);
        });
    }

private:
    RealFunction(int dim, std::function<double(std::span<const double>)> fn)
        : dim_(dim), fn_(std::move(fn)) {}

    int dim_;
    std::function<double(std::span<const double>)> fn_;
};

struct Box {
    std::vector<double> lo, hi;

    int dimension() const { return (int)lo.size(); }
    double volume() const {
        double v = 1;
        for (size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }
};

struct SublevelProblem {
    Polynomial P;
    SubspaceFamily F;
    std::vector<RealFunction> g;  // one per subspace
    Box region;
    double epsilon = 1e-2;

    void validate() const {
        if (P.dimension() != F.ambient()) throw std::invalid_argument("polynomial/family dimension mismatch");
        if ((int)g.size() != F.size()) throw std::invalid_argument("one g per subspace required");
        if (region.dimension() != F.ambient()) throw std::invalid_argument("region dimension mismatch");
        if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    }

    /// F(x) = P(x) - sum_j g_j(frame coordinates of pi_j x).
    double difference(std::span<const double> x,
                      const std::vector<std::vector<std::vector<double>>>& coords) const {
        double v = P.evaluate(x);
        std::vector<double> u;
        for (int j = 0; j < F.size(); ++j) {
            const auto& M = coords[j];
            u.assign(M.size(), 0.0);
            for (size_t r = 0; r < M.size(); ++r) {
                double s = 0;
                for (size_t i = 0; i < x.size(); ++i) s += M[r][i] * x[i];
                u[r] = s;
            }
            v -= g[j](std::span<const double>(u));
        }
        return v;
    }

    std::vector<std::vector<std::vector<double>>> coordinate_matrices() const {
        std::vector<std::vector<std::vector<double>>> coords;
        for (int j = 0; j < F.size(); ++j) {
            std::vector<std::vector<double>> M;
            for (const auto& form : F[j].canonical_frame_coordinates()) {
                std::vector<double> row(F.ambient(), 0.0);
                for (const auto& [mono, c] : form.terms())
                    for (int i = 0; i < F.ambient(); ++i)
                        if (mono.exponents[i] == 1) row[i] = to_double(c);
                M.push_back(std::move(row));
            }
            coords.push_back(std::move(M));
        }
        return coords;
    }
};

struct SublevelEstimate {
    double epsilon = 0;
    long long samples = 0;
    long long hits = 0;
    double estimate = 0;
    double standard_error = 0;
};

/// Uniform i.i.d. sampling over the region; sample i is drawn from the stream
/// (seed, i), so runs with a common seed share their points exactly.
inline SublevelEstimate sublevel_measure(const SublevelProblem& prob, long long samples,
                                         std::uint64_t seed, int threads = 1) {
    prob.validate();
    if (samples < 10000) throw std::invalid_argument("sample count must be at least 10^4");
    const auto coords = prob.coordinate_matrices();
    const int m = prob.F.ambient();
    const double volume = prob.region.volume();

    const int workers = std::max(1, threads);
    std::vector<long long> counts(workers, 0);
    parallel_for(workers, workers, [&](std::size_t t) {
        std::vector<double> x(m);
        long long local = 0;
        for (long long i = (long long)t; i < samples; i += workers) {
            Rng rng(seed, {(std::uint64_t)i});
            for (int d = 0; d < m; ++d) x[d] = rng.uniform(prob.region.lo[d], prob.region.hi[d]);
            if (std::abs(prob.difference(x, coords)) < prob.epsilon) ++local;
        }
        counts[t] = local;
    });
    long long hits = 0;
    for (long long c : counts) hits += c;

    SublevelEstimate est;
    est.epsilon = prob.epsilon;
    est.samples = samples;
    est.hits = hits;
    const double p = (double)hits / (double)samples;
    est.estimate = volume * p;
    est.standard_error = volume * std::sqrt(p * (1 - p) / (double)samples);
    return est;
}

struct SublevelScaling {
    std::vector<SublevelEstimate> estimates;
    double delta_hat = 0;
    double intercept = 0;
    double r2 = 0;
    int fit_points = 0;
    bool fit_ok = false;
};

/// Measures across a decreasing eps grid and fits log-estimate against
/// log-eps over the points with at least `min_hits` hits.
inline SublevelScaling sublevel_scaling(SublevelProblem prob, const std::vector<double>& eps_grid,
                                        long long samples, std::uint64_t seed, int threads = 1,
                                        long long min_hits = 100) {
    if (eps_grid.size() < 4) throw std::invalid_argument("eps grid needs at least 4 points");
    for (size_t k = 1; k < eps_grid.size(); ++k)
        if (eps_grid[k] >= eps_grid[k - 1]) throw std::invalid_argument("eps grid must be decreasing");
    SublevelScaling out;
    std::vector<double> xs, ys;
    for (double eps : eps_grid) {
        prob.epsilon = eps;
        auto est = sublevel_measure(prob, samples, seed, threads);
        if (est.hits >= min_hits && est.estimate > 0) {
            xs.push_back(std::log(eps));
            ys.push_back(std::log(est.estimate));
        }
        out.estimates.push_back(est);
    }
    out.fit_points = (int)xs.size();
    if (out.fit_points >= 2) {
        auto fit = least_squares_line(xs, ys);
        out.delta_hat = fit.slope;
        out.intercept = fit.intercept;
        out.r2 = fit.r2;
        out.fit_ok = fit.ok;
    }
    return out;
}

struct CornerObstructionReport {
    long long trials = 0;
    long long violations = 0;   // corner sets fully inside E_eps at admissible scales
    double min_margin = 0;      // smallest max-corner |F| / eps observed
    double scale_threshold = 0; // C_S eps^{1/D}
};

/// Samples (x, r) with every r component above C_S eps^{1/D} and checks that
/// the corner set never lands entirely inside the sublevel set. C_S is the
/// coefficient-mass constant of the scheme.
inline CornerObstructionReport corner_obstruction_check(const DifferenceScheme& S,
                                                        const SublevelProblem& prob,
                                                        long long trials, std::uint64_t seed,
                                                        int threads = 1) {
    prob.validate();
    CornerObstructionReport report;
    report.trials = trials;
    report.scale_threshold = S.corner_constant() * std::pow(prob.epsilon, 1.0 / S.degree);
    if (report.scale_threshold >= 1.0)
        throw std::invalid_argument("epsilon too large: no admissible scales above the corner threshold");
    const auto coords = prob.coordinate_matrices();
    const int m = prob.F.ambient();
    const int slots = S.slot_count();

    const int workers = std::max(1, threads);
    std::vector<long long> violations(workers, 0);
    std::vector<double> margins(workers, std::numeric_limits<double>::infinity());
    parallel_for(workers, workers, [&](std::size_t t) {
        std::vector<double> x(m), r(slots);
        for (long long i = (long long)t; i < trials; i += workers) {
            Rng rng(seed, {(std::uint64_t)i});
            for (int d = 0; d < m; ++d) x[d] = rng.uniform(prob.region.lo[d], prob.region.hi[d]);
            for (int k = 0; k < slots; ++k) r[k] = rng.uniform(report.scale_threshold, 1.0);
            double worst_corner = 0;
            for (const auto& offset : S.corner_offsets(r)) {
                std::vector<double> pt(m);
                for (int d = 0; d < m; ++d) pt[d] = x[d] + offset[d];
                worst_corner = std::max(worst_corner, std::abs(prob.difference(pt, coords)));
            }
            const double margin = worst_corner / prob.epsilon;
            margins[t] = std::min(margins[t], margin);
            if (margin < 1.0) ++violations[t];
        }
    });
    report.min_margin = std::numeric_limits<double>::infinity();
    for (int t = 0; t < workers; ++t) {
        report.violations += violations[t];
        report.min_margin = std::min(report.min_margin, margins[t]);
    }
    return report;
}

struct ShearLiftReport {
    long long trials = 0;
    long long failures = 0;
    bool determinant_ok = false;
};

/// Verifies, on exact rational samples, the equivalence
///   x + sum r_a s_a y_a in E  <=>  T(x,s) + (0, sum r_a s_a e_a) in T(E x B)
/// for the shear T(x,t) = (x - sum t_a y_a, t), and that the linear part of T
/// has determinant one.
inline ShearLiftReport shear_lift_check(const std::vector<RatVector>& Y,
                                        const std::function<bool(const RatVector&)>& in_E,
                                        long long trials, std::uint64_t seed) {
    if (Y.empty()) throw std::invalid_argument("generator set must be nonempty");
    const int m = (int)Y[0].size();
    const int A = (int)Y.size();
    ShearLiftReport report;
    report.trials = trials;

    // linear part [[I, -Y], [0, I]] on R^{m+A}
    RatMatrix L = identity_matrix(m + A);
    for (int a = 0; a < A; ++a)
        for (int i = 0; i < m; ++i) L[i][m + a] = -Y[a][i];
    report.determinant_ok = determinant(L) == 1;

    // the lifted box B must contain every sampled t = s + sum r_a sigma_a e_a;
    // samples below stay within |s_a| + r_a <= 24
    const Rational box_bound = make_rational(24);

    for (long long i = 0; i < trials; ++i) {
        Rng rng(seed, {(std::uint64_t)i});
        RatVector x(m), s(A), r(A);
        std::vector<bool> sigma(A);
        for (auto& e : x) e = make_rational(rng.uniform_int(-40, 40), rng.uniform_int(1, 8));
        for (auto& e : s) e = make_rational(rng.uniform_int(-16, 16), rng.uniform_int(1, 8));
        for (auto& e : r) e = make_rational(rng.uniform_int(1, 16), rng.uniform_int(1, 8));
        for (int a = 0; a < A; ++a) sigma[a] = rng.uniform() < 0.5;

        // left side: x + sum r_a sigma_a y_a in E
        RatVector shifted = x;
        for (int a = 0; a < A; ++a) {
            if (!sigma[a]) continue;
            for (int i2 = 0; i2 < m; ++i2) shifted[i2] += r[a] * Y[a][i2];
        }
        const bool lhs = in_E(shifted);

        // right side: z = T(x,s) + (0, sum r_a sigma_a e_a); z in T(E x B)
        // iff z_x + sum z_t,a y_a in E and z_t in B
        RatVector zx = x;
        for (int a = 0; a < A; ++a)
            for (int i2 = 0; i2 < m; ++i2) zx[i2] -= s[a] * Y[a][i2];
        RatVector zt = s;
        for (int a = 0; a < A; ++a)
            if (sigma[a]) zt[a] += r[a];
        bool in_box = true;
        for (int a = 0; a < A; ++a)
            if (zt[a] > box_bound || zt[a] < -box_bound) in_box = false;
        RatVector unshear = zx;
        for (int a = 0; a < A; ++a)
            for (int i2 = 0; i2 < m; ++i2) unshear[i2] += zt[a] * Y[a][i2];
        const bool rhs = in_box && in_E(unshear);

        if (lhs != rhs) ++report.failures;
    }
    return report;
}

}  // namespace oscidecay

#endif
