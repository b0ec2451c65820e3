// Bounded test functions fed to the oscillatory functional: the constant,
// seeded random trigonometric polynomials, modulated exponentials tied to the
// evaluation parameter lambda, and smoothed interval indicators.

#ifndef OSCIDECAY_TEST_FUNCTION_HPP
#define OSCIDECAY_TEST_FUNCTION_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "oscidecay/polynomial.hpp"
#include "oscidecay/rng.hpp"

namespace oscidecay {

class TestFunction {
public:
    enum class Kind { constant_one, zero, trig_polynomial, modulated_exponential, smoothed_indicator, custom };

    static TestFunction constant_one(int dimension) { return TestFunction(Kind::constant_one, dimension); }
    static TestFunction zero(int dimension) { return TestFunction(Kind::zero, dimension); }

    /// Random trigonometric polynomial sum_k a_k cos(k w.u) + b_k sin(k w.u)
    /// with an integer frequency direction w, normalised to sup norm <= 1.
    static TestFunction trig_polynomial(int dimension, int degree, std::uint64_t seed) {
        if (degree < 1) throw std::invalid_argument("trig degree must be positive");
        TestFunction f(Kind::trig_polynomial, dimension);
        Rng rng(seed);
        f.frequency_.resize(dimension);
        bool nonzero = false;
        for (auto& w : f.frequency_) {
            w = (double)rng.uniform_int(-2, 2);
            if (w != 0) nonzero = true;
        }
        if (!nonzero) f.frequency_[0] = 1;
        double mass = 0;
        for (int k = 1; k <= degree; ++k) {
            const std::complex<double> a(rng.uniform(-1, 1), rng.uniform(-1, 1));
            const std::complex<double> b(rng.uniform(-1, 1), rng.uniform(-1, 1));
            f.cos_coeffs_.push_back(a);
            f.sin_coeffs_.push_back(b);
            mass += std::abs(a) + std::abs(b);
        }
        if (mass == 0) { f.cos_coeffs_[0] = 1.0; mass = 1.0; }
        for (auto& c : f.cos_coeffs_) c /= mass;
        for (auto& c : f.sin_coeffs_) c /= mass;
        return f;
    }

    /// e^{-i lambda p(u)}; lambda is supplied at evaluation time so the
    /// modulation always matches the functional being probed.
    static TestFunction modulated_exponential(Polynomial phase) {
        TestFunction f(Kind::modulated_exponential, phase.dimension());
        f.phase_ = std::move(phase);
        return f;
    }

    /// Indicator of [a, b] with smooth shoulders of the given width (dim 1).
    static TestFunction smoothed_indicator(double a, double b, double width) {
        if (!(a < b) || width <= 0) throw std::invalid_argument("bad smoothed indicator parameters");
        TestFunction f(Kind::smoothed_indicator, 1);
        f.interval_ = {a, b};
        f.width_ = width;
        return f;
    }

    /// Arbitrary evaluable function (linear combinations, tabulated data).
    static TestFunction custom(int dimension,
                               std::function<std::complex<double>(std::span<const double>, double)> fn) {
        TestFunction f(Kind::custom, dimension);
        f.custom_ = std::move(fn);
        return f;
    }

    Kind kind() const { return kind_; }
    int dimension() const { return dim_; }
    const Polynomial& phase() const { return phase_; }

    std::complex<double> operator()(std::span<const double> u, double lambda) const {
        if ((int)u.size() != dim_) throw std::invalid_argument("test function dimension mismatch");
        switch (kind_) {
            case Kind::constant_one: return 1.0;
            case Kind::zero: return 0.0;
            case Kind::trig_polynomial: {
                double theta = 0;
                for (int i = 0; i < dim_; ++i) theta += frequency_[i] * u[i];
                std::complex<double> v = 0;
                for (size_t k = 0; k < cos_coeffs_.size(); ++k) {
                    const double kt = (double)(k + 1) * theta;
                    v += cos_coeffs_[k] * std::cos(kt) + sin_coeffs_[k] * std::sin(kt);
                }
                return v;
            }
            case Kind::modulated_exponential: {
                const double p = phase_.evaluate(u);
                const double arg = -lambda * p;
                return {std::cos(arg), std::sin(arg)};
            }
            case Kind::custom:
                return custom_(u, lambda);
            case Kind::smoothed_indicator: {
                const double t = u[0];
                auto shoulder = [&](double s) {
                    // smooth step from 0 to 1 over [0, 1]
                    if (s <= 0) return 0.0;
                    if (s >= 1) return 1.0;
                    const double e1 = std::exp(-1.0 / s), e2 = std::exp(-1.0 / (1.0 - s));
                    return e1 / (e1 + e2);
                };
                return shoulder((t - (interval_.first - width_)) / width_) *
                       shoulder(((interval_.second + width_) - t) / width_);
            }
        }
        return 0.0;
    }

private:
    TestFunction(Kind kind, int dim) : kind_(kind), dim_(dim), phase_(std::max(dim, 0)) {
        if (dim < 1) throw std::invalid_argument("test function dimension must be positive");
    }

    Kind kind_;
    int dim_;
    Polynomial phase_;
    std::vector<double> frequency_;
    std::vector<std::complex<double>> cos_coeffs_, sin_coeffs_;
    std::pair<double, double> interval_{0, 1};
    double width_ = 0.1;
    std::function<std::complex<double>(std::span<const double>, double)> custom_;
};

}  // namespace oscidecay

#endif
