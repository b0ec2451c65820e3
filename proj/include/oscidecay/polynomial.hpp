// Sparse multivariate polynomials with exact rational coefficients.
//
// Monomials are ordered graded-lexicographically (total degree first, then
// the exponent vector componentwise); that order is the canonical one for
// printing and for coefficient-vector enumeration throughout the library.

#ifndef OSCIDECAY_POLYNOMIAL_HPP
#define OSCIDECAY_POLYNOMIAL_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscidecay/rational.hpp"

namespace oscidecay {

struct Monomial {
    std::vector<int> exponents;

    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {
        for (int v : exponents)
            if (v < 0) throw std::invalid_argument("negative exponent");
    }

    int dimension() const { return (int)exponents.size(); }
    int total_degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exponents == b.exponents; }
};

/// Graded-lex comparator: by total degree, ties broken by the exponent vector.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.exponents < b.exponents;
    }
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    explicit Polynomial(int dimension) : dim_(dimension) {
        if (dimension < 0) throw std::invalid_argument("negative dimension");
    }

    static Polynomial zero(int dimension) { return Polynomial(dimension); }

    static Polynomial constant(int dimension, const Rational& c) {
        Polynomial p(dimension);
        p.set_coefficient(Monomial(std::vector<int>(dimension, 0)), c);
        return p;
    }

    /// The coordinate polynomial x_i (0-based).
    static Polynomial variable(int dimension, int i) {
        if (i < 0 || i >= dimension) throw std::out_of_range("variable index");
        std::vector<int> e(dimension, 0);
        e[i] = 1;
        Polynomial p(dimension);
        p.set_coefficient(Monomial(std::move(e)), Rational(1));
        return p;
    }

    static Polynomial from_monomial(const Monomial& mono, const Rational& c) {
        Polynomial p(mono.dimension());
        p.set_coefficient(mono, c);
        return p;
    }

    int dimension() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }

    /// Max total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total_degree(); }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        return terms_.begin()->first.total_degree() == terms_.rbegin()->first.total_degree();
    }

    bool is_constant() const { return degree() <= 0; }

    const TermMap& terms() const { return terms_; }

    Rational coefficient(const Monomial& mono) const {
        auto it = terms_.find(mono);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set_coefficient(const Monomial& mono, const Rational& c) {
        if (mono.dimension() != dim_) throw std::invalid_argument("monomial dimension mismatch");
        if (c == 0)
            terms_.erase(mono);
        else
            terms_[mono] = c;
    }

    void add_term(const Monomial& mono, const Rational& c) {
        if (mono.dimension() != dim_) throw std::invalid_argument("monomial dimension mismatch");
        auto [it, inserted] = terms_.emplace(mono, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& other) {
        require_same_dim(other);
        for (const auto& [mono, c] : other.terms_) add_term(mono, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& other) {
        require_same_dim(other);
        for (const auto& [mono, c] : other.terms_) add_term(mono, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [mono, c] : terms_) c *= s;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same_dim(b);
        Polynomial out(a.dim_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                std::vector<int> e(a.dim_);
                for (int i = 0; i < a.dim_; ++i) e[i] = ma.exponents[i] + mb.exponents[i];
                out.add_term(Monomial(std::move(e)), ca * cb);
            }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    Rational evaluate(std::span<const Rational> x) const {
        if ((int)x.size() != dim_) throw std::invalid_argument("evaluation point dimension mismatch");
        Rational total(0);
        for (const auto& [mono, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < dim_; ++i)
                for (int k = 0; k < mono.exponents[i]; ++k) t *= x[i];
            total += t;
        }
        return total;
    }

    double evaluate(std::span<const double> x) const {
        if ((int)x.size() != dim_) throw std::invalid_argument("evaluation point dimension mismatch");
        double total = 0;
        for (const auto& [mono, c] : terms_) {
            double t = to_double(c);
            for (int i = 0; i < dim_; ++i) {
                const int e = mono.exponents[i];
                for (int k = 0; k < e; ++k) t *= x[i];
            }
            total += t;
        }
        return total;
    }

    Polynomial partial_derivative(int i) const {
        if (i < 0 || i >= dim_) throw std::out_of_range("variable index");
        Polynomial out(dim_);
        for (const auto& [mono, c] : terms_) {
            if (mono.exponents[i] == 0) continue;
            std::vector<int> e = mono.exponents;
            const int k = e[i]--;
            out.add_term(Monomial(std::move(e)), c * k);
        }
        return out;
    }

    /// (w . grad) applied once, exactly.
    Polynomial directional_derivative(std::span<const Rational> w) const {
        if ((int)w.size() != dim_) throw std::invalid_argument("direction dimension mismatch");
        Polynomial out(dim_);
        for (int i = 0; i < dim_; ++i) {
            if (w[i] == 0) continue;
            out += partial_derivative(i) * w[i];
        }
        return out;
    }

    Polynomial homogeneous_component(int deg) const {
        Polynomial out(dim_);
        for (const auto& [mono, c] : terms_)
            if (mono.total_degree() == deg) out.set_coefficient(mono, c);
        return out;
    }

    /// Nonzero homogeneous summands, degrees strictly increasing.
    std::vector<std::pair<int, Polynomial>> homogeneous_parts() const {
        std::vector<std::pair<int, Polynomial>> out;
        for (const auto& [mono, c] : terms_) {
            const int d = mono.total_degree();
            if (out.empty() || out.back().first != d) out.emplace_back(d, Polynomial(dim_));
            out.back().second.set_coefficient(mono, c);
        }
        return out;
    }

    /// Substitutes a single variable by a rational value.
    Polynomial substitute_value(int var, const Rational& value) const {
        if (var < 0 || var >= dim_) throw std::out_of_range("variable index");
        Polynomial out(dim_);
        for (const auto& [mono, c] : terms_) {
            Rational coeff = c;
            for (int k = 0; k < mono.exponents[var]; ++k) coeff *= value;
            if (coeff == 0) continue;
            std::vector<int> e = mono.exponents;
            e[var] = 0;
            out.add_term(Monomial(std::move(e)), coeff);
        }
        return out;
    }

    /// Substitutes x_i -> forms[i]; the forms live in a common target space.
    Polynomial substitute(const std::vector<Polynomial>& forms) const {
        if ((int)forms.size() != dim_) throw std::invalid_argument("substitution arity mismatch");
        const int target_dim = forms.empty() ? 0 : forms[0].dimension();
        for (const auto& f : forms)
            if (f.dimension() != target_dim) throw std::invalid_argument("substitution forms dimension mismatch");
        Polynomial out(target_dim);
        // cache powers of each substituted form
        std::vector<std::vector<Polynomial>> powers(dim_);
        for (int i = 0; i < dim_; ++i) powers[i].push_back(Polynomial::constant(target_dim, Rational(1)));
        for (const auto& [mono, c] : terms_) {
            Polynomial term = Polynomial::constant(target_dim, c);
            for (int i = 0; i < dim_; ++i) {
                const int e = mono.exponents[i];
                while ((int)powers[i].size() <= e) powers[i].push_back(powers[i].back() * forms[i]);
                if (e > 0) term = term * powers[i][e];
            }
            out += term;
        }
        return out;
    }

    /// Crude supremum bound of |P| over the box given by per-axis half-widths
    /// around a center: sum of |coeff| * prod (|center_i| + halfwidth_i)^e_i.
    double magnitude_bound(std::span<const double> center, std::span<const double> halfwidth) const {
        double total = 0;
        for (const auto& [mono, c] : terms_) {
            double t = std::abs(to_double(c));
            for (int i = 0; i < dim_; ++i)
                for (int k = 0; k < mono.exponents[i]; ++k) t *= std::abs(center[i]) + halfwidth[i];
            total += t;
        }
        return total;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        // highest degree first for readability
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [mono, c] = *it;
            Rational a = c;
            if (first) {
                if (a < 0) { out << "-"; a = -a; }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            const bool is_const = mono.total_degree() == 0;
            if (a != 1 || is_const) out << oscidecay::to_string(a);
            bool star = (a != 1 && !is_const);
            for (int i = 0; i < dim_; ++i) {
                const int e = mono.exponents[i];
                if (e == 0) continue;
                if (star) out << "*";
                if (i < (int)names.size())
                    out << names[i];
                else
                    out << "x" << (i + 1);
                if (e > 1) out << "^" << e;
                star = true;
            }
        }
        return out.str();
    }

private:
    void require_same_dim(const Polynomial& other) const {
        if (dim_ != other.dim_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    int dim_;
    TermMap terms_;
};

/// All monomials in `dimension` variables of total degree exactly `deg`,
/// in graded-lex order.
inline std::vector<Monomial> monomials_of_degree(int dimension, int deg) {
    std::vector<Monomial> out;
    std::vector<int> e(dimension, 0);
    // enumerate compositions of deg into `dimension` parts in lex order
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == dimension - 1) {
            e[pos] = remaining;
            out.push_back(Monomial(e));
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            e[pos] = v;
            self(self, pos + 1, remaining - v);
        }
        e[pos] = 0;
    };
    if (dimension == 0) {
        if (deg == 0) out.push_back(Monomial(std::vector<int>{}));
        return out;
    }
    rec(rec, 0, deg);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return GradedLexLess{}(a, b);
    });
    return out;
}

/// All monomials of total degree <= deg, graded-lex ascending.
inline std::vector<Monomial> monomials_up_to_degree(int dimension, int deg) {
    std::vector<Monomial> out;
    for (int d = 0; d <= deg; ++d) {
        auto layer = monomials_of_degree(dimension, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

inline Rational factorial(int n) {
    Rational r(1);
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

/// alpha! = prod_i alpha_i! for a multi-index.
inline Rational multi_factorial(const Monomial& mono) {
    Rational r(1);
    for (int e : mono.exponents) r *= factorial(e);
    return r;
}

}  // namespace oscidecay

#endif
