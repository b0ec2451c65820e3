// Divided-difference corner schemes: finite signed combinations of shifted
// evaluations that annihilate every subspace pullback and return 1 on the
// target polynomial (equivalently r^D in the un-divided single-scale form).
//
// Two constructions are used. When a product of complement directional
// derivatives survives on P, the scheme is a single difference monomial along
// those directions; each subspace is killed by its own factor, so the
// annihilation identity holds for arbitrary independent positive scales.
// Otherwise the scheme combines coordinate-direction difference monomials
// with weights from the dual (apolar) construction; the per-subspace atom
// cancellation is then verified exactly at unit scale, which makes the
// identity valid whenever all scale components are equal.

#ifndef OSCIDECAY_DIFFERENCE_SCHEME_HPP
#define OSCIDECAY_DIFFERENCE_SCHEME_HPP

#include <functional>
#include <map>
#include <optional>

#include "oscidecay/degeneracy.hpp"
#include "oscidecay/polynomial.hpp"
#include "oscidecay/subspace.hpp"

namespace oscidecay {

class DifferenceScheme {
public:
    /// One difference monomial: the product over `slots` of divided
    /// differences along the scheme's generator directions.
    struct Term {
        Rational weight;
        std::vector<int> slots;
    };

    int degree = 0;                        // homogeneity degree D
    std::vector<RatVector> generators;     // shift directions y_alpha, one per slot
    std::vector<Term> terms;
    bool independent_scales = false;       // identity holds for arbitrary positive scales

    int slot_count() const { return (int)generators.size(); }

    /// Unit-scale coefficient of the sign pattern sigma (one bit per slot).
    Rational unit_coefficient(const std::vector<bool>& sigma) const {
        if ((int)sigma.size() != slot_count()) throw std::invalid_argument("pattern size mismatch");
        Rational c(0);
        for (const auto& term : terms) {
            int inside = 0;
            bool supported = true;
            std::vector<bool> in_term(sigma.size(), false);
            for (int s : term.slots) in_term[s] = true;
            for (size_t k = 0; k < sigma.size(); ++k) {
                if (!sigma[k]) continue;
                if (!in_term[k]) { supported = false; break; }
                ++inside;
            }
            if (!supported) continue;
            const int parity = (int)term.slots.size() - inside;
            c += (parity % 2 == 0) ? term.weight : -term.weight;
        }
        return c;
    }

    /// Sum over all sign patterns of |unit coefficient|; the constant
    /// (mass)^{1/D} bounds the admissible smallest scale in the sublevel
    /// corner obstruction.
    Rational coefficient_mass() const {
        Rational mass(0);
        // nonempty patterns live inside a single term's slot block
        Rational empty_sum(0);
        for (const auto& term : terms) {
            const int sz = (int)term.slots.size();
            Rational w = term.weight < 0 ? -term.weight : term.weight;
            Rational patterns(0);
            // (2^sz - 1) patterns, all with |coefficient| = |weight|
            Rational pow2(1);
            for (int k = 0; k < sz; ++k) pow2 *= 2;
            patterns = pow2 - 1;
            mass += w * patterns;
            empty_sum += (sz % 2 == 0) ? term.weight : -term.weight;
        }
        mass += empty_sum < 0 ? -empty_sum : empty_sum;
        return mass;
    }

    double corner_constant() const {
        return std::pow(to_double(coefficient_mass()), 1.0 / degree);
    }

    /// All corner offsets sum_alpha r_alpha sigma_alpha y_alpha over the
    /// 2^|A| sign patterns, in fixed pattern order.
    std::vector<std::vector<double>> corner_offsets(const std::vector<double>& r) const {
        if ((int)r.size() != slot_count()) throw std::invalid_argument("scale count mismatch");
        const int m = generators.empty() ? 0 : (int)generators[0].size();
        std::vector<std::vector<double>> out;
        out.reserve(1u << slot_count());
        for (unsigned mask = 0; mask < (1u << slot_count()); ++mask) {
            std::vector<double> y(m, 0.0);
            for (int k = 0; k < slot_count(); ++k) {
                if (!(mask >> k & 1)) continue;
                for (int i = 0; i < m; ++i) y[i] += r[k] * to_double(generators[k][i]);
            }
            out.push_back(std::move(y));
        }
        return out;
    }
};

namespace detail {

// enumerate (corner point offset, signed weight) pairs of one term at unit
// scale, as exact rationals
inline void for_each_term_corner(const DifferenceScheme& S, const DifferenceScheme::Term& term,
                                 const std::function<void(const RatVector&, const Rational&)>& fn) {
    const int m = (int)S.generators[0].size();
    const int sz = (int)term.slots.size();
    for (unsigned mask = 0; mask < (1u << sz); ++mask) {
        RatVector y(m, Rational(0));
        int chosen = 0;
        for (int k = 0; k < sz; ++k) {
            if (!(mask >> k & 1)) continue;
            ++chosen;
            const auto& dir = S.generators[term.slots[k]];
            for (int i = 0; i < m; ++i) y[i] += dir[i];
        }
        const int parity = sz - chosen;
        fn(y, parity % 2 == 0 ? term.weight : -term.weight);
    }
}

// exact per-subspace atom cancellation at unit scale: the pushforward of the
// scheme's corner measure under each projection must vanish
inline bool unit_scale_cancellation(const DifferenceScheme& S, const SubspaceFamily& F) {
    for (int j = 0; j < F.size(); ++j) {
        std::map<RatVector, Rational> atoms;
        for (const auto& term : S.terms)
            for_each_term_corner(S, term, [&](const RatVector& y, const Rational& w) {
                atoms[F[j].project(y)] += w;
            });
        for (const auto& [pt, w] : atoms)
            if (w != 0) return false;
    }
    return true;
}

}  // namespace detail

/// Builds the corner scheme for a nonzero homogeneous polynomial that is
/// nondegenerate relative to the family; returns nothing when it is
/// degenerate. Throws when the input is not homogeneous.
inline std::optional<DifferenceScheme> difference_scheme(const Polynomial& P,
                                                         const SubspaceFamily& F) {
    if (!P.is_homogeneous() || P.is_zero())
        throw std::invalid_argument("difference scheme requires a nonzero homogeneous polynomial");
    if (P.dimension() != F.ambient()) throw std::invalid_argument("polynomial/family dimension mismatch");
    const int m = F.ambient();
    const int D = P.degree();

    if (auto witness = simple_witness(P, F)) {
        DifferenceScheme S;
        S.degree = D;
        S.independent_scales = true;
        Polynomial Q = P;
        for (const auto& w : *witness) {
            S.generators.push_back(w);
            Q = Q.directional_derivative(w);
        }
        // fill the remaining slots with coordinate directions taken from the
        // leading monomial, keeping the iterated derivative nonzero
        while (Q.degree() > 0) {
            const Monomial lead = Q.terms().rbegin()->first;
            int var = 0;
            while (lead.exponents[var] == 0) ++var;
            RatVector dir(m, Rational(0));
            dir[var] = 1;
            S.generators.push_back(dir);
            Q = Q.partial_derivative(var);
        }
        const Rational value = Q.is_zero() ? Rational(0) : Q.terms().begin()->second;
        if (value == 0) throw std::logic_error("witness product collapsed to zero");
        DifferenceScheme::Term term;
        term.weight = 1 / value;
        for (int k = 0; k < D; ++k) term.slots.push_back(k);
        S.terms.push_back(std::move(term));
        return S;
    }

    auto op = dual_annihilating_operator(P, F);
    if (!op) return std::nullopt;

    auto build = [&](const std::vector<std::pair<Monomial, Rational>>& b) {
        DifferenceScheme S;
        S.degree = D;
        S.independent_scales = false;
        Rational value(0);
        for (const auto& [beta, coeff] : b) value += coeff * multi_factorial(beta) * P.coefficient(beta);
        if (value == 0) throw std::logic_error("dual weights do not pair with the polynomial");
        for (const auto& [beta, coeff] : b) {
            DifferenceScheme::Term term;
            term.weight = coeff / value;
            for (int i = 0; i < m; ++i) {
                for (int k = 0; k < beta.exponents[i]; ++k) {
                    RatVector dir(m, Rational(0));
                    dir[i] = 1;
                    term.slots.push_back(S.slot_count());
                    S.generators.push_back(std::move(dir));
                }
            }
            S.terms.push_back(std::move(term));
        }
        return S;
    };

    std::vector<std::pair<Monomial, Rational>> weights;
    for (const auto& [beta, c] : op->symbol.terms()) weights.emplace_back(beta, c);
    DifferenceScheme S = build(weights);
    if (detail::unit_scale_cancellation(S, F)) return S;

    // The dual weights annihilate the degree-D pullbacks but their corner
    // measure does not cancel pointwise on every subspace. Re-solve for
    // weights under the full atom-cancellation constraints.
    auto betas = monomials_of_degree(m, D);
    RatMatrix constraints;
    for (int j = 0; j < F.size(); ++j) {
        std::map<RatVector, RatVector> rows;  // projected atom -> row over betas
        for (size_t bi = 0; bi < betas.size(); ++bi) {
            DifferenceScheme probe;
            probe.degree = D;
            DifferenceScheme::Term term;
            term.weight = 1;
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < betas[bi].exponents[i]; ++k) {
                    RatVector dir(m, Rational(0));
                    dir[i] = 1;
                    term.slots.push_back(probe.slot_count());
                    probe.generators.push_back(std::move(dir));
                }
            detail::for_each_term_corner(probe, term, [&](const RatVector& y, const Rational& w) {
                auto [it, inserted] = rows.try_emplace(F[j].project(y), RatVector(betas.size(), Rational(0)));
                it->second[bi] += w;
            });
        }
        for (auto& [pt, row] : rows) constraints.push_back(std::move(row));
    }
    RatVector pairing(betas.size());
    for (size_t bi = 0; bi < betas.size(); ++bi)
        pairing[bi] = multi_factorial(betas[bi]) * P.coefficient(betas[bi]);
    constraints.push_back(pairing);
    RatVector rhs(constraints.size(), Rational(0));
    rhs.back() = 1;
    auto solution = solve(std::move(constraints), std::move(rhs));
    if (!solution)
        throw std::runtime_error("no corner scheme with exact pullback cancellation exists for this input");
    weights.clear();
    for (size_t bi = 0; bi < betas.size(); ++bi)
        if ((*solution)[bi] != 0) weights.emplace_back(betas[bi], (*solution)[bi]);
    S = build(weights);
    if (!detail::unit_scale_cancellation(S, F))
        throw std::logic_error("constrained scheme failed its own cancellation check");
    return S;
}

/// Divided-difference application at positive scales r, one scale per slot:
/// sum over corners of c_{y,r} g(x + y). The callable receives exact corner
/// coordinates.
inline double apply_scheme(const DifferenceScheme& S,
                           const std::function<double(const RatVector&)>& g, const RatVector& x,
                           const RatVector& r) {
    if ((int)r.size() != S.slot_count()) throw std::invalid_argument("scale count mismatch");
    for (const auto& q : r)
        if (q <= 0) throw std::invalid_argument("scales must be positive");
    const int m = (int)x.size();
    double total = 0, comp = 0;  // Kahan accumulation
    for (const auto& term : S.terms) {
        Rational denom(1);
        for (int s : term.slots) denom *= r[s];
        const int sz = (int)term.slots.size();
        for (unsigned mask = 0; mask < (1u << sz); ++mask) {
            RatVector point = x;
            int chosen = 0;
            for (int k = 0; k < sz; ++k) {
                if (!(mask >> k & 1)) continue;
                ++chosen;
                const int slot = term.slots[k];
                for (int i = 0; i < m; ++i) point[i] += r[slot] * S.generators[slot][i];
            }
            Rational coeff = term.weight / denom;
            if ((sz - chosen) % 2 != 0) coeff = -coeff;
            const double contrib = to_double(coeff) * g(point);
            const double t = total + contrib;
            comp += std::abs(total) >= std::abs(contrib) ? (total - t) + contrib : (contrib - t) + total;
            total = t;
        }
    }
    return total + comp;
}

/// Same application, exactly, for polynomial inputs.
inline Rational apply_scheme_exact(const DifferenceScheme& S, const Polynomial& g,
                                   const RatVector& x, const RatVector& r) {
    if ((int)r.size() != S.slot_count()) throw std::invalid_argument("scale count mismatch");
    for (const auto& q : r)
        if (q <= 0) throw std::invalid_argument("scales must be positive");
    const int m = (int)x.size();
    Rational total(0);
    for (const auto& term : S.terms) {
        Rational denom(1);
        for (int s : term.slots) denom *= r[s];
        const int sz = (int)term.slots.size();
        for (unsigned mask = 0; mask < (1u << sz); ++mask) {
            RatVector point = x;
            int chosen = 0;
            for (int k = 0; k < sz; ++k) {
                if (!(mask >> k & 1)) continue;
                ++chosen;
                const int slot = term.slots[k];
                for (int i = 0; i < m; ++i) point[i] += r[slot] * S.generators[slot][i];
            }
            Rational coeff = term.weight / denom;
            if ((sz - chosen) % 2 != 0) coeff = -coeff;
            total += coeff * g.evaluate(std::span<const Rational>(point));
        }
    }
    return total;
}

/// Un-divided single-scale form: sum over corners of c_beta g(x + r y_beta);
/// on the scheme's polynomial this equals r^D exactly.
inline Rational apply_scheme_scale_exact(const DifferenceScheme& S, const Polynomial& g,
                                         const RatVector& x, const Rational& scale) {
    if (scale <= 0) throw std::invalid_argument("scale must be positive");
    const int m = (int)x.size();
    Rational total(0);
    for (const auto& term : S.terms) {
        const int sz = (int)term.slots.size();
        for (unsigned mask = 0; mask < (1u << sz); ++mask) {
            RatVector point = x;
            int chosen = 0;
            for (int k = 0; k < sz; ++k) {
                if (!(mask >> k & 1)) continue;
                ++chosen;
                const int slot = term.slots[k];
                for (int i = 0; i < m; ++i) point[i] += scale * S.generators[slot][i];
            }
            Rational coeff = term.weight;
            if ((sz - chosen) % 2 != 0) coeff = -coeff;
            total += coeff * g.evaluate(std::span<const Rational>(point));
        }
    }
    return total;
}

}  // namespace oscidecay

#endif
