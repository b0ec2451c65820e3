// Degeneracy of polynomials relative to a family of subspaces: the exact
// membership test against the span of subspace pullbacks, the relative norm
// (distance to that span), the dual annihilating differential operator, and
// the search for products of directional derivatives that survive on P.

#ifndef OSCIDECAY_DEGENERACY_HPP
#define OSCIDECAY_DEGENERACY_HPP

#include <cmath>
#include <optional>
#include <utility>

#include "oscidecay/linalg.hpp"
#include "oscidecay/polynomial.hpp"
#include "oscidecay/subspace.hpp"

namespace oscidecay {

struct DegenerateBasis {
    struct Generator {
        int subspace;      // index into the family
        Monomial source;   // monomial on the subspace frame coordinates
        Polynomial poly;   // its pullback to the ambient space
    };
    int degree = 0;
    std::vector<Generator> generators;
    int rank = 0;
};

namespace detail {

inline std::vector<Rational> coefficient_vector(const Polynomial& p,
                                                const std::vector<Monomial>& basis) {
    std::map<Monomial, int, GradedLexLess> index;
    for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], (int)i);
    std::vector<Rational> v(basis.size(), Rational(0));
    for (const auto& [mono, c] : p.terms()) {
        auto it = index.find(mono);
        if (it == index.end()) throw std::logic_error("polynomial support outside basis");
        v[it->second] = c;
    }
    return v;
}

// columns = generator coefficient vectors over the given monomial basis
inline RatMatrix generator_matrix(const std::vector<DegenerateBasis::Generator>& gens,
                                  const std::vector<Monomial>& basis) {
    RatMatrix A(basis.size(), RatVector(gens.size(), Rational(0)));
    for (size_t g = 0; g < gens.size(); ++g) {
        auto col = coefficient_vector(gens[g].poly, basis);
        for (size_t r = 0; r < basis.size(); ++r) A[r][g] = col[r];
    }
    return A;
}

// reassemble per-subspace polynomials (on frame coordinates) from a solution
// coefficient per generator
inline std::vector<Polynomial> assemble_minimizers(
    const SubspaceFamily& F, const std::vector<DegenerateBasis::Generator>& gens,
    const RatVector& coeffs) {
    std::vector<Polynomial> parts;
    parts.reserve(F.size());
    for (int j = 0; j < F.size(); ++j) parts.emplace_back(Polynomial::zero(F.subspace_dim()));
    for (size_t g = 0; g < gens.size(); ++g)
        if (coeffs[g] != 0) parts[gens[g].subspace].add_term(gens[g].source, coeffs[g]);
    return parts;
}

}  // namespace detail

/// Pullbacks of all monomials of degree <= d on each subspace, in the
/// canonical frames, with the exact rank of their coefficient matrix.
inline DegenerateBasis degenerate_basis(const SubspaceFamily& F, int d) {
    if (d < 0) throw std::invalid_argument("degree must be nonnegative");
    DegenerateBasis basis;
    basis.degree = d;
    for (int j = 0; j < F.size(); ++j) {
        const auto coords = F[j].canonical_frame_coordinates();
        for (const auto& mono : monomials_up_to_degree(F[j].dim(), d)) {
            Polynomial p = Polynomial::from_monomial(mono, Rational(1));
            basis.generators.push_back({j, mono, p.substitute(coords)});
        }
    }
    if (!basis.generators.empty()) {
        auto monos = monomials_up_to_degree(F.ambient(), d);
        basis.rank = rank(detail::generator_matrix(basis.generators, monos));
    }
    return basis;
}

struct DegeneracyDecision {
    bool degenerate = false;
    /// Present iff degenerate (and the family is nonempty): per-subspace
    /// polynomials on frame coordinates with P = sum of pullbacks.
    std::optional<std::vector<Polynomial>> decomposition;
};

/// Exact membership of P in the span of the degree-<=deg(P) pullbacks.
/// The empty family follows the convention: degenerate iff constant.
inline DegeneracyDecision is_degenerate(const Polynomial& P, const SubspaceFamily& F) {
    if (P.dimension() != F.ambient()) throw std::invalid_argument("polynomial/family dimension mismatch");
    if (F.empty()) return {P.is_constant(), std::nullopt};
    const int d = std::max(P.degree(), 0);
    auto basis = degenerate_basis(F, d);
    auto monos = monomials_up_to_degree(F.ambient(), d);
    auto A = detail::generator_matrix(basis.generators, monos);
    auto b = detail::coefficient_vector(P, monos);
    auto sol = solve(std::move(A), std::move(b));
    if (!sol) return {false, std::nullopt};
    return {true, detail::assemble_minimizers(F, basis.generators, *sol)};
}

struct RelativeNorm {
    Rational norm_squared;             // exact
    double value = 0;                  // sqrt as a double
    std::vector<Polynomial> minimizers;  // attaining polynomials, frame coordinates
};

/// Distance from P to the span of degree-<=deg(P) pullbacks, in the Euclidean
/// norm on graded-lex monomial coefficients; computed by exact orthogonal
/// projection. Zero exactly when P is degenerate.
inline RelativeNorm relative_norm(const Polynomial& P, const SubspaceFamily& F) {
    if (P.dimension() != F.ambient()) throw std::invalid_argument("polynomial/family dimension mismatch");
    RelativeNorm out;
    if (F.empty()) {
        // distance to the constants, matching the n = 0 degeneracy convention
        Rational s(0);
        for (const auto& [mono, c] : P.terms())
            if (mono.total_degree() > 0) s += c * c;
        out.norm_squared = s;
        out.value = std::sqrt(to_double(s));
        return out;
    }
    const int d = std::max(P.degree(), 0);
    auto basis = degenerate_basis(F, d);
    auto monos = monomials_up_to_degree(F.ambient(), d);
    auto A = detail::generator_matrix(basis.generators, monos);
    auto b = detail::coefficient_vector(P, monos);
    auto coeffs = solve_least_squares(A, b);
    RatVector residual = b;
    for (size_t g = 0; g < coeffs.size(); ++g) {
        if (coeffs[g] == 0) continue;
        for (size_t r = 0; r < residual.size(); ++r) residual[r] -= A[r][g] * coeffs[g];
    }
    out.norm_squared = dot(residual, residual);
    out.value = std::sqrt(to_double(out.norm_squared));
    out.minimizers = detail::assemble_minimizers(F, basis.generators, coeffs);
    return out;
}

/// A constant-coefficient operator identified with its symbol: x^a stands for
/// the mixed partial of multi-index a.
struct DifferentialOperator {
    Polynomial symbol;

    Polynomial apply(const Polynomial& Q) const {
        if (symbol.dimension() != Q.dimension())
            throw std::invalid_argument("operator/polynomial dimension mismatch");
        const int m = Q.dimension();
        Polynomial out(m);
        for (const auto& [alpha, c] : symbol.terms()) {
            for (const auto& [gamma, q] : Q.terms()) {
                std::vector<int> e(m);
                Rational scale = c * q;
                bool ok = true;
                for (int i = 0; i < m && ok; ++i) {
                    if (gamma.exponents[i] < alpha.exponents[i]) { ok = false; break; }
                    e[i] = gamma.exponents[i] - alpha.exponents[i];
                    // falling factorial gamma_i (gamma_i - 1) ... (e_i + 1)
                    for (int k = gamma.exponents[i]; k > e[i]; --k) scale *= k;
                }
                if (ok) out.add_term(Monomial(std::move(e)), scale);
            }
        }
        return out;
    }
};

namespace detail {

// scale a rational vector to a primitive integer vector with positive leading
// (i.e. last nonzero) entry
inline void normalize_primitive(std::vector<Rational>& v) {
    Integer lcm_den(1), gcd_num(0);
    for (const auto& q : v)
        if (q != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den().get_mpz_t());
    for (auto& q : v) q *= lcm_den;
    for (const auto& q : v)
        if (q != 0) mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), q.get_num().get_mpz_t());
    if (gcd_num == 0) return;
    for (auto& q : v) q /= Rational(gcd_num);
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        if (*it == 0) continue;
        if (*it < 0)
            for (auto& q : v) q = -q;
        break;
    }
}

// homogeneous degree-D pullback generators
inline std::vector<DegenerateBasis::Generator> homogeneous_generators(const SubspaceFamily& F,
                                                                      int D) {
    std::vector<DegenerateBasis::Generator> gens;
    for (int j = 0; j < F.size(); ++j) {
        const auto coords = F[j].canonical_frame_coordinates();
        for (const auto& mono : monomials_of_degree(F[j].dim(), D)) {
            Polynomial p = Polynomial::from_monomial(mono, Rational(1));
            gens.push_back({j, mono, p.substitute(coords)});
        }
    }
    return gens;
}

}  // namespace detail

/// For nondegenerate homogeneous P of degree D, constructs the operator whose
/// symbol is the component of P orthogonal, in the apolar inner product
/// <x^a, x^b> = a! delta_ab, to the span of the homogeneous degree-D
/// pullbacks. The result annihilates every degree-D pullback and does not
/// annihilate P; the symbol is scaled to a primitive integer vector. Returns
/// nothing when P is degenerate.
inline std::optional<DifferentialOperator> dual_annihilating_operator(const Polynomial& P,
                                                                      const SubspaceFamily& F) {
    if (!P.is_homogeneous() || P.is_zero())
        throw std::invalid_argument("dual operator requires a nonzero homogeneous polynomial");
    if (P.dimension() != F.ambient()) throw std::invalid_argument("polynomial/family dimension mismatch");
    const int D = P.degree();
    auto monos = monomials_of_degree(F.ambient(), D);
    std::vector<Rational> weights(monos.size());
    for (size_t i = 0; i < monos.size(); ++i) weights[i] = multi_factorial(monos[i]);

    auto gens = detail::homogeneous_generators(F, D);
    auto p_vec = detail::coefficient_vector(P, monos);
    RatVector residual = p_vec;
    if (!gens.empty()) {
        auto G = detail::generator_matrix(gens, monos);
        // weighted normal equations: (G^T W G) c = G^T W p
        RatMatrix Gt = transpose(G);
        RatMatrix WG = G;
        RatVector Wp = p_vec;
        for (size_t r = 0; r < monos.size(); ++r) {
            for (auto& e : WG[r]) e *= weights[r];
            Wp[r] *= weights[r];
        }
        auto coeffs = solve(matmul(Gt, WG), matvec(Gt, Wp));
        if (!coeffs) throw std::logic_error("apolar normal equations inconsistent");
        for (size_t g = 0; g < coeffs->size(); ++g) {
            if ((*coeffs)[g] == 0) continue;
            for (size_t r = 0; r < residual.size(); ++r) residual[r] -= G[r][g] * (*coeffs)[g];
        }
    }
    bool all_zero = true;
    for (const auto& q : residual)
        if (q != 0) { all_zero = false; break; }
    if (all_zero) return std::nullopt;

    detail::normalize_primitive(residual);
    Polynomial symbol(F.ambient());
    for (size_t i = 0; i < monos.size(); ++i)
        if (residual[i] != 0) symbol.set_coefficient(monos[i], residual[i]);
    return DifferentialOperator{std::move(symbol)};
}

/// Searches for directions w_j in the orthogonal complement of V_j such that
/// prod_j (w_j . grad) P is not identically zero. The product is expanded with
/// indeterminate coefficients on a complement basis of each V_j; the result is
/// nonzero iff some choice works, and a concrete integer witness is extracted
/// by deterministic grid evaluation, one indeterminate at a time.
inline std::optional<std::vector<RatVector>> simple_witness(const Polynomial& P,
                                                            const SubspaceFamily& F) {
    if (P.dimension() != F.ambient()) throw std::invalid_argument("polynomial/family dimension mismatch");
    const int m = F.ambient(), n = F.size();
    if (n == 0) {
        // empty product: the identity operator, surviving iff P is nonconstant
        if (!P.is_constant()) return std::vector<RatVector>{};
        return std::nullopt;
    }
    if (P.degree() < n) return std::nullopt;  // n first-order factors kill degree < n

    std::vector<std::vector<RatVector>> complements;
    std::vector<int> offsets;  // start of each block of indeterminates
    int total_t = 0;
    for (int j = 0; j < n; ++j) {
        complements.push_back(F[j].complement_basis());
        offsets.push_back(total_t);
        total_t += (int)complements.back().size();
    }
    const int ext = m + total_t;

    // embed P into the extended ring (x variables first, then t blocks)
    Polynomial Q(ext);
    for (const auto& [mono, c] : P.terms()) {
        std::vector<int> e = mono.exponents;
        e.resize(ext, 0);
        Q.set_coefficient(Monomial(std::move(e)), c);
    }

    for (int j = 0; j < n; ++j) {
        Polynomial next(ext);
        for (size_t k = 0; k < complements[j].size(); ++k) {
            RatVector dir(ext, Rational(0));
            for (int i = 0; i < m; ++i) dir[i] = complements[j][k][i];
            Polynomial deriv = Q.directional_derivative(dir);
            if (deriv.is_zero()) continue;
            next += deriv * Polynomial::variable(ext, m + offsets[j] + (int)k);
        }
        Q = std::move(next);
        if (Q.is_zero()) return std::nullopt;
    }

    // extract: per-variable degree in each indeterminate is at most one
    std::vector<Rational> assignment(total_t, Rational(0));
    for (int t = 0; t < total_t; ++t) {
        Polynomial at_zero = Q.substitute_value(m + t, Rational(0));
        if (!at_zero.is_zero()) {
            Q = std::move(at_zero);
        } else {
            assignment[t] = 1;
            Q = Q.substitute_value(m + t, Rational(1));
        }
    }

    std::vector<RatVector> witness;
    for (int j = 0; j < n; ++j) {
        RatVector w(m, Rational(0));
        for (size_t k = 0; k < complements[j].size(); ++k) {
            const Rational& t = assignment[offsets[j] + k];
            if (t == 0) continue;
            for (int i = 0; i < m; ++i) w[i] += t * complements[j][k][i];
        }
        witness.push_back(std::move(w));
    }
    return witness;
}

namespace detail {

// membership of a homogeneous polynomial in the span of the homogeneous
// degree-D pullbacks (the second statement of the homogeneous-summand lemma)
inline bool homogeneous_degenerate(const Polynomial& H, const SubspaceFamily& F) {
    if (H.is_zero()) return true;
    if (F.empty()) return H.is_constant();
    const int D = H.degree();
    auto monos = monomials_of_degree(F.ambient(), D);
    auto gens = homogeneous_generators(F, D);
    auto A = generator_matrix(gens, monos);
    auto b = coefficient_vector(H, monos);
    return solve(std::move(A), std::move(b)).has_value();
}

}  // namespace detail

/// The highest-degree homogeneous summand of P that is nondegenerate, or
/// nothing when every summand (hence P) is degenerate. Uses the
/// homogeneous-space membership test, a code path independent of
/// is_degenerate.
inline std::optional<std::pair<int, Polynomial>> homogeneous_nondegeneracy_reduction(
    const Polynomial& P, const SubspaceFamily& F) {
    auto parts = P.homogeneous_parts();
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (F.empty()) {
            if (it->first > 0) return *it;
            continue;
        }
        if (!detail::homogeneous_degenerate(it->second, F)) return *it;
    }
    return std::nullopt;
}

/// Checks that each given linear form vanishes on its subspace (throws
/// otherwise) and that every product picking one form per subspace vanishes
/// identically on the union of the subspaces. Exact.
inline bool verify_monomial_generators(const SubspaceFamily& F,
                                       const std::vector<std::vector<Polynomial>>& forms) {
    const int n = F.size(), m = F.ambient();
    if ((int)forms.size() != n) throw std::invalid_argument("one form list per subspace required");
    for (int j = 0; j < n; ++j) {
        for (const auto& form : forms[j]) {
            if (form.dimension() != m || form.degree() > 1)
                throw std::invalid_argument("generators must be linear forms on the ambient space");
            for (const auto& v : F[j].basis())
                if (form.evaluate(std::span<const Rational>(v)) != 0)
                    throw std::invalid_argument("form does not vanish on its subspace");
        }
        if (forms[j].empty()) throw std::invalid_argument("each subspace needs at least one form");
    }

    // restriction of a product to each subspace, via basis parametrisation
    std::vector<std::vector<Polynomial>> restrictions(n);
    for (int i = 0; i < n; ++i) {
        const auto& basis = F[i].basis();
        for (int row = 0; row < m; ++row) {
            Polynomial coord((int)basis.size());
            for (size_t l = 0; l < basis.size(); ++l)
                if (basis[l][row] != 0) coord += Polynomial::variable((int)basis.size(), (int)l) * basis[l][row];
            restrictions[i].push_back(std::move(coord));
        }
    }

    std::vector<size_t> choice(n, 0);
    while (true) {
        Polynomial product = Polynomial::constant(m, Rational(1));
        for (int j = 0; j < n; ++j) product = product * forms[j][choice[j]];
        for (int i = 0; i < n; ++i)
            if (!product.substitute(restrictions[i]).is_zero()) return false;
        int pos = n - 1;
        while (pos >= 0 && ++choice[pos] == forms[pos].size()) choice[pos--] = 0;
        if (pos < 0) break;
    }
    return true;
}

struct NondegeneracyReport {
    bool degenerate = false;
    Rational relative_norm_squared;
    double relative_norm_value = 0;
    std::vector<Polynomial> minimizers;
    std::optional<DifferentialOperator> dual_operator;  // for the top nondegenerate summand
    std::optional<std::vector<RatVector>> witness;
};

inline NondegeneracyReport analyze_polynomial(const Polynomial& P, const SubspaceFamily& F) {
    NondegeneracyReport report;
    auto decision = is_degenerate(P, F);
    report.degenerate = decision.degenerate;
    auto norm = relative_norm(P, F);
    report.relative_norm_squared = norm.norm_squared;
    report.relative_norm_value = norm.value;
    report.minimizers = std::move(norm.minimizers);
    if (!report.degenerate && !F.empty()) {
        if (auto top = homogeneous_nondegeneracy_reduction(P, F))
            report.dual_operator = dual_annihilating_operator(top->second, F);
        report.witness = simple_witness(P, F);
    }
    return report;
}

}  // namespace oscidecay

#endif
