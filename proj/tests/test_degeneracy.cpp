#include <catch2/catch_amalgamated.hpp>

#include "oscidecay/degeneracy.hpp"
#include "oscidecay/rng.hpp"

using namespace oscidecay;

namespace {

RatVector ratvec(std::initializer_list<long> entries) {
    RatVector v;
    for (long e : entries) v.push_back(make_rational(e));
    return v;
}

SubspaceFamily axes2() {
    RatVector e1{Rational(1), Rational(0)}, e2{Rational(0), Rational(1)};
    return SubspaceFamily(2, {Subspace(2, {e1}), Subspace(2, {e2})});
}

// V1 = {x1 = x2 = 0}, V2 = {x3 = x4 = 0}, V3 = {x1 = x3, x2 = x4}
SubspaceFamily quadric_family() {
    Subspace V1(4, {ratvec({0, 0, 1, 0}), ratvec({0, 0, 0, 1})});
    Subspace V2(4, {ratvec({1, 0, 0, 0}), ratvec({0, 1, 0, 0})});
    Subspace V3(4, {ratvec({1, 0, 1, 0}), ratvec({0, 1, 0, 1})});
    return SubspaceFamily(4, {V1, V2, V3});
}

// x1 x4 - x2 x3
Polynomial quadric() {
    Polynomial p(4);
    p.set_coefficient(Monomial({1, 0, 0, 1}), Rational(1));
    p.set_coefficient(Monomial({0, 1, 1, 0}), Rational(-1));
    return p;
}

Polynomial x1x2() {
    Polynomial p(2);
    p.set_coefficient(Monomial({1, 1}), Rational(1));
    return p;
}

Polynomial reconstruct(const SubspaceFamily& F, const std::vector<Polynomial>& parts) {
    Polynomial sum(F.ambient());
    for (int j = 0; j < F.size(); ++j) sum += pullback(parts[j], F[j]);
    return sum;
}

Polynomial random_polynomial(Rng& rng, int dim, int max_degree, double density = 0.4) {
    Polynomial p(dim);
    for (const auto& mono : monomials_up_to_degree(dim, max_degree))
        if (rng.uniform() < density) p.set_coefficient(mono, make_rational(rng.uniform_int(-5, 5)));
    return p;
}

Subspace random_subspace(Rng& rng, int m, int k) {
    std::vector<RatVector> basis;
    RatMatrix probe;
    while ((int)basis.size() < k) {
        RatVector v(m);
        for (auto& e : v) e = make_rational(rng.uniform_int(-3, 3));
        probe.push_back(v);
        if (rank(probe) == (int)probe.size())
            basis.push_back(v);
        else
            probe.pop_back();
    }
    return Subspace(m, basis);
}

}  // namespace

TEST_CASE("degenerate basis for the planar axes") {
    auto basis = degenerate_basis(axes2(), 2);
    CHECK(basis.generators.size() == 6);
    CHECK(basis.rank == 5);  // the two constants coincide
}

TEST_CASE("degenerate basis of the full space fills the polynomial space") {
    // a proper subspace spans exactly its own polynomial ring
    Subspace plane(3, {ratvec({1, 0, 0}), ratvec({0, 1, 0})});
    SubspaceFamily fam(3, {plane});
    auto basis = degenerate_basis(fam, 3);
    CHECK(basis.rank == (int)monomials_up_to_degree(2, 3).size());

    // the whole space as a single subspace reaches every polynomial
    Subspace everything(2, {ratvec({1, 0}), ratvec({0, 1})});
    SubspaceFamily full(2, {everything});
    CHECK(degenerate_basis(full, 3).rank == (int)monomials_up_to_degree(2, 3).size());

    SubspaceFamily empty(2, {});
    CHECK(degenerate_basis(empty, 4).rank == 0);
}

TEST_CASE("degeneracy decisions on the axes") {
    auto F = axes2();

    Polynomial sum_sq(2);
    sum_sq.set_coefficient(Monomial({2, 0}), Rational(1));
    sum_sq.set_coefficient(Monomial({0, 2}), Rational(1));
    auto dec = is_degenerate(sum_sq, F);
    REQUIRE(dec.degenerate);
    REQUIRE(dec.decomposition.has_value());
    CHECK(reconstruct(F, *dec.decomposition) == sum_sq);

    CHECK_FALSE(is_degenerate(x1x2(), F).degenerate);
}

TEST_CASE("the x1 x4 - x2 x3 example is nondegenerate") {
    CHECK_FALSE(is_degenerate(quadric(), quadric_family()).degenerate);
}

TEST_CASE("relative norm values on the axes") {
    auto F = axes2();
    auto norm = relative_norm(x1x2(), F);
    CHECK(norm.norm_squared == 1);

    // (x1 + x2)^2: the mixed term is orthogonal to all pure powers
    Polynomial p(2);
    p.set_coefficient(Monomial({2, 0}), Rational(1));
    p.set_coefficient(Monomial({1, 1}), Rational(2));
    p.set_coefficient(Monomial({0, 2}), Rational(1));
    auto n2 = relative_norm(p, F);
    CHECK(n2.norm_squared == 4);
    CHECK(n2.value == Catch::Approx(2.0));
    // minimizers pick up the pure squares
    Polynomial u_sq(1);
    u_sq.set_coefficient(Monomial({2}), Rational(1));
    CHECK(n2.minimizers[0] == u_sq);
    CHECK(n2.minimizers[1] == u_sq);

    Polynomial degen(2);
    degen.set_coefficient(Monomial({2, 0}), Rational(3));
    degen.set_coefficient(Monomial({0, 1}), Rational(-2));
    auto n3 = relative_norm(degen, F);
    CHECK(n3.norm_squared == 0);
    CHECK(reconstruct(F, n3.minimizers) == degen);
}

TEST_CASE("relative norm is a quotient invariant") {
    Rng rng(31);
    auto F = axes2();
    for (int trial = 0; trial < 30; ++trial) {
        auto P = random_polynomial(rng, 2, 3);
        if (P.degree() < 1) continue;
        // shift by a degenerate element of degree <= deg(P)
        Polynomial p1(1), p2(1);
        for (const auto& mono : monomials_up_to_degree(1, P.degree())) {
            if (rng.uniform() < 0.6) p1.set_coefficient(mono, make_rational(rng.uniform_int(-3, 3)));
            if (rng.uniform() < 0.6) p2.set_coefficient(mono, make_rational(rng.uniform_int(-3, 3)));
        }
        Polynomial shifted = P + pullback(p1, F[0]) + pullback(p2, F[1]);
        if (shifted.degree() > P.degree()) continue;
        CHECK(relative_norm(P, F).norm_squared == relative_norm(shifted, F).norm_squared);
    }
}

TEST_CASE("relative norm vanishes exactly on degenerate inputs") {
    Rng rng(37);
    auto F = axes2();
    for (int trial = 0; trial < 40; ++trial) {
        auto P = random_polynomial(rng, 2, 3);
        auto dec = is_degenerate(P, F);
        auto norm = relative_norm(P, F);
        CHECK(dec.degenerate == (norm.norm_squared == 0));
        if (dec.degenerate) CHECK(reconstruct(F, norm.minimizers) == P);
    }
}

TEST_CASE("dual annihilating operator on the axes") {
    auto F = axes2();
    auto op = dual_annihilating_operator(x1x2(), F);
    REQUIRE(op.has_value());
    CHECK(op->symbol == x1x2());  // normalised primitive symbol
    CHECK(op->apply(x1x2()) == Polynomial::constant(2, Rational(1)));

    Polynomial sum_sq(2);
    sum_sq.set_coefficient(Monomial({2, 0}), Rational(1));
    sum_sq.set_coefficient(Monomial({0, 2}), Rational(1));
    CHECK_FALSE(dual_annihilating_operator(sum_sq, F).has_value());

    Polynomial not_homog = x1x2() + Polynomial::variable(2, 0);
    CHECK_THROWS_AS(dual_annihilating_operator(not_homog, F), std::invalid_argument);
}

TEST_CASE("dual operator for the quadric example matches d1 d4 - d2 d3") {
    auto F = quadric_family();
    auto P = quadric();
    auto op = dual_annihilating_operator(P, F);
    REQUIRE(op.has_value());
    // proportional to the polynomial itself; primitive normalisation makes it equal
    CHECK(op->symbol == P);
    CHECK(op->apply(P) == Polynomial::constant(4, Rational(2)));
    // annihilates every degree-2 pullback on every subspace
    for (int j = 0; j < F.size(); ++j)
        for (const auto& mono : monomials_of_degree(2, 2)) {
            Polynomial gen = pullback(Polynomial::from_monomial(mono, Rational(1)), F[j]);
            CHECK(op->apply(gen).is_zero());
        }
}

TEST_CASE("dual operator annihilates its degenerate subspace in general") {
    Rng rng(41);
    auto F = axes2();
    for (int trial = 0; trial < 25; ++trial) {
        const int D = (int)rng.uniform_int(2, 4);
        Polynomial P(2);
        for (const auto& mono : monomials_of_degree(2, D))
            if (rng.uniform() < 0.6) P.set_coefficient(mono, make_rational(rng.uniform_int(-4, 4)));
        if (P.is_zero()) continue;
        auto op = dual_annihilating_operator(P, F);
        if (!op) continue;
        for (int j = 0; j < F.size(); ++j)
            for (const auto& mono : monomials_of_degree(1, D)) {
                Polynomial gen = pullback(Polynomial::from_monomial(mono, Rational(1)), F[j]);
                CHECK(op->apply(gen).is_zero());
            }
        CHECK_FALSE(op->apply(P).is_zero());
    }
}

TEST_CASE("simple witnesses on the axes") {
    auto F = axes2();
    auto witness = simple_witness(x1x2(), F);
    REQUIRE(witness.has_value());
    // w_1 spans the complement of the x-axis, w_2 of the y-axis
    REQUIRE(witness->size() == 2);
    Polynomial L = x1x2();
    for (const auto& w : *witness) L = L.directional_derivative(w);
    CHECK_FALSE(L.is_zero());

    Polynomial sum_sq(2);
    sum_sq.set_coefficient(Monomial({2, 0}), Rational(1));
    sum_sq.set_coefficient(Monomial({0, 2}), Rational(1));
    CHECK_FALSE(simple_witness(sum_sq, F).has_value());
}

TEST_CASE("the quadric example admits no simple witness despite nondegeneracy") {
    auto F = quadric_family();
    CHECK_FALSE(simple_witness(quadric(), F).has_value());
    CHECK_FALSE(is_degenerate(quadric(), F).degenerate);
}

TEST_CASE("witness directions lie in the complements and survive on P") {
    Rng rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = (int)rng.uniform_int(2, 3);
        const int n = (int)rng.uniform_int(1, 3);
        const int k = (int)rng.uniform_int(1, m - 1);
        std::vector<Subspace> subs;
        for (int j = 0; j < n; ++j) subs.push_back(random_subspace(rng, m, k));
        SubspaceFamily F(m, subs);
        auto P = random_polynomial(rng, m, 4);
        auto witness = simple_witness(P, F);
        if (!witness) continue;
        Polynomial L = P;
        for (int j = 0; j < n; ++j) {
            RatVector zero(m, Rational(0));
            CHECK(F[j].project((*witness)[j]) == zero);
            L = L.directional_derivative((*witness)[j]);
        }
        CHECK_FALSE(L.is_zero());
        // simple nondegeneracy implies nondegeneracy
        CHECK_FALSE(is_degenerate(P, F).degenerate);
    }
}

TEST_CASE("codimension one: nondegenerate iff simply nondegenerate") {
    // the equivalence concerns families of pairwise distinct hyperplanes
    Rng rng(47);
    int checked = 0;
    for (int trial = 0; trial < 160; ++trial) {
        const int m = (int)rng.uniform_int(2, 4);
        const int n = (int)rng.uniform_int(1, 5);
        std::vector<Subspace> subs;
        while ((int)subs.size() < n) {
            Subspace cand = random_subspace(rng, m, m - 1);
            bool fresh = true;
            for (const auto& old : subs)
                if (old.projection() == cand.projection()) { fresh = false; break; }
            if (fresh) subs.push_back(std::move(cand));
        }
        SubspaceFamily F(m, subs);
        auto P = random_polynomial(rng, m, 4, 0.3);
        const bool nondeg = !is_degenerate(P, F).degenerate;
        const bool simple = simple_witness(P, F).has_value();
        CHECK(nondeg == simple);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("nondegeneracy is equivalent to a nondegenerate homogeneous summand") {
    Rng rng(53);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int m = (int)rng.uniform_int(2, 3);
        const int n = (int)rng.uniform_int(1, 3);
        const int k = (int)rng.uniform_int(1, m - 1);
        std::vector<Subspace> subs;
        for (int j = 0; j < n; ++j) subs.push_back(random_subspace(rng, m, k));
        SubspaceFamily F(m, subs);
        auto P = random_polynomial(rng, m, 4, 0.35);
        const bool nondeg_direct = !is_degenerate(P, F).degenerate;
        const bool has_summand = homogeneous_nondegeneracy_reduction(P, F).has_value();
        CHECK(nondeg_direct == has_summand);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("general position with small joint codimension implies witnesses") {
    // (m - kappa) n <= m: nondegenerate implies simply nondegenerate
    Rng rng(59);
    int hits = 0;
    for (int trial = 0; trial < 200 && hits < 40; ++trial) {
        const int m = 3, kappa = 2, n = 3;  // (m - kappa) n = 3 <= m
        std::vector<Subspace> subs;
        for (int j = 0; j < n; ++j) subs.push_back(random_subspace(rng, m, kappa));
        SubspaceFamily F(m, subs);
        if (!general_position(F)) continue;
        auto P = random_polynomial(rng, m, 3, 0.4);
        if (is_degenerate(P, F).degenerate) continue;
        ++hits;
        CHECK(simple_witness(P, F).has_value());
    }
    CHECK(hits >= 40);
}

TEST_CASE("highest nondegenerate summand reduction") {
    auto F = axes2();
    Polynomial P = x1x2() + Polynomial::variable(2, 0) + Polynomial::variable(2, 1);
    auto top = homogeneous_nondegeneracy_reduction(P, F);
    REQUIRE(top.has_value());
    CHECK(top->first == 2);
    CHECK(top->second == x1x2());

    // the cubic summand x1^3 is degenerate, so the quadratic one is returned
    Polynomial Q = x1x2();
    Q.set_coefficient(Monomial({3, 0}), Rational(1));
    auto top2 = homogeneous_nondegeneracy_reduction(Q, F);
    REQUIRE(top2.has_value());
    CHECK(top2->first == 2);
    CHECK(top2->second == x1x2());

    Polynomial degen(2);
    degen.set_coefficient(Monomial({2, 0}), Rational(1));
    degen.set_coefficient(Monomial({0, 3}), Rational(-5));
    CHECK_FALSE(homogeneous_nondegeneracy_reduction(degen, F).has_value());
}

TEST_CASE("monomial generator verification for the quadric family") {
    auto F = quadric_family();
    auto x = [](int i) { return Polynomial::variable(4, i); };
    std::vector<std::vector<Polynomial>> forms = {
        {x(0), x(1)},                  // vanish on V1 = {x1 = x2 = 0}
        {x(2), x(3)},                  // vanish on V2
        {x(0) - x(2), x(1) - x(3)},    // vanish on V3
    };
    CHECK(verify_monomial_generators(F, forms));

    Subspace e1(2, {ratvec({1, 0})});
    SubspaceFamily single(2, {e1});
    Polynomial x2 = Polynomial::variable(2, 1);
    CHECK(verify_monomial_generators(single, {{x2}}));
    // x1 does not vanish on span(e1)
    Polynomial x1 = Polynomial::variable(2, 0);
    CHECK_THROWS_AS(verify_monomial_generators(single, {{x1}}), std::invalid_argument);
}

TEST_CASE("empty family conventions") {
    SubspaceFamily empty(2, {});
    CHECK(is_degenerate(Polynomial::constant(2, Rational(5)), empty).degenerate);
    CHECK_FALSE(is_degenerate(Polynomial::variable(2, 0), empty).degenerate);
    CHECK(relative_norm(Polynomial::constant(2, Rational(5)), empty).norm_squared == 0);
    CHECK(relative_norm(Polynomial::variable(2, 0), empty).norm_squared == 1);
}
