// Linear subspaces of R^m given by rational spanning vectors, their exact
// orthogonal projections, coordinate frames, and polynomial pullbacks.

#ifndef OSCIDECAY_SUBSPACE_HPP
#define OSCIDECAY_SUBSPACE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "oscidecay/linalg.hpp"
#include "oscidecay/polynomial.hpp"

namespace oscidecay {

class Subspace {
public:
    /// Constructs span(basis) in R^ambient. The basis vectors must be
    /// linearly independent; they are kept as given (not orthogonalised).
    Subspace(int ambient, std::vector<RatVector> basis)
        : ambient_(ambient), basis_(std::move(basis)) {
        if (ambient_ < 1) throw std::invalid_argument("ambient dimension must be positive");
        if (basis_.empty()) throw std::invalid_argument("subspace needs at least one basis vector");
        for (const auto& v : basis_)
            if ((int)v.size() != ambient_) throw std::invalid_argument("basis vector has wrong length");
        RatMatrix B = basis_matrix();
        if (rank(B) != (int)basis_.size()) throw std::invalid_argument("basis vectors are linearly dependent");

        // Pi = B (B^T B)^{-1} B^T, symmetric idempotent, exact.
        RatMatrix Bt = transpose(B);
        auto gram_inv = inverse(matmul(Bt, B));
        projection_ = matmul(matmul(B, *gram_inv), Bt);
    }

    int ambient() const { return ambient_; }
    int dim() const { return (int)basis_.size(); }
    int codim() const { return ambient_ - dim(); }
    const std::vector<RatVector>& basis() const { return basis_; }
    const RatMatrix& projection() const { return projection_; }

    RatVector project(const RatVector& x) const { return matvec(projection_, x); }

    bool contains(const RatVector& v) const {
        if ((int)v.size() != ambient_) return false;
        return project(v) == v;
    }

    /// Basis of the orthogonal complement (nullspace of the projection).
    std::vector<RatVector> complement_basis() const { return nullspace(projection_); }

    /// Canonical coordinate frame: the first dim() independent columns of the
    /// projection matrix, Gram-reduced to a pairwise orthogonal rational set.
    std::vector<RatVector> canonical_frame() const {
        std::vector<RatVector> frame;
        RatMatrix probe;  // rows = chosen columns, for independence checks
        for (int c = 0; c < ambient_ && (int)frame.size() < dim(); ++c) {
            RatVector col(ambient_);
            for (int r = 0; r < ambient_; ++r) col[r] = projection_[r][c];
            probe.push_back(col);
            if (rank(probe) < (int)probe.size()) {
                probe.pop_back();
                continue;
            }
            // orthogonalise against the frame so far, without normalising
            RatVector v = col;
            for (const auto& f : frame) {
                const Rational coeff = dot(col, f) / dot(f, f);
                for (int i = 0; i < ambient_; ++i) v[i] -= coeff * f[i];
            }
            frame.push_back(std::move(v));
        }
        return frame;
    }

    /// Linear forms giving the coordinates of the projection of x in the given
    /// frame: c(x) = (F^T F)^{-1} F^T x. Frame vectors must lie in the
    /// subspace and be independent.
    std::vector<Polynomial> frame_coordinates(const std::vector<RatVector>& frame) const {
        validate_frame(frame);
        RatMatrix F(ambient_, RatVector(frame.size()));
        for (size_t j = 0; j < frame.size(); ++j)
            for (int i = 0; i < ambient_; ++i) F[i][j] = frame[j][i];
        RatMatrix Ft = transpose(F);
        auto gram_inv = inverse(matmul(Ft, F));
        RatMatrix coords = matmul(*gram_inv, Ft);  // dim x ambient
        std::vector<Polynomial> forms;
        for (const auto& row : coords) {
            Polynomial form(ambient_);
            for (int i = 0; i < ambient_; ++i)
                if (row[i] != 0) form += Polynomial::variable(ambient_, i) * row[i];
            forms.push_back(std::move(form));
        }
        return forms;
    }

    std::vector<Polynomial> canonical_frame_coordinates() const {
        return frame_coordinates(canonical_frame());
    }

    void validate_frame(const std::vector<RatVector>& frame) const {
        if ((int)frame.size() != dim()) throw std::invalid_argument("frame size must equal subspace dimension");
        for (const auto& v : frame)
            if (!contains(v)) throw std::invalid_argument("frame vector lies outside the subspace");
        RatMatrix M(frame.begin(), frame.end());
        if (rank(M) != dim()) throw std::invalid_argument("frame vectors are linearly dependent");
    }

private:
    RatMatrix basis_matrix() const {
        RatMatrix B(ambient_, RatVector(basis_.size()));
        for (size_t j = 0; j < basis_.size(); ++j)
            for (int i = 0; i < ambient_; ++i) B[i][j] = basis_[j][i];
        return B;
    }

    int ambient_;
    std::vector<RatVector> basis_;
    RatMatrix projection_;
};

/// p lives on dim(V) coordinates; the result is p at the frame coordinates of
/// the orthogonal projection onto V, an exact polynomial on the ambient space.
inline Polynomial pullback(const Polynomial& p, const Subspace& V,
                           const std::vector<RatVector>& frame) {
    if (p.dimension() != V.dim())
        throw std::invalid_argument("polynomial dimension must equal subspace dimension");
    return p.substitute(V.frame_coordinates(frame));
}

inline Polynomial pullback(const Polynomial& p, const Subspace& V) {
    return pullback(p, V, V.canonical_frame());
}

class SubspaceFamily {
public:
    /// An ordered family of subspaces of common ambient and common dimension.
    /// The family may be empty (pure oscillatory-integral case).
    SubspaceFamily(int ambient, std::vector<Subspace> subspaces)
        : ambient_(ambient), subspaces_(std::move(subspaces)) {
        if (ambient_ < 1) throw std::invalid_argument("ambient dimension must be positive");
        for (const auto& V : subspaces_) {
            if (V.ambient() != ambient_) throw std::invalid_argument("subspace ambient mismatch");
            if (V.dim() != subspaces_.front().dim())
                throw std::invalid_argument("subspaces must share a common dimension");
        }
    }

    int ambient() const { return ambient_; }
    int size() const { return (int)subspaces_.size(); }
    bool empty() const { return subspaces_.empty(); }
    /// Common subspace dimension; 0 for the empty family.
    int subspace_dim() const { return subspaces_.empty() ? 0 : subspaces_.front().dim(); }
    const Subspace& operator[](int j) const { return subspaces_.at(j); }
    const std::vector<Subspace>& subspaces() const { return subspaces_; }

private:
    int ambient_;
    std::vector<Subspace> subspaces_;
};

/// Every nonempty subcollection of k subspaces spans dimension min(k*kappa, m).
/// Exhaustive exact rank check over all 2^n - 1 subcollections; n is capped to
/// keep the enumeration sane.
inline bool general_position(const SubspaceFamily& F) {
    const int n = F.size();
    if (n > 20) throw std::invalid_argument("general_position: family too large for exhaustive check");
    if (n == 0) return true;
    const int m = F.ambient(), kappa = F.subspace_dim();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        RatMatrix rows;
        int k = 0;
        for (int j = 0; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            ++k;
            for (const auto& v : F[j].basis()) rows.push_back(v);
        }
        if (rank(rows) != std::min(k * kappa, m)) return false;
    }
    return true;
}

}  // namespace oscidecay

#endif
