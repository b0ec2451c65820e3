// Dense exact linear algebra over the rationals: rank, solve, nullspace,
// determinant. Sizes here are small (tens of rows), so plain Gaussian
// elimination with exact arithmetic is the right tool.

#ifndef OSCIDECAY_LINALG_HPP
#define OSCIDECAY_LINALG_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "oscidecay/rational.hpp"

namespace oscidecay {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

inline RatMatrix identity_matrix(int n) {
    RatMatrix I(n, RatVector(n, Rational(0)));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

inline RatMatrix transpose(const RatMatrix& A) {
    if (A.empty()) return {};
    RatMatrix T(A[0].size(), RatVector(A.size(), Rational(0)));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
    return T;
}

inline RatMatrix matmul(const RatMatrix& A, const RatMatrix& B) {
    if (A.empty() || B.empty()) return {};
    const size_t n = A.size(), k = B.size(), m = B[0].size();
    if (A[0].size() != k) throw std::invalid_argument("matmul shape mismatch");
    RatMatrix C(n, RatVector(m, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                if (B[l][j] != 0) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

inline RatVector matvec(const RatMatrix& A, const RatVector& x) {
    RatVector y(A.size(), Rational(0));
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i].size() != x.size()) throw std::invalid_argument("matvec shape mismatch");
        for (size_t j = 0; j < x.size(); ++j)
            if (A[i][j] != 0 && x[j] != 0) y[i] += A[i][j] * x[j];
    }
    return y;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot shape mismatch");
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

/// In-place reduced row echelon form. Returns the pivot column per pivot row.
inline std::vector<int> rref(RatMatrix& A) {
    std::vector<int> pivots;
    if (A.empty()) return pivots;
    const int rows = (int)A.size(), cols = (int)A[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(A[piv], A[r]);
        const Rational inv = 1 / A[r][c];
        for (int k = c; k < cols; ++k) A[r][k] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            const Rational f = A[i][c];
            for (int k = c; k < cols; ++k) A[i][k] -= f * A[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(RatMatrix A) {
    if (A.empty()) return 0;
    const int rows = (int)A.size(), cols = (int)A[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(A[piv], A[r]);
        for (int i = r + 1; i < rows; ++i) {
            if (A[i][c] == 0) continue;
            const Rational f = A[i][c] / A[r][c];
            for (int k = c; k < cols; ++k) A[i][k] -= f * A[r][k];
        }
        ++r;
    }
    return r;
}

/// One exact solution of A x = b if the system is consistent (free variables
/// set to zero), nullopt otherwise.
inline std::optional<RatVector> solve(RatMatrix A, RatVector b) {
    const int rows = (int)A.size();
    if (rows != (int)b.size()) throw std::invalid_argument("solve shape mismatch");
    const int cols = rows == 0 ? 0 : (int)A[0].size();
    for (int i = 0; i < rows; ++i) A[i].push_back(b[i]);
    auto pivots = rref(A);
    // inconsistent iff a pivot lands in the augmented column
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    RatVector x(cols, Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = A[r][cols];
    return x;
}

/// Basis of the nullspace of A.
inline std::vector<RatVector> nullspace(RatMatrix A) {
    if (A.empty()) return {};
    const int cols = (int)A[0].size();
    auto pivots = rref(A);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        RatVector v(cols, Rational(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -A[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rational determinant(RatMatrix A) {
    const int n = (int)A.size();
    for (const auto& row : A)
        if ((int)row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
    Rational det(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A[i][c] != 0) { piv = i; break; }
        if (piv < 0) return Rational(0);
        if (piv != c) { std::swap(A[piv], A[c]); det = -det; }
        det *= A[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (A[i][c] == 0) continue;
            const Rational f = A[i][c] / A[c][c];
            for (int k = c; k < n; ++k) A[i][k] -= f * A[c][k];
        }
    }
    return det;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& A) {
    const int n = (int)A.size();
    RatMatrix aug = A;
    for (int i = 0; i < n; ++i) {
        if ((int)A[i].size() != n) throw std::invalid_argument("inverse of non-square matrix");
        for (int j = 0; j < n; ++j) aug[i].push_back(i == j ? Rational(1) : Rational(0));
    }
    auto pivots = rref(aug);
    if ((int)pivots.size() != n) return std::nullopt;
    RatMatrix inv(n, RatVector(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

/// Least-squares minimiser of |A x - b|_2 via the (always consistent) normal
/// equations, exactly.
inline RatVector solve_least_squares(const RatMatrix& A, const RatVector& b) {
    RatMatrix At = transpose(A);
    RatMatrix AtA = matmul(At, A);
    RatVector Atb = matvec(At, b);
    auto x = solve(std::move(AtA), std::move(Atb));
    if (!x) throw std::logic_error("normal equations inconsistent");
    return *x;
}

}  // namespace oscidecay

#endif
