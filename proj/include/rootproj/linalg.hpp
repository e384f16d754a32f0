#pragma once

#include <stdexcept>
#include <vector>

#include "vec.hpp"

namespace rootproj {

/// Exact Gaussian elimination with partial pivoting by first nonzero entry.
/// Returns the rank; `mat` is reduced in place to row echelon form.
inline size_t row_echelon(std::vector<std::vector<Rational>>& mat) {
    size_t rows = mat.size();
    size_t cols = rows ? mat[0].size() : 0;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && mat[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(mat[rank], mat[pivot]);
        for (size_t r = rank + 1; r < rows; ++r) {
            if (mat[r][col].is_zero()) continue;
            Rational f = mat[r][col] / mat[rank][col];
            for (size_t c = col; c < cols; ++c) mat[r][c] -= f * mat[rank][c];
        }
        ++rank;
    }
    return rank;
}

/// Rank of the Gram matrix of `vectors`, which equals the rank of the span.
[[nodiscard]] inline size_t gram_rank(const std::vector<Vec>& vectors) {
    size_t n = vectors.size();
    std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) gram[i][j] = inner(vectors[i], vectors[j]);
    return row_echelon(gram);
}

/// Solves the square system A x = b exactly. Throws std::invalid_argument if
/// A is singular.
[[nodiscard]] inline std::vector<Rational> solve(std::vector<std::vector<Rational>> a,
                                                 std::vector<Rational> b) {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw std::invalid_argument("singular system");
        std::swap(a[col], a[pivot]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

/// Coordinates of v over a linearly independent basis, solved through the
/// Gram system. Throws if the basis is dependent or v lies outside the span.
[[nodiscard]] inline std::vector<Rational> coordinates(const Vec& v,
                                                       const std::vector<Vec>& basis) {
    size_t n = basis.size();
    std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) gram[i][j] = inner(basis[i], basis[j]);
        rhs[i] = inner(basis[i], v);
    }
    std::vector<Rational> c = solve(std::move(gram), std::move(rhs));
    Vec rec(v.size(), Rational(0));
    for (size_t i = 0; i < n; ++i) rec = add(rec, scale(c[i], basis[i]));
    if (rec != v) throw std::invalid_argument("vector outside basis span");
    return c;
}

/// Component of v orthogonal to span(basis). An empty basis returns v
/// unchanged; a linearly dependent basis is rejected.
[[nodiscard]] inline Vec project_complement(const Vec& v, const std::vector<Vec>& basis) {
    if (basis.empty()) return v;
    size_t n = basis.size();
    std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) gram[i][j] = inner(basis[i], basis[j]);
        rhs[i] = inner(basis[i], v);
    }
    std::vector<Rational> coef;
    try {
        coef = solve(std::move(gram), std::move(rhs));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("projection basis is linearly dependent");
    }
    Vec result = v;
    for (size_t i = 0; i < n; ++i) result = sub(result, scale(coef[i], basis[i]));
    return result;
}

}  // namespace rootproj
