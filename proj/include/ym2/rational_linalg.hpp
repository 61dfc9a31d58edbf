#pragma once

#include <vector>

#include "exact.hpp"

namespace ym2 {

using RatMatrix = std::vector<std::vector<Rat>>;

inline RatMatrix rat_identity(size_t n) {
    RatMatrix I(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

inline RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
    size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    RatMatrix out(r, std::vector<Rat>(c, Rat(0)));
    for (size_t i = 0; i < r; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

inline RatMatrix rat_transpose(const RatMatrix& a) {
    size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
    RatMatrix out(c, std::vector<Rat>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) out[j][i] = a[i][j];
    return out;
}

// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<size_t> rat_rref(RatMatrix& a) {
    std::vector<size_t> pivots;
    size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size(), row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[row]);
        Rat inv = 1 / a[row][col];
        for (size_t j = col; j < cols; ++j) a[row][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Basis of the right nullspace, returned as columns of the result.
inline RatMatrix rat_nullspace(RatMatrix a) {
    size_t cols = a.empty() ? 0 : a[0].size();
    auto pivots = rat_rref(a);
    std::vector<char> is_pivot(cols, 0);
    for (size_t p : pivots) is_pivot[p] = 1;
    RatMatrix basis(cols);
    size_t nfree = 0;
    for (size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) ++nfree;
    for (size_t c = 0; c < cols; ++c) basis[c].assign(nfree, Rat(0));
    size_t idx = 0;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        basis[c][idx] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) basis[pivots[r]][idx] = -a[r][c];
        ++idx;
    }
    return basis;
}

// Solve a x = b for square invertible a.
inline std::vector<Rat> rat_solve(RatMatrix a, std::vector<Rat> b) {
    size_t k = a.size();
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        while (piv < k && a[piv][col] == 0) ++piv;
        if (piv == k) throw std::domain_error("rat_solve: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        Rat inv = 1 / a[col][col];
        for (size_t j = col; j < k; ++j) a[col][j] *= inv;
        b[col] *= inv;
        for (size_t r = 0; r < k; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t j = col; j < k; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    return b;
}

// Orthogonal projector onto the column span of b: b (b^T b)^{-1} b^T.
inline RatMatrix rat_column_projector(const RatMatrix& b) {
    RatMatrix bt = rat_transpose(b);
    RatMatrix g = rat_mul(bt, b);
    size_t k = g.size();
    RatMatrix ginv(k, std::vector<Rat>(k));
    for (size_t j = 0; j < k; ++j) {
        std::vector<Rat> e(k, Rat(0));
        e[j] = 1;
        auto col = rat_solve(g, e);
        for (size_t i = 0; i < k; ++i) ginv[i][j] = col[i];
    }
    return rat_mul(rat_mul(b, ginv), bt);
}

}  // namespace ym2
