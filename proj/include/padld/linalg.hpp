#pragma once

#include <optional>
#include <vector>

#include "padld/rat.hpp"

namespace padld {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major

inline Mat identity_mat(size_t n) {
    Mat m(n, Vec(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Exact Gaussian elimination. Returns nullopt when A is singular.
inline std::optional<Vec> solve_linear(Mat a, Vec b) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        Rat inv = a[col][col];
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col] / inv;
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline Rat det(Mat a) {
    const size_t n = a.size();
    Rat d = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            d = -d;
        }
        d *= a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return d;
}

// Rank of an m x n matrix.
inline size_t rank(Mat a) {
    if (a.empty()) return 0;
    const size_t m = a.size(), n = a[0].size();
    size_t r = 0;
    for (size_t col = 0; col < n && r < m; ++col) {
        size_t piv = r;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[r]);
        for (size_t i = r + 1; i < m; ++i) {
            if (a[i][col] == 0) continue;
            Rat f = a[i][col] / a[r][col];
            for (size_t c = col; c < n; ++c) a[i][c] -= f * a[r][c];
        }
        ++r;
    }
    return r;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    Mat out(m, Vec(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (size_t c = 0; c < n; ++c) out[i][c] += a[i][j] * b[j][c];
        }
    return out;
}

}  // namespace padld
