#pragma once

#include <optional>
#include <vector>

#include "covtop/rational.hpp"

namespace covtop {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;  // row-major

namespace linalg {

inline Rational det(RatMatrix m) {
    const size_t n = m.size();
    Rational result = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            result = -result;
        }
        result *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return result;
}

inline size_t rank(RatMatrix m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Solutions of A x = b as an affine subspace: a particular point plus a
/// basis of the kernel. Empty optional when inconsistent.
struct AffineSolution {
    RatVector point;
    std::vector<RatVector> kernel;
};

inline std::optional<AffineSolution> solve(RatMatrix a, RatVector b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rational inv = a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] /= inv;
        b[r] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;

    AffineSolution sol;
    sol.point.assign(cols, Rational(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) sol.point[pivot_col[i]] = b[i];

    std::vector<char> is_pivot(cols, 0);
    for (size_t c : pivot_col) is_pivot[c] = 1;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        RatVector k(cols, Rational(0));
        k[fc] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i) k[pivot_col[i]] = -a[i][fc];
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace linalg
}  // namespace covtop
