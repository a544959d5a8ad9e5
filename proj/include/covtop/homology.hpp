#pragma once

#include <vector>

#include "covtop/rational.hpp"
#include "covtop/simplicial_complex.hpp"

namespace covtop {

struct HomologyReport {
    std::vector<int> betti;                        // betti[k], k = 0..max_dim
    std::vector<std::vector<Integer>> torsion;     // invariant factors > 1 per k

    bool operator==(const HomologyReport&) const = default;
};

namespace detail {

using IntMatrix = std::vector<std::vector<Integer>>;

/// Invariant factors of an integer matrix (nonzero diagonal of its Smith
/// normal form). Entry growth is kept down by always pivoting on a smallest
/// nonzero element.
inline std::vector<Integer> smith_invariant_factors(IntMatrix m) {
    std::vector<Integer> factors;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t t = 0;
    while (t < rows && t < cols) {
        // find smallest nonzero pivot in the remaining block
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 &&
                    (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;  // block is zero
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

        bool clean = true;
        for (size_t i = t + 1; i < rows; ++i) {
            if (m[i][t] == 0) continue;
            Integer q = m[i][t] / m[t][t];
            for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
            if (m[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < cols; ++j) {
            if (m[t][j] == 0) continue;
            Integer q = m[t][j] / m[t][t];
            for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; repick pivot

        // pivot must divide everything below-right for true invariant factors
        bool divides_all = true;
        for (size_t i = t + 1; i < rows && divides_all; ++i)
            for (size_t j = t + 1; j < cols && divides_all; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                    divides_all = false;
                }
        if (!divides_all) continue;

        factors.push_back(abs(m[t][t]));
        ++t;
    }
    return factors;
}

}  // namespace detail

/// Integral simplicial homology via Smith normal form of the boundary
/// matrices. `size_limit` bounds the larger matrix dimension.
inline HomologyReport homology(const SimplicialComplex& K, int max_dim,
                               size_t size_limit = 20000) {
    if (max_dim > K.dimension) throw ValidationError("max_dim exceeds complex dimension");
    std::vector<std::vector<Simplex>> faces(K.dimension + 1);
    for (int k = 0; k <= K.dimension; ++k) faces[k] = faces_of_dimension(K, k);

    auto boundary_matrix = [&](int k) -> detail::IntMatrix {
        // rows: (k-1)-faces, cols: k-faces
        const auto& rows_f = faces[k - 1];
        const auto& cols_f = faces[k];
        if (rows_f.size() > size_limit || cols_f.size() > size_limit)
            throw SizeLimit("boundary matrix dimension exceeds " + std::to_string(size_limit));
        detail::IntMatrix m(rows_f.size(), std::vector<Integer>(cols_f.size(), 0));
        for (size_t c = 0; c < cols_f.size(); ++c) {
            const Simplex& s = cols_f[c];
            for (size_t i = 0; i < s.size(); ++i) {
                Simplex face;
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != i) face.push_back(s[j]);
                auto it = std::lower_bound(rows_f.begin(), rows_f.end(), face);
                m[static_cast<size_t>(it - rows_f.begin())][c] = (i % 2 == 0) ? 1 : -1;
            }
        }
        return m;
    };

    HomologyReport rep;
    rep.betti.resize(max_dim + 1);
    rep.torsion.resize(max_dim + 1);

    std::vector<size_t> rank(K.dimension + 2, 0);
    std::vector<std::vector<Integer>> invf(K.dimension + 2);
    for (int k = 1; k <= std::min(max_dim + 1, K.dimension); ++k) {
        invf[k] = detail::smith_invariant_factors(boundary_matrix(k));
        rank[k] = invf[k].size();
    }
    for (int k = 0; k <= max_dim; ++k) {
        size_t chains = faces[k].size();
        rep.betti[k] = static_cast<int>(chains - rank[k] - rank[k + 1]);
        for (const Integer& f : invf[k + 1])
            if (f > 1) rep.torsion[k].push_back(f);
    }
    return rep;
}

/// The homology of S^m on 0..max_dim, used to certify sphere-likeness.
inline HomologyReport sphere_homology(int m) {
    HomologyReport rep;
    rep.betti.assign(m + 1, 0);
    rep.torsion.resize(m + 1);
    rep.betti[0] = 1;
    rep.betti[m] += 1;  // m == 0 gives betti[0] == 2
    return rep;
}

/// True when K has the integral homology of S^m through dimension m.
inline bool is_homology_sphere(const SimplicialComplex& K, int m) {
    if (K.dimension != m) return false;
    return homology(K, m) == sphere_homology(m);
}

}  // namespace covtop
