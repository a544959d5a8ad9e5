#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "covtop/errors.hpp"

namespace covtop {

using VertexId = int;

/// A simplex as a strictly increasing vertex-id list.
using Simplex = std::vector<VertexId>;

inline std::string simplex_to_string(const Simplex& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

/// Sign of the permutation that sorts `tuple` ascending; 0 if a vertex repeats.
inline int sort_sign(std::vector<VertexId> tuple) {
    int sign = 1;
    for (size_t i = 0; i + 1 < tuple.size(); ++i) {
        size_t min_at = i;
        for (size_t j = i + 1; j < tuple.size(); ++j)
            if (tuple[j] < tuple[min_at]) min_at = j;
        if (tuple[min_at] == tuple[i] && min_at != i) return 0;
        if (min_at != i) {
            std::swap(tuple[i], tuple[min_at]);
            sign = -sign;
        }
    }
    for (size_t i = 0; i + 1 < tuple.size(); ++i)
        if (tuple[i] == tuple[i + 1]) return 0;
    return sign;
}

/// Pure simplicial complex stored by its facets; faces are implied.
struct SimplicialComplex {
    int dimension = -1;
    std::vector<VertexId> vertices;      // sorted, unique
    std::vector<Simplex> facets;         // each sorted; list lexicographic

    bool has_vertex(VertexId v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }

    size_t facet_index(const Simplex& s) const {
        auto it = std::lower_bound(facets.begin(), facets.end(), s);
        if (it == facets.end() || *it != s) return facets.size();
        return static_cast<size_t>(it - facets.begin());
    }
};

/// All k-dimensional faces of the complex, sorted and unique.
inline std::vector<Simplex> faces_of_dimension(const SimplicialComplex& K, int k) {
    std::set<Simplex> out;
    const size_t m = static_cast<size_t>(k) + 1;
    for (const Simplex& f : K.facets) {
        if (f.size() < m) continue;
        // enumerate m-subsets of f
        std::vector<size_t> idx(m);
        for (size_t i = 0; i < m; ++i) idx[i] = i;
        while (true) {
            Simplex face(m);
            for (size_t i = 0; i < m; ++i) face[i] = f[idx[i]];
            out.insert(face);
            size_t i = m;
            while (i > 0 && idx[i - 1] == f.size() - (m - i) - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return std::vector<Simplex>(out.begin(), out.end());
}

/// Validate and canonicalize a facet list into a pure complex.
inline SimplicialComplex build_complex(std::vector<Simplex> facets) {
    if (facets.empty()) throw MixedDimension("empty facet list");
    for (Simplex& f : facets) {
        std::sort(f.begin(), f.end());
        for (size_t i = 0; i + 1 < f.size(); ++i)
            if (f[i] == f[i + 1])
                throw DegenerateFacet("repeated vertex in facet " + simplex_to_string(f));
    }
    const size_t card = facets.front().size();
    for (const Simplex& f : facets)
        if (f.size() != card)
            throw MixedDimension("facet " + simplex_to_string(f) + " has " +
                                 std::to_string(f.size()) + " vertices, expected " +
                                 std::to_string(card));
    std::sort(facets.begin(), facets.end());
    for (size_t i = 0; i + 1 < facets.size(); ++i)
        if (facets[i] == facets[i + 1])
            throw DuplicateFacet(simplex_to_string(facets[i]));

    SimplicialComplex K;
    K.dimension = static_cast<int>(card) - 1;
    K.facets = std::move(facets);
    std::set<VertexId> verts;
    for (const Simplex& f : K.facets) verts.insert(f.begin(), f.end());
    K.vertices.assign(verts.begin(), verts.end());
    return K;
}

/// Facets of the solid standard simplex on {0,...,d} (a single facet).
inline SimplicialComplex solid_simplex(int d) {
    Simplex top(d + 1);
    for (int i = 0; i <= d; ++i) top[i] = i;
    return build_complex({top});
}

}  // namespace covtop
