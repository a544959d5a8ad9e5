#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "covtop/pseudomanifold.hpp"

namespace covtop {

namespace detail {

inline OrientedPseudomanifold assemble_oriented(
    std::vector<std::pair<Simplex, int>> oriented_facets, bool verify_coherence) {
    std::vector<Simplex> facets;
    facets.reserve(oriented_facets.size());
    for (auto& [f, s] : oriented_facets) facets.push_back(f);
    SimplicialComplex K = build_complex(facets);
    std::vector<int> signs(K.facets.size());
    for (auto& [f, s] : oriented_facets) {
        Simplex sorted = f;
        std::sort(sorted.begin(), sorted.end());
        signs[K.facet_index(sorted)] = s;
    }
    OrientedPseudomanifold M;
    M.complex = std::move(K);
    M.signs = std::move(signs);
    auto ridges = ridge_map(M.complex);
    for (const auto& [r, inc] : ridges) {
        if (inc.size() == 1) {
            M.boundary_facets.push_back(r);
        } else if (verify_coherence) {
            int a = M.signs[inc[0].first] * inc[0].second;
            int b = M.signs[inc[1].first] * inc[1].second;
            if (a + b != 0)
                throw NonOrientable("constructed orientation not coherent at " +
                                    simplex_to_string(r));
        }
    }
    std::sort(M.boundary_facets.begin(), M.boundary_facets.end());
    return M;
}

}  // namespace detail

struct SubdivisionResult {
    OrientedPseudomanifold manifold;
    // new vertex id -> the face of the input complex it subdivides
    std::vector<Simplex> face_of_vertex;
};

/// One barycentric subdivision. New vertex ids enumerate the faces of the
/// input (ordered by dimension, then lexicographically); orientation is
/// transported so the fundamental class is preserved.
inline SubdivisionResult barycentric_subdivide_once(const OrientedPseudomanifold& M) {
    const SimplicialComplex& K = M.complex;
    std::map<Simplex, VertexId> face_id;
    std::vector<Simplex> all_faces;
    for (int k = 0; k <= K.dimension; ++k) {
        auto faces = faces_of_dimension(K, k);
        all_faces.insert(all_faces.end(), faces.begin(), faces.end());
    }
    for (size_t i = 0; i < all_faces.size(); ++i)
        face_id[all_faces[i]] = static_cast<VertexId>(i);

    std::vector<std::pair<Simplex, int>> oriented;
    const int d = K.dimension;
    for (size_t fi = 0; fi < K.facets.size(); ++fi) {
        const Simplex& f = K.facets[fi];
        std::vector<int> perm(d + 1);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int psign = 1;
            for (int i = 0; i <= d; ++i)
                for (int j = i + 1; j <= d; ++j)
                    if (perm[i] > perm[j]) psign = -psign;
            Simplex flag_tuple(d + 1);
            Simplex face;
            for (int i = 0; i <= d; ++i) {
                face.push_back(f[perm[i]]);
                Simplex sorted = face;
                std::sort(sorted.begin(), sorted.end());
                flag_tuple[i] = face_id[sorted];
            }
            int tsign = sort_sign(flag_tuple) * psign * M.signs[fi];
            std::sort(flag_tuple.begin(), flag_tuple.end());
            oriented.push_back({flag_tuple, tsign});
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    SubdivisionResult out;
    out.manifold = detail::assemble_oriented(std::move(oriented), true);
    out.face_of_vertex = std::move(all_faces);
    return out;
}

/// Iterated barycentric subdivision; face_of_vertex refers to the ORIGINAL
/// complex (composed through the intermediate levels by taking unions).
inline SubdivisionResult barycentric_subdivide(const OrientedPseudomanifold& M, int times) {
    if (times < 1) throw ValidationError("subdivision count must be positive");
    SubdivisionResult cur = barycentric_subdivide_once(M);
    for (int t = 1; t < times; ++t) {
        SubdivisionResult next = barycentric_subdivide_once(cur.manifold);
        for (Simplex& face : next.face_of_vertex) {
            std::set<VertexId> orig;
            for (VertexId mid : face) {
                const Simplex& pre = cur.face_of_vertex[mid];
                orig.insert(pre.begin(), pre.end());
            }
            face.assign(orig.begin(), orig.end());
        }
        cur = std::move(next);
    }
    return cur;
}

struct PrismResult {
    OrientedPseudomanifold manifold;
    std::map<VertexId, VertexId> bottom;  // original vertex -> bottom copy
    std::map<VertexId, VertexId> top;     // original vertex -> top copy
};

/// Staircase triangulation of |M| x [0,1] for a closed M. Boundary is two
/// copies of M: the top carries M's orientation, the bottom the reverse.
/// `vertex_order`, when given, is the total order used for the staircase;
/// the default is ascending vertex id.
inline PrismResult prism(const OrientedPseudomanifold& M,
                         const std::vector<VertexId>& vertex_order = {}) {
    if (!M.closed()) throw ValidationError("prism requires a closed pseudomanifold");
    const SimplicialComplex& K = M.complex;

    std::map<VertexId, int> rank;
    if (vertex_order.empty()) {
        for (size_t i = 0; i < K.vertices.size(); ++i) rank[K.vertices[i]] = static_cast<int>(i);
    } else {
        if (vertex_order.size() != K.vertices.size())
            throw ValidationError("vertex order must list every vertex exactly once");
        for (size_t i = 0; i < vertex_order.size(); ++i) {
            if (!K.has_vertex(vertex_order[i]) || rank.count(vertex_order[i]))
                throw ValidationError("vertex order must list every vertex exactly once");
            rank[vertex_order[i]] = static_cast<int>(i);
        }
    }

    PrismResult out;
    VertexId offset = K.vertices.back() + 1;
    for (VertexId v : K.vertices) {
        out.bottom[v] = v;
        out.top[v] = v + offset;
    }

    std::vector<std::pair<Simplex, int>> oriented;
    const int d = K.dimension;
    for (size_t fi = 0; fi < K.facets.size(); ++fi) {
        Simplex f = K.facets[fi];
        std::sort(f.begin(), f.end(),
                  [&](VertexId a, VertexId b) { return rank[a] < rank[b]; });
        // orientation of f in this order relative to the stored (sorted) class
        int base = sort_sign(f) * M.signs[fi];
        for (int i = 0; i <= d; ++i) {
            Simplex tuple;
            for (int j = 0; j <= i; ++j) tuple.push_back(out.bottom[f[j]]);
            for (int j = i; j <= d; ++j) tuple.push_back(out.top[f[j]]);
            int s = base * ((i % 2 == 0) ? 1 : -1) * sort_sign(tuple);
            std::sort(tuple.begin(), tuple.end());
            oriented.push_back({tuple, s});
        }
    }
    out.manifold = detail::assemble_oriented(std::move(oriented), true);
    return out;
}

}  // namespace covtop
