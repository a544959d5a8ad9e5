#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "covtop/simplicial_complex.hpp"

namespace covtop {

/// A pure complex with a coherent facet orientation. The orientation of
/// facet k is the even-permutation class of its sorted vertex tuple when
/// signs[k] == +1, the odd class when signs[k] == -1.
///
/// Induced boundary convention: the oriented facet (v_0,...,v_d) induces
/// (-1)^i on its sorted ridge omitting position i. Coherence means the two
/// induced signs on every interior ridge cancel.
struct OrientedPseudomanifold {
    SimplicialComplex complex;
    std::vector<int> signs;               // one of {+1,-1} per facet
    std::vector<Simplex> boundary_facets; // sorted ridges in exactly one facet

    int dimension() const { return complex.dimension; }
    bool closed() const { return boundary_facets.empty(); }
};

inline OrientedPseudomanifold reverse_orientation(OrientedPseudomanifold M) {
    for (int& s : M.signs) s = -s;
    return M;
}

namespace detail {

struct RidgeIncidence {
    size_t facet;
    int induced;  // signs[facet] * (-1)^position
};

inline std::map<Simplex, std::vector<std::pair<size_t, int>>>
ridge_map(const SimplicialComplex& K) {
    // value: (facet index, (-1)^omitted_position)
    std::map<Simplex, std::vector<std::pair<size_t, int>>> ridges;
    for (size_t fi = 0; fi < K.facets.size(); ++fi) {
        const Simplex& f = K.facets[fi];
        for (size_t i = 0; i < f.size(); ++i) {
            Simplex r;
            r.reserve(f.size() - 1);
            for (size_t j = 0; j < f.size(); ++j)
                if (j != i) r.push_back(f[j]);
            ridges[r].push_back({fi, (i % 2 == 0) ? 1 : -1});
        }
    }
    return ridges;
}

}  // namespace detail

/// Check the pseudomanifold conditions, find a coherent orientation (or
/// verify `given_signs`), and report boundary ridges.
inline OrientedPseudomanifold validate_pseudomanifold(
    const SimplicialComplex& K, bool want_closed,
    const std::optional<std::vector<int>>& given_signs = std::nullopt,
    bool require_connected = true) {
    if (K.dimension < 1)
        throw NotPseudomanifold("dimension must be at least 1");

    auto ridges = detail::ridge_map(K);
    for (const auto& [r, inc] : ridges)
        if (inc.size() > 2)
            throw NotPseudomanifold("face " + simplex_to_string(r) + " lies in " +
                                    std::to_string(inc.size()) + " facets");

    // strong connectivity through interior ridges
    if (require_connected) {
        std::vector<char> seen(K.facets.size(), 0);
        std::vector<size_t> stack = {0};
        seen[0] = 1;
        size_t reached = 1;
        std::map<size_t, std::vector<size_t>> adj;
        for (const auto& [r, inc] : ridges)
            if (inc.size() == 2) {
                adj[inc[0].first].push_back(inc[1].first);
                adj[inc[1].first].push_back(inc[0].first);
            }
        while (!stack.empty()) {
            size_t f = stack.back();
            stack.pop_back();
            for (size_t g : adj[f])
                if (!seen[g]) {
                    seen[g] = 1;
                    ++reached;
                    stack.push_back(g);
                }
        }
        if (reached != K.facets.size())
            throw NotStronglyConnected("facet graph has more than one component");
    }

    OrientedPseudomanifold M;
    M.complex = K;
    if (given_signs) {
        if (given_signs->size() != K.facets.size())
            throw ValidationError("orientation sign count does not match facet count");
        for (int s : *given_signs)
            if (s != 1 && s != -1) throw ValidationError("orientation signs must be +1 or -1");
        M.signs = *given_signs;
        for (const auto& [r, inc] : ridges)
            if (inc.size() == 2) {
                int a = M.signs[inc[0].first] * inc[0].second;
                int b = M.signs[inc[1].first] * inc[1].second;
                if (a + b != 0)
                    throw NonOrientable("given orientation is not coherent at face " +
                                        simplex_to_string(r));
            }
    } else {
        // propagate from each component's lowest-index facet, sign +1
        M.signs.assign(K.facets.size(), 0);
        std::map<size_t, std::vector<std::pair<size_t, int>>> adj;  // facet -> (nbr, ratio)
        for (const auto& [r, inc] : ridges)
            if (inc.size() == 2) {
                // coherence: s_b = -s_a * ind_a * ind_b (ind in {+1,-1})
                int ratio = -inc[0].second * inc[1].second;
                adj[inc[0].first].push_back({inc[1].first, ratio});
                adj[inc[1].first].push_back({inc[0].first, ratio});
            }
        for (size_t root = 0; root < K.facets.size(); ++root) {
            if (M.signs[root] != 0) continue;
            M.signs[root] = 1;
            std::vector<size_t> stack = {root};
            while (!stack.empty()) {
                size_t f = stack.back();
                stack.pop_back();
                for (auto [g, ratio] : adj[f]) {
                    int want = M.signs[f] * ratio;
                    if (M.signs[g] == 0) {
                        M.signs[g] = want;
                        stack.push_back(g);
                    } else if (M.signs[g] != want) {
                        throw NonOrientable("no coherent orientation exists");
                    }
                }
            }
        }
    }

    for (const auto& [r, inc] : ridges)
        if (inc.size() == 1) M.boundary_facets.push_back(r);
    std::sort(M.boundary_facets.begin(), M.boundary_facets.end());

    if (want_closed && !M.boundary_facets.empty())
        throw HasBoundary(std::to_string(M.boundary_facets.size()) +
                          " boundary faces, expected none");
    return M;
}

/// The boundary complex with the induced orientation. May be disconnected.
inline OrientedPseudomanifold boundary_of(const OrientedPseudomanifold& M) {
    if (M.boundary_facets.empty()) throw EmptyBoundary("manifold is closed");
    auto ridges = detail::ridge_map(M.complex);
    std::vector<Simplex> bfacets;
    std::map<Simplex, int> bsigns;
    for (const auto& [r, inc] : ridges)
        if (inc.size() == 1) {
            bfacets.push_back(r);
            bsigns[r] = M.signs[inc[0].first] * inc[0].second;
        }
    SimplicialComplex B = build_complex(bfacets);
    OrientedPseudomanifold out;
    out.complex = B;
    out.signs.resize(B.facets.size());
    for (size_t i = 0; i < B.facets.size(); ++i) out.signs[i] = bsigns[B.facets[i]];
    return out;
}

/// The standard d-simplex {0,...,d} as a single positively oriented facet.
inline OrientedPseudomanifold oriented_solid_simplex(int d) {
    OrientedPseudomanifold M;
    M.complex = solid_simplex(d);
    M.signs = {1};
    auto ridges = detail::ridge_map(M.complex);
    for (const auto& [r, inc] : ridges) M.boundary_facets.push_back(r);
    std::sort(M.boundary_facets.begin(), M.boundary_facets.end());
    return M;
}

/// Boundary of the standard d-simplex, with its induced orientation. This is
/// the convention anchor for every degree computed downstream.
inline OrientedPseudomanifold boundary_simplex(int d) {
    return boundary_of(oriented_solid_simplex(d));
}

/// Connected components through interior ridges, as facet index lists.
inline std::vector<std::vector<size_t>> facet_components(const SimplicialComplex& K) {
    auto ridges = detail::ridge_map(K);
    std::map<size_t, std::vector<size_t>> adj;
    for (const auto& [r, inc] : ridges)
        if (inc.size() == 2) {
            adj[inc[0].first].push_back(inc[1].first);
            adj[inc[1].first].push_back(inc[0].first);
        }
    std::vector<char> seen(K.facets.size(), 0);
    std::vector<std::vector<size_t>> comps;
    for (size_t root = 0; root < K.facets.size(); ++root) {
        if (seen[root]) continue;
        comps.emplace_back();
        std::vector<size_t> stack = {root};
        seen[root] = 1;
        while (!stack.empty()) {
            size_t f = stack.back();
            stack.pop_back();
            comps.back().push_back(f);
            for (size_t g : adj[f])
                if (!seen[g]) {
                    seen[g] = 1;
                    stack.push_back(g);
                }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

}  // namespace covtop
