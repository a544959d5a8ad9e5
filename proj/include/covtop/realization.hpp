#pragma once

#include <map>

#include "covtop/linalg.hpp"
#include "covtop/simplicial_complex.hpp"

namespace covtop {

/// Exact-rational coordinates for the vertices of a complex.
struct GeometricRealization {
    std::map<VertexId, RatVector> coordinates;
    int ambient_dim = 0;
};

/// Every vertex has coordinates of the right dimension and every facet is
/// affinely independent.
inline void validate_realization(const SimplicialComplex& K,
                                 const GeometricRealization& G) {
    for (VertexId v : K.vertices) {
        auto it = G.coordinates.find(v);
        if (it == G.coordinates.end())
            throw ValidationError("vertex " + std::to_string(v) + " has no coordinates");
        if (static_cast<int>(it->second.size()) != G.ambient_dim)
            throw ValidationError("vertex " + std::to_string(v) +
                                  " coordinate dimension mismatch");
    }
    for (const Simplex& f : K.facets) {
        RatMatrix diffs;
        const RatVector& base = G.coordinates.at(f[0]);
        for (size_t i = 1; i < f.size(); ++i) {
            RatVector row = G.coordinates.at(f[i]);
            for (int j = 0; j < G.ambient_dim; ++j) row[j] -= base[j];
            diffs.push_back(std::move(row));
        }
        if (linalg::rank(diffs) != f.size() - 1)
            throw ValidationError("facet " + simplex_to_string(f) +
                                  " is affinely degenerate");
    }
}

}  // namespace covtop
