#pragma once

#include <map>
#include <optional>
#include <set>

#include "covtop/linalg.hpp"
#include "covtop/pseudomanifold.hpp"
#include "covtop/subdivision.hpp"

namespace covtop {

/// A cover by n+2 sets, realized as unions of open vertex stars: the set
/// with index i is the union of stars of the vertices whose label set
/// contains i.
struct Cover {
    int num_sets = 0;
    std::map<VertexId, std::set<int>> labels;

    const std::set<int>& labels_of(VertexId v) const {
        auto it = labels.find(v);
        if (it == labels.end())
            throw MissingVertex("vertex " + std::to_string(v) + " has no labels");
        return it->second;
    }
};

inline void validate_cover(const SimplicialComplex& K, const Cover& C) {
    for (VertexId v : K.vertices) {
        const std::set<int>& ls = C.labels_of(v);
        if (ls.empty())
            throw ValidationError("vertex " + std::to_string(v) + " has an empty label set");
        for (int l : ls)
            if (l < 0 || l >= C.num_sets)
                throw LabelOutOfRange("label " + std::to_string(l) + " at vertex " +
                                      std::to_string(v) + " not below " +
                                      std::to_string(C.num_sets));
    }
}

/// Barycentric weights per vertex; subordination means a positive weight at
/// index i only where i is among the vertex labels.
struct PartitionOfUnity {
    std::map<VertexId, RatVector> weights;
};

inline void validate_partition(const SimplicialComplex& K, const Cover& C,
                               const PartitionOfUnity& phi) {
    for (VertexId v : K.vertices) {
        auto it = phi.weights.find(v);
        if (it == phi.weights.end())
            throw ValidationError("vertex " + std::to_string(v) + " has no weights");
        const RatVector& w = it->second;
        if (static_cast<int>(w.size()) != C.num_sets)
            throw ValidationError("weight vector length mismatch at vertex " +
                                  std::to_string(v));
        Rational sum = 0;
        for (int i = 0; i < C.num_sets; ++i) {
            if (w[i] < 0)
                throw ValidationError("negative weight at vertex " + std::to_string(v));
            if (w[i] > 0 && !C.labels_of(v).count(i))
                throw NotSubordinate("positive weight at index " + std::to_string(i) +
                                     " outside labels of vertex " + std::to_string(v));
            sum += w[i];
        }
        if (sum != 1)
            throw ValidationError("weights at vertex " + std::to_string(v) +
                                  " sum to " + to_string(sum));
    }
}

/// A map into the standard simplex on num_sets vertices, affine on each
/// simplex of the source.
struct PLMap {
    OrientedPseudomanifold source;
    int target_dim = 0;  // n+1; the target simplex has target_dim+1 vertices
    std::map<VertexId, RatVector> vertex_images;

    const RatVector& image_of(VertexId v) const { return vertex_images.at(v); }
};

/// A simplex whose vertex labels jointly cover {0,...,num_sets-1}, if one
/// exists. The returned witness is shrunk to a minimal covering face.
inline std::optional<Simplex> covering_simplex(const SimplicialComplex& K, const Cover& C) {
    validate_cover(K, C);
    for (const Simplex& f : K.facets) {
        std::set<int> seen;
        for (VertexId v : f) {
            const auto& ls = C.labels_of(v);
            seen.insert(ls.begin(), ls.end());
        }
        if (static_cast<int>(seen.size()) == C.num_sets) {
            // greedy shrink to a minimal covering subset
            Simplex witness = f;
            for (size_t i = 0; i < witness.size();) {
                Simplex trial = witness;
                trial.erase(trial.begin() + static_cast<long>(i));
                std::set<int> s;
                for (VertexId v : trial) {
                    const auto& ls = C.labels_of(v);
                    s.insert(ls.begin(), ls.end());
                }
                if (static_cast<int>(s.size()) == C.num_sets)
                    witness = trial;
                else
                    ++i;
            }
            return witness;
        }
    }
    return std::nullopt;
}

/// Uniform weights over each vertex's label set.
inline PartitionOfUnity default_partition(const SimplicialComplex& K, const Cover& C) {
    validate_cover(K, C);
    PartitionOfUnity phi;
    for (VertexId v : K.vertices) {
        const std::set<int>& ls = C.labels_of(v);
        RatVector w(C.num_sets, Rational(0));
        Rational share(1, static_cast<Integer>(ls.size()));
        for (int l : ls) w[l] = share;
        phi.weights[v] = std::move(w);
    }
    return phi;
}

/// The map sending each vertex to its weight vector, read as barycentric
/// coordinates in the target simplex, extended affinely.
inline PLMap pl_map(const OrientedPseudomanifold& M, const Cover& C,
                    const PartitionOfUnity& phi) {
    validate_cover(M.complex, C);
    validate_partition(M.complex, C, phi);
    PLMap f;
    f.source = M;
    f.target_dim = C.num_sets - 1;
    for (VertexId v : M.complex.vertices) f.vertex_images[v] = phi.weights.at(v);
    return f;
}

inline PLMap pl_map(const OrientedPseudomanifold& M, const Cover& C) {
    return pl_map(M, C, default_partition(M.complex, C));
}

/// True iff the image avoids the interior of the target simplex: on every
/// facet some coordinate vanishes identically. Returns a violating facet
/// otherwise.
struct BoundaryImageCheck {
    bool in_boundary;
    std::optional<Simplex> violating_simplex;
};

inline BoundaryImageCheck image_in_boundary(const PLMap& f) {
    const int n2 = f.target_dim + 1;
    for (const Simplex& facet : f.source.complex.facets) {
        bool ok = false;
        for (int i = 0; i < n2 && !ok; ++i) {
            bool all_zero = true;
            for (VertexId v : facet)
                if (f.image_of(v)[i] != 0) {
                    all_zero = false;
                    break;
                }
            ok = all_zero;
        }
        if (!ok) return {false, facet};
    }
    return {true, std::nullopt};
}

/// Restriction of a cover to a subcomplex's vertices.
inline Cover restrict_cover(const Cover& C, const std::vector<VertexId>& sub_vertices) {
    Cover out;
    out.num_sets = C.num_sets;
    for (VertexId v : sub_vertices) out.labels[v] = C.labels_of(v);
    return out;
}

/// Import a simplicial map as a singleton-label cover plus the partition
/// putting weight 1 on the image vertex.
inline std::pair<Cover, PartitionOfUnity> simplicial_map_as_cover(
    const SimplicialComplex& K, const std::map<VertexId, int>& vertex_map, int num_sets) {
    Cover C;
    C.num_sets = num_sets;
    PartitionOfUnity phi;
    for (VertexId v : K.vertices) {
        auto it = vertex_map.find(v);
        if (it == vertex_map.end())
            throw MissingVertex("vertex " + std::to_string(v) + " is not mapped");
        if (it->second < 0 || it->second >= num_sets)
            throw LabelOutOfRange("image index " + std::to_string(it->second));
        C.labels[v] = {it->second};
        RatVector w(num_sets, Rational(0));
        w[it->second] = 1;
        phi.weights[v] = std::move(w);
    }
    return {C, phi};
}

/// Transport a cover through a barycentric subdivision: a barycenter is
/// labeled by the union of the labels of the face it subdivides. The induced
/// map has a covering simplex iff the original does, and equal degree.
inline Cover subdivide_cover(const Cover& C, const SubdivisionResult& sd) {
    Cover out;
    out.num_sets = C.num_sets;
    for (size_t nv = 0; nv < sd.face_of_vertex.size(); ++nv) {
        std::set<int> ls;
        for (VertexId orig : sd.face_of_vertex[nv]) {
            const auto& l = C.labels_of(orig);
            ls.insert(l.begin(), l.end());
        }
        out.labels[static_cast<VertexId>(nv)] = std::move(ls);
    }
    return out;
}

}  // namespace covtop
