#pragma once

#include <optional>

#include "covtop/degree.hpp"
#include "covtop/homology.hpp"
#include "covtop/kkm.hpp"
#include "covtop/subdivision.hpp"

namespace covtop {

enum class Relation { homotopic, cobordant, distinct, null_cobordant, unknown };
enum class Basis { witness, invariant, theorem, none };

inline std::string to_string(Relation r) {
    switch (r) {
        case Relation::homotopic: return "homotopic";
        case Relation::cobordant: return "cobordant";
        case Relation::distinct: return "distinct";
        case Relation::null_cobordant: return "null_cobordant";
        case Relation::unknown: return "unknown";
    }
    return "?";
}

inline std::string to_string(Basis b) {
    switch (b) {
        case Basis::witness: return "witness";
        case Basis::invariant: return "invariant";
        case Basis::theorem: return "theorem";
        case Basis::none: return "none";
    }
    return "?";
}

struct ClassificationVerdict {
    Relation relation = Relation::unknown;
    Basis basis = Basis::none;
    std::optional<long long> degree1, degree2;
    // witness data: the prism over the source carrying a cover that has no
    // covering simplex and restricts to the two input covers
    std::optional<PrismResult> prism_carrier;
    std::optional<Cover> prism_cover;
    std::string note;
};

/// The prism cover with S1 on the bottom copy and S2 on the top copy.
inline Cover prism_cover(const PrismResult& pr, const Cover& s1, const Cover& s2) {
    Cover q;
    q.num_sets = s1.num_sets;
    for (const auto& [orig, bot] : pr.bottom) q.labels[bot] = s1.labels_of(orig);
    for (const auto& [orig, top] : pr.top) q.labels[top] = s2.labels_of(orig);
    return q;
}

/// Re-validate a prism homotopy witness: the cover restricts to S1 and S2 on
/// the two boundary copies and has no covering simplex.
inline bool validate_homotopy_witness(const OrientedPseudomanifold& K, const Cover& s1,
                                      const Cover& s2, const PrismResult& pr,
                                      const Cover& q) {
    for (const auto& [orig, bot] : pr.bottom)
        if (q.labels_of(bot) != s1.labels_of(orig)) return false;
    for (const auto& [orig, top] : pr.top)
        if (q.labels_of(top) != s2.labels_of(orig)) return false;
    (void)K;
    return !covering_simplex(pr.manifold.complex, q).has_value();
}

namespace detail {

inline void require_no_covering(const SimplicialComplex& K, const Cover& c,
                                const char* which) {
    if (auto w = covering_simplex(K, c))
        throw CoveringSimplexInInput(std::string(which) + " has covering simplex " +
                                     simplex_to_string(*w));
}

/// Exact equality after relabeling both vertex sets to 0..V-1 in ascending
/// order. Deliberately not an isomorphism search.
inline bool canonically_equal(const OrientedPseudomanifold& a,
                              const OrientedPseudomanifold& b) {
    if (a.complex.vertices.size() != b.complex.vertices.size()) return false;
    if (a.complex.facets.size() != b.complex.facets.size()) return false;
    auto canon = [](const OrientedPseudomanifold& m) {
        std::map<VertexId, VertexId> re;
        VertexId next = 0;
        for (VertexId v : m.complex.vertices) re[v] = next++;
        std::vector<Simplex> fs;
        for (const Simplex& f : m.complex.facets) {
            Simplex g;
            for (VertexId v : f) g.push_back(re[v]);
            std::sort(g.begin(), g.end());
            fs.push_back(g);
        }
        return std::make_pair(fs, m.signs);
    };
    return canon(a) == canon(b);
}

}  // namespace detail

/// Decide homotopy of two covers of the same closed oriented pseudomanifold:
/// prism witness first, degree comparison second, sphere classification last.
inline ClassificationVerdict covers_homotopic(const OrientedPseudomanifold& K,
                                              const Cover& s1, const Cover& s2,
                                              int threads = 1) {
    if (!K.closed()) throw NotClosed("covers_homotopic needs a closed source");
    if (s1.num_sets != s2.num_sets)
        throw DimensionMismatch("covers target different simplices");
    detail::require_no_covering(K.complex, s1, "first cover");
    detail::require_no_covering(K.complex, s2, "second cover");

    ClassificationVerdict v;
    PrismResult pr = prism(K);
    Cover q = prism_cover(pr, s1, s2);
    if (!covering_simplex(pr.manifold.complex, q)) {
        v.relation = Relation::homotopic;
        v.basis = Basis::witness;
        v.prism_carrier = std::move(pr);
        v.prism_cover = std::move(q);
        return v;
    }

    v.degree1 = cover_degree(K, s1, threads).degree;
    v.degree2 = cover_degree(K, s2, threads).degree;
    if (*v.degree1 != *v.degree2) {
        v.relation = Relation::distinct;
        v.basis = Basis::invariant;
        return v;
    }
    const int n = K.dimension();
    if (s1.num_sets == n + 2 && is_homology_sphere(K.complex, n)) {
        v.relation = Relation::homotopic;
        v.basis = Basis::invariant;
        v.note = "equal degree on a homology sphere";
        return v;
    }
    v.relation = Relation::unknown;
    v.note = "equal degrees but no prism witness and no sphere certification";
    return v;
}

/// Decide cobordism of covers on two closed oriented pseudomanifolds of the
/// same dimension.
inline ClassificationVerdict covers_cobordant(const OrientedPseudomanifold& m1,
                                              const Cover& s1,
                                              const OrientedPseudomanifold& m2,
                                              const Cover& s2, int threads = 1) {
    if (m1.dimension() != m2.dimension())
        throw DimensionMismatch("manifolds have different dimensions");
    if (s1.num_sets != s2.num_sets)
        throw DimensionMismatch("covers target different simplices");
    if (!m1.closed() || !m2.closed()) throw NotClosed("cobordism needs closed manifolds");
    detail::require_no_covering(m1.complex, s1, "first cover");
    detail::require_no_covering(m2.complex, s2, "second cover");

    const int m = m1.dimension();
    const int n = s1.num_sets - 2;
    ClassificationVerdict v;
    if (m == n) {
        v.degree1 = cover_degree(m1, s1, threads).degree;
        v.degree2 = cover_degree(m2, s2, threads).degree;
        if (detail::canonically_equal(m1, m2)) {
            if (*v.degree1 == *v.degree2) {
                v.relation = Relation::cobordant;
                v.basis = Basis::invariant;
                return v;
            }
        }
        if (*v.degree1 != *v.degree2 && is_homology_sphere(m1.complex, m) &&
            is_homology_sphere(m2.complex, m)) {
            v.relation = Relation::distinct;
            v.basis = Basis::invariant;
            return v;
        }
        if (*v.degree1 == *v.degree2 && is_homology_sphere(m1.complex, m) &&
            is_homology_sphere(m2.complex, m)) {
            v.relation = Relation::cobordant;
            v.basis = Basis::invariant;
            v.note = "equal degree on homology spheres";
            return v;
        }
        v.relation = Relation::unknown;
        v.note = "complexes neither identical nor certified spheres";
        return v;
    }
    // m != n: trivial cobordism group on spheres
    if (is_homology_sphere(m1.complex, m) && is_homology_sphere(m2.complex, m)) {
        v.relation = Relation::cobordant;
        v.basis = Basis::theorem;
        v.note = "both null-cobordant: sphere-to-sphere cobordism classes vanish off the diagonal dimension";
        return v;
    }
    v.relation = Relation::unknown;
    v.note = "dimension differs from cover index and spheres not certified";
    return v;
}

/// Is a single cover null-cobordant?
inline ClassificationVerdict null_cobordance(const OrientedPseudomanifold& M,
                                             const Cover& s, int threads = 1) {
    if (!M.closed()) throw NotClosed("null-cobordance needs a closed manifold");
    detail::require_no_covering(M.complex, s, "cover");
    const int m = M.dimension();
    const int n = s.num_sets - 2;
    ClassificationVerdict v;
    if (m == n) {
        v.degree1 = cover_degree(M, s, threads).degree;
        v.degree2 = 0;
        if (*v.degree1 == 0) {
            v.relation = Relation::null_cobordant;
            v.basis = Basis::invariant;
        } else {
            v.relation = Relation::distinct;
            v.basis = Basis::invariant;
            v.note = "nonzero degree obstructs null-cobordance";
        }
        return v;
    }
    if (m < n) {
        v.relation = Relation::null_cobordant;
        v.basis = Basis::theorem;
        v.note = "maps below the target dimension are null-homotopic";
        return v;
    }
    if (is_homology_sphere(M.complex, m)) {
        v.relation = Relation::null_cobordant;
        v.basis = Basis::theorem;
        v.note = "sphere-to-sphere cobordism classes vanish above the target dimension";
        return v;
    }
    v.relation = Relation::unknown;
    v.note = "no sphere certification for the source";
    return v;
}

}  // namespace covtop
