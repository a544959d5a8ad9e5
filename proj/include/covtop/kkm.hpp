#pragma once

#include <map>
#include <optional>
#include <vector>

#include "covtop/cover.hpp"
#include "covtop/pseudomanifold.hpp"

namespace covtop {

enum class LabelMode { singleton, subsets };
enum class Verdict { obstructed, extendable, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::obstructed: return "obstructed";
        case Verdict::extendable: return "extendable";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Extend a boundary cover over the interior of an ambient pseudomanifold.
struct ExtensionProblem {
    OrientedPseudomanifold ambient;  // X with nonempty boundary A
    Cover boundary_cover;            // defined exactly on A's vertices
    LabelMode mode = LabelMode::singleton;
    long long budget = 10'000'000;   // node limit

    std::vector<VertexId> free_vertices() const {
        std::set<VertexId> bverts;
        for (const Simplex& b : ambient.boundary_facets)
            bverts.insert(b.begin(), b.end());
        std::vector<VertexId> out;
        for (VertexId v : ambient.complex.vertices)
            if (!bverts.count(v)) out.push_back(v);
        return out;
    }
};

/// Machine-checkable outcome of the search. For `obstructed` the accounting
/// must cover the whole assignment space: explored_assignments equals
/// search_space_size. For `extendable` the witness re-validates against
/// covering_simplex and restricts to the boundary cover.
struct Certificate {
    Verdict verdict = Verdict::inconclusive;
    std::optional<Cover> witness;
    Integer search_space_size = 0;
    Integer explored_assignments = 0;  // leaves reached + leaves cut by pruning
    long long nodes = 0;
    bool exhausted = false;
    std::vector<VertexId> free_vertices;
    int num_sets = 0;
    LabelMode mode = LabelMode::singleton;
};

namespace detail {

inline std::vector<std::set<int>> label_options(int num_sets, LabelMode mode) {
    std::vector<std::set<int>> opts;
    if (mode == LabelMode::singleton) {
        for (int i = 0; i < num_sets; ++i) opts.push_back({i});
    } else {
        for (unsigned mask = 1; mask < (1u << num_sets); ++mask) {
            std::set<int> s;
            for (int i = 0; i < num_sets; ++i)
                if (mask & (1u << i)) s.insert(i);
            opts.push_back(std::move(s));
        }
    }
    return opts;
}

struct KkmSearch {
    const ExtensionProblem& p;
    std::vector<VertexId> free;
    std::vector<std::set<int>> options;
    unsigned full_mask;
    // incidence: free vertex position -> facet indices containing it
    std::vector<std::vector<size_t>> incident;
    std::vector<unsigned> facet_mask;  // labels already present per facet
    std::vector<std::set<int>> assignment;
    Certificate cert;
    bool budget_hit = false;

    explicit KkmSearch(const ExtensionProblem& prob) : p(prob) {
        free = p.free_vertices();
        options = label_options(p.boundary_cover.num_sets, p.mode);
        full_mask = (1u << p.boundary_cover.num_sets) - 1;
        const auto& facets = p.ambient.complex.facets;
        std::map<VertexId, size_t> free_pos;
        for (size_t i = 0; i < free.size(); ++i) free_pos[free[i]] = i;
        incident.resize(free.size());
        facet_mask.assign(facets.size(), 0);
        for (size_t fi = 0; fi < facets.size(); ++fi) {
            for (VertexId v : facets[fi]) {
                auto it = free_pos.find(v);
                if (it != free_pos.end()) {
                    incident[it->second].push_back(fi);
                } else {
                    for (int l : p.boundary_cover.labels_of(v))
                        facet_mask[fi] |= 1u << l;
                }
            }
        }
        assignment.resize(free.size());
        cert.free_vertices = free;
        cert.num_sets = p.boundary_cover.num_sets;
        cert.mode = p.mode;
        cert.search_space_size = 1;
        for (size_t i = 0; i < free.size(); ++i)
            cert.search_space_size *= Integer(options.size());
    }

    Integer subtree_size(size_t depth) const {
        Integer s = 1;
        for (size_t i = depth; i < free.size(); ++i) s *= Integer(options.size());
        return s;
    }

    // returns true when a witness was found (stop immediately)
    bool dfs(size_t depth) {
        if (depth == free.size()) {
            cert.explored_assignments += 1;
            return true;  // no facet covered along the way: extension found
        }
        for (const std::set<int>& opt : options) {
            if (++cert.nodes > p.budget) {
                budget_hit = true;
                return false;
            }
            unsigned opt_mask = 0;
            for (int l : opt) opt_mask |= 1u << l;
            bool forced = false;
            std::vector<std::pair<size_t, unsigned>> saved;
            for (size_t fi : incident[depth]) {
                saved.push_back({fi, facet_mask[fi]});
                facet_mask[fi] |= opt_mask;
                if (facet_mask[fi] == full_mask) forced = true;
            }
            if (forced) {
                cert.explored_assignments += subtree_size(depth + 1);
            } else {
                assignment[depth] = opt;
                if (dfs(depth + 1)) return true;
                if (budget_hit) return false;
            }
            for (auto [fi, m] : saved) facet_mask[fi] = m;
        }
        return false;
    }
};

}  // namespace detail

/// Exhaustive (pruned) search for an interior labeling whose cover has no
/// covering simplex. Deterministic: vertices ascending, label options in a
/// fixed order.
inline Certificate verify_kkm(const ExtensionProblem& p) {
    if (p.ambient.boundary_facets.empty())
        throw ValidationError("ambient manifold has no boundary");
    // precondition: the boundary cover itself has no covering simplex on A
    SimplicialComplex A = build_complex(p.ambient.boundary_facets);
    validate_cover(A, p.boundary_cover);
    if (auto w = covering_simplex(A, p.boundary_cover))
        throw CoveringSimplexInInput("boundary cover has covering simplex " +
                                     simplex_to_string(*w));

    detail::KkmSearch search(p);
    bool found = search.dfs(0);
    Certificate cert = std::move(search.cert);
    if (found) {
        cert.verdict = Verdict::extendable;
        Cover w = p.boundary_cover;
        for (size_t i = 0; i < cert.free_vertices.size(); ++i)
            w.labels[cert.free_vertices[i]] = search.assignment[i];
        cert.witness = std::move(w);
        cert.exhausted = false;
    } else if (search.budget_hit) {
        cert.verdict = Verdict::inconclusive;
        cert.exhausted = false;
    } else {
        cert.verdict = Verdict::obstructed;
        cert.exhausted = true;
    }
    return cert;
}

/// First extension with no covering simplex in search order, if any.
inline std::optional<Cover> find_extension(const ExtensionProblem& p) {
    Certificate c = verify_kkm(p);
    if (c.verdict == Verdict::extendable) return c.witness;
    if (c.verdict == Verdict::inconclusive)
        throw BudgetExceeded("node budget exhausted after " + std::to_string(c.nodes));
    return std::nullopt;
}

struct SpernerCount {
    long long unsigned_count = 0;
    long long signed_count = 0;
};

/// Count fully labeled facets of a Sperner-labeled triangulated simplex.
/// `carrier[v]` is the face of the original simplex that v subdivides; the
/// Sperner condition requires label(v) to be a vertex of that face.
inline SpernerCount sperner_count(const OrientedPseudomanifold& M,
                                  const std::map<VertexId, int>& labels,
                                  const std::map<VertexId, Simplex>& carrier) {
    const int n = M.dimension();
    for (VertexId v : M.complex.vertices) {
        auto lit = labels.find(v);
        auto cit = carrier.find(v);
        if (lit == labels.end()) throw MissingVertex("no label for vertex " + std::to_string(v));
        if (cit == carrier.end())
            throw MissingVertex("no carrier for vertex " + std::to_string(v));
        if (lit->second < 0 || lit->second > n)
            throw LabelOutOfRange("label " + std::to_string(lit->second));
        if (!std::binary_search(cit->second.begin(), cit->second.end(), lit->second))
            throw NotSperner("vertex " + std::to_string(v) + " labeled " +
                             std::to_string(lit->second) + " outside its carrier " +
                             simplex_to_string(cit->second));
    }
    SpernerCount out;
    for (size_t fi = 0; fi < M.complex.facets.size(); ++fi) {
        const Simplex& f = M.complex.facets[fi];
        std::vector<VertexId> label_tuple;
        std::set<int> distinct;
        for (VertexId v : f) {
            label_tuple.push_back(labels.at(v));
            distinct.insert(labels.at(v));
        }
        if (static_cast<int>(distinct.size()) != n + 1) continue;
        ++out.unsigned_count;
        out.signed_count += sort_sign(label_tuple) * M.signs[fi];
    }
    return out;
}

}  // namespace covtop
