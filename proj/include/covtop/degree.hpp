#pragma once

#include <future>
#include <optional>
#include <vector>

#include "covtop/cover.hpp"
#include "covtop/linalg.hpp"

namespace covtop {

/// An interior point of one facet of the target boundary sphere.
struct RegularValue {
    int omitted_index = 0;   // the target facet omits this vertex
    RatVector point;         // full barycentric coordinates; point[omitted_index] == 0
};

struct PreimagePoint {
    size_t source_facet;     // index into source.complex.facets
    RatVector barycentric;   // strictly positive, sums to 1
    int sign;                // orientation comparison, +1 or -1
};

struct DegreeResult {
    long long degree = 0;
    std::vector<PreimagePoint> preimages;
    RegularValue regular_value_used;
};

namespace detail {

inline const std::vector<int>& small_primes() {
    static const std::vector<int> p = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                       31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                       73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
    return p;
}

/// Deterministic candidate regular values: round 0 has facet coordinates
/// proportional to 1,2,...,n+1; round t perturbs coordinate k by 1/p_t^(k+1)
/// for the t-th prime p_t. Any finite set of degenerate hyperplanes is
/// escaped by some round.
inline RegularValue regular_value_candidate(int target_dim, int omitted, int round) {
    const int n1 = target_dim;  // coordinates per target facet = n+1
    RatVector w(target_dim + 1, Rational(0));
    Rational sum = 0;
    int k = 0;
    for (int idx = 0; idx <= target_dim; ++idx) {
        if (idx == omitted) continue;
        Rational c(k + 1);
        if (round > 0) {
            Integer p = small_primes()[(round - 1) % small_primes().size()];
            Integer q = 1;
            for (int e = 0; e <= k + (round - 1) / static_cast<int>(small_primes().size());
                 ++e)
                q *= p;
            c += Rational(1, q);
        }
        w[idx] = c;
        sum += c;
        ++k;
    }
    for (int idx = 0; idx <= target_dim; ++idx) w[idx] /= sum;
    (void)n1;
    return RegularValue{omitted, w};
}

enum class FacetOutcome { kNone, kPreimage, kDegenerate };

/// Preimage of x inside one source facet, for a facet whose vertex images
/// all lie in the target facet hyperplane.
struct FacetPreimage {
    FacetOutcome outcome;
    RatVector barycentric;
    int det_sign;
};

inline FacetPreimage facet_preimage(const PLMap& f, const Simplex& facet,
                                    const RegularValue& x) {
    const int n2 = f.target_dim + 1;
    const size_t nv = facet.size();
    RatMatrix a;
    RatVector b;
    for (int c = 0; c < n2; ++c) {
        if (c == x.omitted_index) continue;
        RatVector row(nv);
        for (size_t i = 0; i < nv; ++i) row[i] = f.image_of(facet[i])[c];
        a.push_back(std::move(row));
        b.push_back(x.point[c]);
    }
    {
        RatVector ones(nv, Rational(1));
        a.push_back(std::move(ones));
        b.push_back(Rational(1));
    }
    auto sol = linalg::solve(a, b);
    if (!sol) return {FacetOutcome::kNone, {}, 0};
    if (!sol->kernel.empty()) return {FacetOutcome::kDegenerate, {}, 0};
    bool interior = true, on_face = false;
    for (const Rational& l : sol->point) {
        if (l < 0) interior = false;
        if (l == 0) on_face = true;
    }
    if (!interior) return {FacetOutcome::kNone, {}, 0};
    if (on_face) return {FacetOutcome::kDegenerate, {}, 0};

    // orientation sign: Jacobian of the facet chart map (drop vertex 0) to
    // the target facet chart (drop its first coordinate index)
    std::vector<int> target_vs;
    for (int c = 0; c < n2; ++c)
        if (c != x.omitted_index) target_vs.push_back(c);
    const size_t n = nv - 1;
    RatMatrix jac(n, RatVector(n));
    for (size_t k = 1; k <= n; ++k)
        for (size_t i = 1; i <= n; ++i)
            jac[k - 1][i - 1] = f.image_of(facet[i])[target_vs[k]] -
                                f.image_of(facet[0])[target_vs[k]];
    int ds = sign_of(linalg::det(jac));
    if (ds == 0) return {FacetOutcome::kDegenerate, {}, 0};
    return {FacetOutcome::kPreimage, sol->point, ds};
}

}  // namespace detail

constexpr int kMaxRegularValueRounds = 100;

/// Degree of a PL map from a closed oriented n-pseudomanifold to the
/// boundary of the target simplex, by exact signed preimage counting at a
/// regular value. Retries the deterministic candidate sequence on any
/// genericity failure.
inline DegreeResult degree(const PLMap& f, int threads = 1) {
    const int n = f.target_dim - 1;
    if (!f.source.closed()) throw NotClosed("degree requires a closed source");
    if (f.source.dimension() != n)
        throw DimensionMismatch("source dimension " +
                                std::to_string(f.source.dimension()) +
                                " does not match target sphere dimension " +
                                std::to_string(n));
    auto check = image_in_boundary(f);
    if (!check.in_boundary)
        throw ImageNotInBoundary("map hits the target interior on facet " +
                                 simplex_to_string(*check.violating_simplex));

    static thread_local std::map<int, OrientedPseudomanifold> target_cache;
    auto tc = target_cache.find(f.target_dim);
    if (tc == target_cache.end())
        tc = target_cache.emplace(f.target_dim, boundary_simplex(f.target_dim)).first;
    const OrientedPseudomanifold& target = tc->second;

    const auto& facets = f.source.complex.facets;
    for (int round = 0; round < kMaxRegularValueRounds; ++round) {
        for (int omitted = 0; omitted <= f.target_dim; ++omitted) {
            RegularValue x = detail::regular_value_candidate(f.target_dim, omitted, round);

            // candidate facets: every vertex image lies in the target facet
            std::vector<size_t> candidates;
            for (size_t fi = 0; fi < facets.size(); ++fi) {
                bool in_plane = true;
                for (VertexId v : facets[fi])
                    if (f.image_of(v)[omitted] != 0) {
                        in_plane = false;
                        break;
                    }
                if (in_plane) candidates.push_back(fi);
            }

            std::vector<detail::FacetPreimage> results(candidates.size());
            auto run = [&](size_t lo, size_t hi) {
                for (size_t i = lo; i < hi; ++i)
                    results[i] = detail::facet_preimage(f, facets[candidates[i]], x);
            };
            if (threads <= 1 || candidates.size() < 2) {
                run(0, candidates.size());
            } else {
                size_t nthreads = std::min<size_t>(threads, candidates.size());
                size_t chunk = (candidates.size() + nthreads - 1) / nthreads;
                std::vector<std::future<void>> futs;
                for (size_t t = 0; t < nthreads; ++t) {
                    size_t lo = t * chunk, hi = std::min(lo + chunk, candidates.size());
                    if (lo < hi)
                        futs.push_back(std::async(std::launch::async, run, lo, hi));
                }
                for (auto& fu : futs) fu.get();
            }

            bool degenerate = false;
            DegreeResult out;
            out.regular_value_used = x;
            // target facet orientation sign
            Simplex tfacet;
            for (int c = 0; c <= f.target_dim; ++c)
                if (c != omitted) tfacet.push_back(c);
            int tsign = target.signs[target.complex.facet_index(tfacet)];

            for (size_t i = 0; i < candidates.size(); ++i) {
                const auto& r = results[i];
                if (r.outcome == detail::FacetOutcome::kDegenerate) {
                    degenerate = true;
                    break;
                }
                if (r.outcome == detail::FacetOutcome::kPreimage) {
                    int s = r.det_sign * f.source.signs[candidates[i]] * tsign;
                    out.preimages.push_back({candidates[i], r.barycentric, s});
                    out.degree += s;
                }
            }
            if (!degenerate) return out;
        }
    }
    throw GenericityExhausted("no regular value found in " +
                              std::to_string(kMaxRegularValueRounds) + " rounds");
}

/// Degree of the map induced by a cover with the default partition.
inline DegreeResult cover_degree(const OrientedPseudomanifold& M, const Cover& C,
                                 int threads = 1) {
    return degree(pl_map(M, C), threads);
}

}  // namespace covtop
