#pragma once

#include <map>
#include <optional>
#include <vector>

#include "covtop/degree.hpp"
#include "covtop/realization.hpp"

namespace covtop {

/// Polygonal components of a regular-value preimage. Closed components list
/// their points cyclically (no repeated first point); open components are
/// arcs whose ends lie on boundary faces of the source.
struct PLCurve {
    struct Component {
        std::vector<RatVector> points;
        bool closed = true;
        std::vector<Simplex> end_faces;  // for arcs: carrier face of each end
    };
    std::vector<Component> components;

    size_t total_points() const {
        size_t n = 0;
        for (const auto& c : components) n += c.points.size();
        return n;
    }
};

namespace detail {

struct CurveSegment {
    size_t tet;
    RatVector bary[2];   // barycentric endpoints in the tet
    Simplex face[2];     // carrier face (3 sorted vertex ids) of each endpoint
    RatVector ambient[2];
};

/// Preimage segment of x inside one tetrahedron, exact. nullopt means empty;
/// a thrown GenericityExhausted-style flag is signalled via `degenerate`.
inline std::optional<CurveSegment> tet_preimage_segment(
    const PLMap& f, const GeometricRealization& G, size_t ti, const RegularValue& x,
    bool& degenerate) {
    const Simplex& tet = f.source.complex.facets[ti];
    const int n2 = f.target_dim + 1;
    RatMatrix a;
    RatVector b;
    for (int c = 0; c < n2; ++c) {
        if (c == x.omitted_index) continue;
        RatVector row(tet.size());
        for (size_t i = 0; i < tet.size(); ++i) row[i] = f.image_of(tet[i])[c];
        a.push_back(std::move(row));
        b.push_back(x.point[c]);
    }
    a.push_back(RatVector(tet.size(), Rational(1)));
    b.push_back(Rational(1));

    auto sol = linalg::solve(a, b);
    if (!sol) return std::nullopt;
    if (sol->kernel.size() != 1) {
        degenerate = true;
        return std::nullopt;
    }
    const RatVector& p = sol->point;
    const RatVector& k = sol->kernel[0];

    // intersect the line p + t k with { lambda_i >= 0 }
    bool have_lo = false, have_hi = false;
    Rational tlo, thi;
    for (size_t i = 0; i < p.size(); ++i) {
        if (k[i] == 0) {
            if (p[i] < 0) return std::nullopt;
            if (p[i] == 0) {  // a coordinate vanishes along the whole line
                degenerate = true;
                return std::nullopt;
            }
            continue;
        }
        Rational t = -p[i] / k[i];
        if (k[i] > 0) {
            if (!have_lo || t > tlo) tlo = t, have_lo = true;
        } else {
            if (!have_hi || t < thi) thi = t, have_hi = true;
        }
    }
    if (!have_lo || !have_hi) {
        degenerate = true;  // unbounded: cannot happen for a genuine simplex slice
        return std::nullopt;
    }
    if (tlo >= thi) {
        if (tlo == thi) degenerate = true;  // touches a face in a single point
        return std::nullopt;
    }

    CurveSegment seg;
    seg.tet = ti;
    Rational ts[2] = {tlo, thi};
    for (int e = 0; e < 2; ++e) {
        RatVector lam(p.size());
        int zeros = 0;
        Simplex face;
        for (size_t i = 0; i < p.size(); ++i) {
            lam[i] = p[i] + ts[e] * k[i];
            if (lam[i] == 0)
                ++zeros;
            else
                face.push_back(tet[i]);
        }
        if (zeros != 1) {  // endpoint on an edge or vertex
            degenerate = true;
            return std::nullopt;
        }
        seg.bary[e] = lam;
        seg.face[e] = face;
        RatVector amb(G.ambient_dim, Rational(0));
        for (size_t i = 0; i < tet.size(); ++i) {
            const RatVector& coord = G.coordinates.at(tet[i]);
            for (int d = 0; d < G.ambient_dim; ++d) amb[d] += lam[i] * coord[d];
        }
        seg.ambient[e] = amb;
    }
    return seg;
}

}  // namespace detail

/// The preimage of a regular value as exact polygonal loops and arcs.
/// Returns nullopt on a genericity failure at this particular value.
inline std::optional<PLCurve> preimage_curve_at(const PLMap& f,
                                                const GeometricRealization& G,
                                                const RegularValue& x) {
    if (f.source.dimension() != 3 || f.target_dim != 3)
        throw DimensionMismatch("preimage curves need a 3-dimensional source and target S^2");
    auto check = image_in_boundary(f);
    if (!check.in_boundary)
        throw ImageNotInBoundary("map hits the target interior on facet " +
                                 simplex_to_string(*check.violating_simplex));
    if (G.coordinates.empty()) throw NoRealization("no coordinates given");
    validate_realization(f.source.complex, G);

    const auto& facets = f.source.complex.facets;
    std::vector<detail::CurveSegment> segs;
    for (size_t ti = 0; ti < facets.size(); ++ti) {
        bool in_plane = true;
        for (VertexId v : facets[ti])
            if (f.image_of(v)[x.omitted_index] != 0) {
                in_plane = false;
                break;
            }
        if (!in_plane) continue;
        bool degenerate = false;
        auto seg = detail::tet_preimage_segment(f, G, ti, x, degenerate);
        if (degenerate) return std::nullopt;
        if (seg) segs.push_back(std::move(*seg));
    }

    // match segment ends across shared faces
    std::map<Simplex, std::vector<std::pair<size_t, int>>> by_face;
    for (size_t si = 0; si < segs.size(); ++si)
        for (int e = 0; e < 2; ++e) by_face[segs[si].face[e]].push_back({si, e});

    std::set<Simplex> boundary(f.source.boundary_facets.begin(),
                               f.source.boundary_facets.end());
    for (const auto& [face, ends] : by_face) {
        bool is_boundary = boundary.count(face) > 0;
        if (is_boundary) {
            if (ends.size() != 1) return std::nullopt;
        } else {
            if (ends.size() != 2) return std::nullopt;
            if (segs[ends[0].first].ambient[ends[0].second] !=
                segs[ends[1].first].ambient[ends[1].second])
                return std::nullopt;
        }
    }

    // chain segments into components, deterministically from the lowest index
    PLCurve curve;
    std::vector<char> used(segs.size(), 0);
    auto other_end = [&](size_t si, int e) -> std::optional<std::pair<size_t, int>> {
        const auto& ends = by_face[segs[si].face[e]];
        if (ends.size() != 2) return std::nullopt;  // boundary face
        auto [oi, oe] = (ends[0].first == si && ends[0].second == e) ? ends[1] : ends[0];
        return std::make_pair(oi, oe);
    };
    auto walk = [&](size_t start, int entry, bool is_loop) -> PLCurve::Component {
        PLCurve::Component comp;
        comp.closed = is_loop;
        if (!is_loop) comp.end_faces.push_back(segs[start].face[entry]);
        size_t ci = start;
        int centry = entry;
        while (true) {
            used[ci] = 1;
            comp.points.push_back(segs[ci].ambient[centry]);
            int cexit = 1 - centry;
            auto next = other_end(ci, cexit);
            if (!next) {
                comp.points.push_back(segs[ci].ambient[cexit]);
                comp.end_faces.push_back(segs[ci].face[cexit]);
                break;
            }
            if (next->first == start && next->second == entry) break;  // loop closed
            ci = next->first;
            centry = next->second;
        }
        return comp;
    };
    // arcs first: start from boundary ends so each arc is traversed once
    for (size_t si = 0; si < segs.size(); ++si)
        for (int e = 0; e < 2 && !used[si]; ++e)
            if (!other_end(si, e)) curve.components.push_back(walk(si, e, false));
    for (size_t si = 0; si < segs.size(); ++si)
        if (!used[si]) curve.components.push_back(walk(si, 0, true));
    return curve;
}

/// Retry the deterministic candidate values until one is generic.
inline std::pair<PLCurve, RegularValue> preimage_curve(
    const PLMap& f, const GeometricRealization& G, int skip_values = 0) {
    int seen = 0;
    for (int round = 0; round < kMaxRegularValueRounds; ++round) {
        for (int omitted = 0; omitted <= f.target_dim; ++omitted) {
            RegularValue x = detail::regular_value_candidate(f.target_dim, omitted, round);
            if (seen++ < skip_values) continue;
            auto curve = preimage_curve_at(f, G, x);
            if (curve) return {std::move(*curve), std::move(x)};
        }
    }
    throw GenericityExhausted("no generic value for preimage curve in " +
                              std::to_string(kMaxRegularValueRounds) + " rounds");
}

}  // namespace covtop
