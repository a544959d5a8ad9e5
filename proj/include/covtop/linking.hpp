#pragma once

#include <optional>
#include <vector>

#include "covtop/homology.hpp"
#include "covtop/preimage.hpp"

namespace covtop {

struct Crossing {
    int sign;      // sign of the crossing in the chosen projection
    bool a_over;   // true when curve a passes over curve b
};

struct LinkingResult {
    long long linking_number = 0;
    std::vector<Crossing> crossings;
};

namespace detail {

inline std::vector<std::pair<RatVector, RatVector>> closed_segments(const PLCurve& c) {
    std::vector<std::pair<RatVector, RatVector>> segs;
    for (const auto& comp : c.components) {
        if (!comp.closed)
            throw ValidationError("linking numbers need closed loops");
        const auto& pts = comp.points;
        for (size_t i = 0; i < pts.size(); ++i)
            segs.push_back({pts[i], pts[(i + 1) % pts.size()]});
    }
    return segs;
}

inline RatVector cross3(const RatVector& a, const RatVector& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline RatVector sub(const RatVector& a, const RatVector& b) {
    RatVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// exact test for a common point of segments [p1,p2] and [q1,q2] in 3-space
inline bool segments_meet(RatVector p1, const RatVector& p2, RatVector q1,
                          const RatVector& q2) {
    RatVector r = sub(p2, p1), s = sub(q2, q1), w = sub(q1, p1);
    RatVector n = cross3(r, s);
    Rational nn = linalg::dot(n, n);
    if (nn != 0) {
        if (linalg::dot(w, n) != 0) return false;  // skew
        Rational t = linalg::dot(cross3(w, s), n) / nn;
        Rational u = linalg::dot(cross3(w, r), n) / nn;
        return t >= 0 && t <= 1 && u >= 0 && u <= 1;
    }
    // parallel: a common point needs collinearity and parameter overlap
    RatVector c = cross3(w, r);
    if (linalg::dot(c, c) != 0) return false;
    Rational rr = linalg::dot(r, r);
    if (rr == 0) std::swap(r, s), std::swap(p1, q1), rr = linalg::dot(r, r);
    if (rr == 0) return p1 == q1;
    Rational t0 = linalg::dot(sub(q1, p1), r) / rr;
    Rational t1 = linalg::dot(sub(q2, p1), r) / rr;
    if (t0 > t1) std::swap(t0, t1);
    return t1 >= 0 && t0 <= 1;
}

}  // namespace detail

/// Signed-crossing linking number of two disjoint collections of closed
/// loops in 3-space. The projection direction walks a deterministic moment
/// curve until every crossing is generic; exact rational predicates
/// throughout.
inline LinkingResult linking_number(const PLCurve& a, const PLCurve& b) {
    auto sa = detail::closed_segments(a);
    auto sb = detail::closed_segments(b);

    for (const auto& [p1, p2] : sa)
        for (const auto& [q1, q2] : sb)
            if (detail::segments_meet(p1, p2, q1, q2))
                throw CurvesIntersect("curves meet at a common point");

    for (int k = 0; k < 64; ++k) {
        // frame: view direction d on a moment curve, screen axes u, d x u
        RatVector d = {Rational(1), Rational(k), Rational(k) * Rational(k)};
        RatVector u = {Rational(-k), Rational(1), Rational(0)};
        RatVector v = detail::cross3(d, u);

        auto screen = [&](const RatVector& p) -> std::pair<Rational, Rational> {
            return {linalg::dot(p, u), linalg::dot(p, v)};
        };
        auto height = [&](const RatVector& p) { return linalg::dot(p, d); };

        bool degenerate = false;
        LinkingResult out;
        long long over_sum = 0;
        long long all_sum = 0;
        for (const auto& [p1, p2] : sa) {
            for (const auto& [q1, q2] : sb) {
                auto [px1, py1] = screen(p1);
                auto [px2, py2] = screen(p2);
                auto [qx1, qy1] = screen(q1);
                auto [qx2, qy2] = screen(q2);
                Rational rx = px2 - px1, ry = py2 - py1;
                Rational sx = qx2 - qx1, sy = qy2 - qy1;
                Rational den = rx * sy - ry * sx;
                if (den == 0) {
                    // parallel screen images: degenerate only if they overlap
                    Rational c1 = (qx1 - px1) * ry - (qy1 - py1) * rx;
                    if (c1 != 0) continue;
                    Rational rr = rx * rx + ry * ry;
                    if (rr != 0) {
                        Rational t0 = ((qx1 - px1) * rx + (qy1 - py1) * ry) / rr;
                        Rational t1 = ((qx2 - px1) * rx + (qy2 - py1) * ry) / rr;
                        if (t0 > t1) std::swap(t0, t1);
                        if (t1 < 0 || t0 > 1) continue;  // collinear but apart
                    }
                    degenerate = true;  // overlapping on screen
                    break;
                }
                Rational s = ((qx1 - px1) * sy - (qy1 - py1) * sx) / den;
                Rational t = ((qx1 - px1) * ry - (qy1 - py1) * rx) / den;
                if (s < 0 || s > 1 || t < 0 || t > 1) continue;
                if (s == 0 || s == 1 || t == 0 || t == 1) {
                    degenerate = true;  // crossing at a segment endpoint
                    break;
                }
                Rational ha = height(p1) + s * (height(p2) - height(p1));
                Rational hb = height(q1) + t * (height(q2) - height(q1));
                if (ha == hb)
                    throw CurvesIntersect("curves meet at a common point");
                int cross_sign = sign_of(den);
                bool a_over = ha > hb;
                out.crossings.push_back({cross_sign, a_over});
                all_sum += cross_sign;
                if (a_over) over_sum += cross_sign;
            }
            if (degenerate) break;
        }
        if (degenerate) continue;
        // the planar intersection number of two closed projected curves is
        // zero; a nonzero tally means a crossing slipped past the predicates
        if (all_sum != 0) continue;
        out.linking_number = over_sum;
        return out;
    }
    throw GenericityExhausted("no generic projection direction for linking number");
}

/// Stereographic projection of loops near the unit 3-sphere from a rational
/// pole on the sphere. This is the central projection from the pole onto the
/// hyperplane through the origin orthogonal to it, so straight segments
/// project to straight segments and vertices project vertex-wise.
inline PLCurve stereographic_project(const PLCurve& loops, const RatVector& pole) {
    if (pole.size() != 4) throw ValidationError("pole must be a 4-vector");
    if (linalg::dot(pole, pole) != 1)
        throw ValidationError("pole must lie on the unit sphere");

    // rational basis of the pole's orthogonal complement, oriented so that
    // (pole, b0, b1, b2) is a positive frame of 4-space
    size_t drop = 0;
    for (size_t i = 1; i < 4; ++i)
        if (abs(numerator(pole[i])) * denominator(pole[drop]) >
            abs(numerator(pole[drop])) * denominator(pole[i]))
            drop = i;
    std::vector<RatVector> basis;
    std::vector<size_t> kept;
    for (size_t i = 0; i < 4; ++i) {
        if (i == drop) continue;
        kept.push_back(i);
        RatVector b(4, Rational(0));
        b[i] = 1;
        for (size_t j = 0; j < 4; ++j) b[j] -= pole[i] * pole[j];
        basis.push_back(std::move(b));
    }
    {
        RatMatrix frame = {pole, basis[0], basis[1], basis[2]};
        if (sign_of(linalg::det(frame)) < 0) std::swap(basis[0], basis[1]);
    }

    auto project = [&](const RatVector& x) -> RatVector {
        Rational xn = linalg::dot(x, pole);
        if (xn >= 1) throw PoleOnCurve("point not strictly below the pole hyperplane");
        RatVector y(4);
        for (size_t i = 0; i < 4; ++i) y[i] = (x[i] - xn * pole[i]) / (1 - xn);
        // coordinates in the basis: solve 3x3 using the kept component rows
        RatMatrix m(3, RatVector(3));
        RatVector rhs(3);
        for (size_t r = 0; r < 3; ++r) {
            for (size_t c = 0; c < 3; ++c) m[r][c] = basis[c][kept[r]];
            rhs[r] = y[kept[r]];
        }
        auto sol = linalg::solve(m, rhs);
        if (!sol || !sol->kernel.empty())
            throw ValidationError("projection basis is singular");
        return sol->point;
    };

    // exact check: pole off every segment
    for (const auto& comp : loops.components) {
        const auto& pts = comp.points;
        size_t n = pts.size();
        size_t limit = comp.closed ? n : n - 1;
        for (size_t i = 0; i < limit; ++i) {
            const RatVector& p = pts[i];
            const RatVector& q = pts[(i + 1) % n];
            RatVector dir = detail::sub(q, p);
            RatVector off = detail::sub(pole, p);
            // pole on segment iff off = t*dir with t in [0,1]
            std::optional<Rational> t;
            bool on_line = true;
            for (size_t c = 0; c < 4 && on_line; ++c) {
                if (dir[c] == 0) {
                    if (off[c] != 0) on_line = false;
                } else {
                    Rational tc = off[c] / dir[c];
                    if (!t)
                        t = tc;
                    else if (*t != tc)
                        on_line = false;
                }
            }
            if (on_line && t && *t >= 0 && *t <= 1)
                throw PoleOnCurve("pole lies on a curve segment");
            if (on_line && !t)
                throw PoleOnCurve("pole coincides with a zero-length segment");
        }
    }

    PLCurve out;
    for (const auto& comp : loops.components) {
        PLCurve::Component pc;
        pc.closed = comp.closed;
        pc.end_faces = comp.end_faces;
        for (const auto& p : comp.points) pc.points.push_back(project(p));
        out.components.push_back(std::move(pc));
    }
    return out;
}

/// Deterministic rational poles on the unit 3-sphere.
inline const std::vector<RatVector>& sphere_pole_candidates() {
    static const std::vector<RatVector> poles = [] {
        std::vector<RatVector> p;
        auto add = [&](long a, long b, long c, long d, long e) {
            p.push_back({Rational(a, e), Rational(b, e), Rational(c, e), Rational(d, e)});
        };
        add(0, 0, 0, 1, 1);
        add(0, 0, 0, -1, 1);
        add(0, 0, 1, 0, 1);
        add(0, 1, 0, 0, 1);
        add(1, 0, 0, 0, 1);
        add(3, 4, 0, 0, 5);
        add(0, 0, 3, 4, 5);
        add(1, 2, 2, 0, 3);
        add(2, 0, 1, 2, 3);
        add(2, 3, 6, 0, 7);
        add(6, 2, 0, 3, 7);
        add(1, 4, 8, 0, 9);
        add(4, 0, 7, 4, 9);
        add(1, 2, 2, 4, 5);
        add(2, 4, 5, 20, 21);
        return p;
    }();
    return poles;
}

/// Poles from which stereographic projection provably preserves the linking
/// of the two preimage curves: vertices of the source realization that lie
/// on the unit sphere and whose closed star avoids both curve carriers (no
/// incident facet maps into either value's target facet). Projection from
/// such a vertex embeds the complementary 3-ball, which contains both
/// curves, into 3-space.
inline std::vector<VertexId> hopf_pole_vertices(const PLMap& f,
                                                const GeometricRealization& G,
                                                const RegularValue& x1,
                                                const RegularValue& x2) {
    // curve points only ever lie in tetrahedra that carry a preimage segment,
    // so a vertex is a safe pole exactly when no incident tetrahedron does
    const auto& facets = f.source.complex.facets;
    std::vector<char> carries(facets.size(), 0);
    for (const RegularValue* x : {&x1, &x2}) {
        for (size_t ti = 0; ti < facets.size(); ++ti) {
            bool in_plane = true;
            for (VertexId v : facets[ti])
                if (f.image_of(v)[x->omitted_index] != 0) {
                    in_plane = false;
                    break;
                }
            if (!in_plane) continue;
            bool degenerate = false;
            if (detail::tet_preimage_segment(f, G, ti, *x, degenerate)) carries[ti] = 1;
        }
    }
    std::vector<VertexId> out;
    for (VertexId v : f.source.complex.vertices) {
        const RatVector& c = G.coordinates.at(v);
        if (linalg::dot(c, c) != 1) continue;
        bool ok = true;
        for (size_t ti = 0; ti < facets.size() && ok; ++ti)
            if (carries[ti] && std::binary_search(facets[ti].begin(), facets[ti].end(), v))
                ok = false;
        if (ok) out.push_back(v);
    }
    return out;
}

/// Linking number of the preimages of two distinct regular values: the Hopf
/// invariant of a map from a realized homology 3-sphere to the 2-sphere.
/// Pairs of generic values are tried in a deterministic order until one
/// admits a safe projection pole.
inline long long hopf_invariant(const PLMap& f, const GeometricRealization& G) {
    if (!f.source.closed()) throw NotClosed("hopf invariant needs a closed source");
    if (!is_homology_sphere(f.source.complex, 3))
        throw ValidationError("source is not a homology 3-sphere");

    constexpr size_t kValues = 8;
    std::vector<std::pair<PLCurve, RegularValue>> curves;
    for (int round = 0; round < kMaxRegularValueRounds && curves.size() < kValues; ++round)
        for (int om = 0; om <= f.target_dim && curves.size() < kValues; ++om) {
            RegularValue x = detail::regular_value_candidate(f.target_dim, om, round);
            auto c = preimage_curve_at(f, G, x);
            if (c) curves.push_back({std::move(*c), std::move(x)});
        }
    if (curves.size() < 2)
        throw GenericityExhausted("fewer than two generic values found");
    // a missed value means the map is not surjective, hence null-homotopic
    for (const auto& [c, x] : curves)
        if (c.components.empty()) return 0;

    for (size_t i = 0; i < curves.size(); ++i)
        for (size_t j = i + 1; j < curves.size(); ++j) {
            const auto& [c1, x1] = curves[i];
            const auto& [c2, x2] = curves[j];
            for (VertexId pv : hopf_pole_vertices(f, G, x1, x2)) {
                try {
                    const RatVector& pole = G.coordinates.at(pv);
                    PLCurve p1 = stereographic_project(c1, pole);
                    PLCurve p2 = stereographic_project(c2, pole);
                    return linking_number(p1, p2).linking_number;
                } catch (const PoleOnCurve&) {
                } catch (const CurvesIntersect&) {
                } catch (const GenericityExhausted&) {
                }
            }
        }
    throw GenericityExhausted("no value pair admits a safe projection pole");
}

}  // namespace covtop
