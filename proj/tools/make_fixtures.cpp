// Regenerates the fixture files under fixtures/. Everything is exact and
// deterministic; the Hopf fixture is found by searching rational fiber
// samples until the convex-hull triangulation passes every validation.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "covtop/covtop.hpp"

using namespace covtop;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    std::cout << "wrote " << path.string() << "\n";
}

Cover identity_cover(const SimplicialComplex& K) {
    Cover c;
    c.num_sets = static_cast<int>(K.vertices.size());
    for (size_t i = 0; i < K.vertices.size(); ++i)
        c.labels[K.vertices[i]] = {static_cast<int>(i)};
    return c;
}

// ---- RP^2: lexicographically first 10-triangle subcomplex of K6 that is a
// non-orientable pseudomanifold with RP^2 homology.
std::vector<Simplex> find_rp2() {
    std::vector<Simplex> tris;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) tris.push_back({a, b, c});
    const size_t n = tris.size();  // 20
    std::vector<int> pick;
    std::vector<Simplex> found;
    std::function<bool(size_t)> rec = [&](size_t start) -> bool {
        if (pick.size() == 10) {
            std::vector<Simplex> fs;
            for (int i : pick) fs.push_back(tris[i]);
            try {
                SimplicialComplex K = build_complex(fs);
                if (K.vertices.size() != 6) return false;
                validate_pseudomanifold(K, true);
                return false;  // orientable: not RP^2
            } catch (const NonOrientable&) {
                std::vector<Simplex> fs2;
                for (int i : pick) fs2.push_back(tris[i]);
                SimplicialComplex K = build_complex(fs2);
                HomologyReport h = homology(K, 2);
                if (h.betti == std::vector<int>{1, 0, 0} &&
                    h.torsion[1] == std::vector<Integer>{2} && h.torsion[2].empty()) {
                    found = fs2;
                    return true;
                }
                return false;
            } catch (const Error&) {
                return false;
            }
        }
        for (size_t i = start; i + (10 - pick.size()) <= n; ++i) {
            // quick prune: every edge in at most 2 picked triangles
            pick.push_back(static_cast<int>(i));
            bool ok = true;
            std::map<std::pair<int, int>, int> edge_count;
            for (int pi : pick)
                for (int u = 0; u < 3 && ok; ++u)
                    for (int v = u + 1; v < 3; ++v)
                        if (++edge_count[{tris[pi][u], tris[pi][v]}] > 2) {
                            ok = false;
                            break;
                        }
            if (ok && rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!rec(0)) throw std::runtime_error("no RP^2 found in K6");
    return found;
}

// ---- Sperner discs: barycentric subdivisions of the solid 2-simplex with
// the canonical label min(carrier).
void make_sperner_disc(const std::filesystem::path& dir, int times) {
    SubdivisionResult sd = barycentric_subdivide(oriented_solid_simplex(2), times);
    write_file(dir / ("sperner_disc_" + std::to_string(times) + ".complex"),
               serialize_complex(sd.manifold.complex, sd.manifold.signs));
    SpernerFile sf;
    for (size_t v = 0; v < sd.face_of_vertex.size(); ++v) {
        sf.carrier[static_cast<VertexId>(v)] = sd.face_of_vertex[v];
        sf.labels[static_cast<VertexId>(v)] = sd.face_of_vertex[v].front();
    }
    write_file(dir / ("sperner_disc_" + std::to_string(times) + ".sperner"),
               serialize_sperner(sf));
}

// ---- Hopf fixture search ------------------------------------------------

struct C2Point {  // (z, w) in C^2 as 4 rationals
    Rational zr, zi, wr, wi;
};

RatVector rotate(const C2Point& base, const Rational& u, const Rational& v) {
    // multiply both coordinates by the unit complex number u + v i
    return {base.zr * u - base.zi * v, base.zr * v + base.zi * u,
            base.wr * u - base.wi * v, base.wr * v + base.wi * u};
}

std::pair<Rational, Rational> phase(const Rational& t) {
    Rational den = 1 + t * t;
    return {(1 - t * t) / den, 2 * t / den};
}

struct HullResult {
    std::vector<Simplex> facets;
    bool simplicial = true;
};

// exact brute-force convex hull of 12 points in R^4; rejects configurations
// with 5 points on a facet hyperplane
HullResult convex_hull_4d(const std::vector<RatVector>& pts) {
    HullResult out;
    const int n = static_cast<int>(pts.size());
    for (int a = 0; a < n && out.simplicial; ++a)
        for (int b = a + 1; b < n && out.simplicial; ++b)
            for (int c = b + 1; c < n && out.simplicial; ++c)
                for (int d = c + 1; d < n && out.simplicial; ++d) {
                    RatMatrix m;
                    for (int x : {b, c, d}) {
                        RatVector row(4);
                        for (int j = 0; j < 4; ++j) row[j] = pts[x][j] - pts[a][j];
                        m.push_back(std::move(row));
                    }
                    auto sol = linalg::solve(m, RatVector(3, Rational(0)));
                    if (!sol || sol->kernel.size() != 1) continue;  // degenerate 4-tuple
                    const RatVector& nrm = sol->kernel[0];
                    int pos = 0, neg = 0, zero = 0;
                    for (int j = 0; j < n; ++j) {
                        if (j == a || j == b || j == c || j == d) continue;
                        Rational s = 0;
                        for (int k = 0; k < 4; ++k) s += (pts[j][k] - pts[a][k]) * nrm[k];
                        int sg = sign_of(s);
                        if (sg > 0) ++pos;
                        else if (sg < 0) ++neg;
                        else ++zero;
                    }
                    if (zero > 0 && (pos == 0 || neg == 0)) {
                        out.simplicial = false;  // >4 points on a hull hyperplane
                        break;
                    }
                    if (pos == 0 || neg == 0) out.facets.push_back({a, b, c, d});
                }
    return out;
}

struct HopfFixture {
    OrientedPseudomanifold manifold;
    GeometricRealization realization;
    Cover cover;
    long long hopf = 0;
};

std::optional<HopfFixture> try_hopf_config(const std::vector<RatVector>& pts,
                                           const std::vector<int>& fiber_of_point) {
    HullResult hull = convex_hull_4d(pts);
    if (!hull.simplicial || hull.facets.empty()) return std::nullopt;
    std::set<int> used;
    for (const Simplex& f : hull.facets) used.insert(f.begin(), f.end());
    if (used.size() != pts.size()) return std::nullopt;  // a point fell inside

    HopfFixture out;
    try {
        SimplicialComplex K = build_complex(hull.facets);
        out.manifold = validate_pseudomanifold(K, true);
    } catch (const Error&) {
        return std::nullopt;
    }
    out.cover.num_sets = 4;
    for (size_t i = 0; i < pts.size(); ++i)
        out.cover.labels[static_cast<VertexId>(i)] = {fiber_of_point[i]};
    if (covering_simplex(out.manifold.complex, out.cover)) return std::nullopt;
    if (!is_homology_sphere(out.manifold.complex, 3)) return std::nullopt;

    out.realization.ambient_dim = 4;
    for (size_t i = 0; i < pts.size(); ++i)
        out.realization.coordinates[static_cast<VertexId>(i)] = pts[i];
    try {
        PLMap f = pl_map(out.manifold, out.cover);
        out.hopf = hopf_invariant(f, out.realization);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (out.hopf != 1 && out.hopf != -1) return std::nullopt;
    return out;
}

std::optional<HopfFixture> build_hopf() {
    // four Hopf fibers whose base points form a regular tetrahedron on S^2,
    // sampled at four staggered rational phases each; the convex hull of the
    // 16 points is a simplicial 3-sphere whose fiber-label cover has no
    // covering tetrahedron
    std::vector<C2Point> bases = {
        {1, 0, 0, 0},
        {Rational(3, 5), 0, Rational(4, 5), 0},
        {Rational(3, 5), 0, Rational(-12, 25), Rational(16, 25)},
        {Rational(3, 5), 0, Rational(-12, 25), Rational(-16, 25)},
    };
    // phase parameters t (lambda = ((1-t^2) + 2ti)/(1+t^2)); nullopt is the
    // infinite parameter, lambda = -1
    std::vector<std::vector<std::optional<Rational>>> ts = {
        {Rational(0), Rational(1), std::nullopt, Rational(-1)},
        {Rational(1, 5), Rational(3, 2), Rational(-5), Rational(-2, 3)},
        {Rational(2, 5), Rational(5, 2), Rational(-5, 2), Rational(-2, 5)},
        {Rational(2, 3), Rational(5), Rational(-3, 2), Rational(-1, 5)},
    };
    std::vector<RatVector> pts;
    std::vector<int> fiber;
    for (int fb = 0; fb < 4; ++fb)
        for (const auto& t : ts[fb]) {
            auto [u, v] = t ? phase(*t)
                            : std::pair<Rational, Rational>{Rational(-1), Rational(0)};
            pts.push_back(rotate(bases[fb], u, v));
            fiber.push_back(fb);
        }
    return try_hopf_config(pts, fiber);
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);

    // boundaries of simplices with identity covers
    for (int d = 2; d <= 4; ++d) {
        OrientedPseudomanifold M = boundary_simplex(d);
        write_file(dir / ("boundary_delta_" + std::to_string(d) + ".complex"),
                   serialize_complex(M.complex, M.signs));
        write_file(dir / ("identity_" + std::to_string(d) + ".cover"),
                   serialize_cover(identity_cover(M.complex)));
    }
    {
        Cover c;
        c.num_sets = 4;
        for (VertexId v = 0; v < 4; ++v) c.labels[v] = {0};
        write_file(dir / "constant_3.cover", serialize_cover(c));
    }

    // RP^2 negative fixture
    write_file(dir / "rp2.complex", serialize_complex(build_complex(find_rp2())));

    // Sperner discs
    make_sperner_disc(dir, 1);
    make_sperner_disc(dir, 2);

    // cone over a hexagon, with a nonzero-degree boundary cover
    {
        std::vector<Simplex> tris;
        for (int i = 0; i < 6; ++i) tris.push_back({i, (i + 1) % 6, 6});
        OrientedPseudomanifold disc = validate_pseudomanifold(build_complex(tris), false);
        write_file(dir / "hexagon_disc.complex",
                   serialize_complex(disc.complex, disc.signs));
        Cover c;
        c.num_sets = 3;
        for (VertexId v = 0; v < 6; ++v) c.labels[v] = {v % 3};
        write_file(dir / "hexagon_disc.cover", serialize_cover(c));
    }

    // Hopf fixture
    auto fx = build_hopf();
    if (!fx) {
        std::cerr << "no hopf fixture found\n";
        return 1;
    }
    write_file(dir / "hopf.complex",
               serialize_complex(fx->manifold.complex, fx->manifold.signs,
                                 fx->realization));
    write_file(dir / "hopf.cover", serialize_cover(fx->cover));
    std::cout << "hopf invariant " << fx->hopf << "\n";
    return 0;
}
