// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Usage: acceptance <fixtures-dir> <cli-binary>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "covtop/covtop.hpp"

using namespace covtop;

namespace {

std::string g_fixtures;
std::string g_cli;
int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << "criterion " << criterion << ": " << (pass ? "pass" : "FAIL")
              << " - " << detail << "\n";
    if (!pass) ++g_failures;
}

struct Lcg {
    unsigned long long s;
    explicit Lcg(unsigned long long seed) : s(seed) {}
    unsigned next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<unsigned>(s >> 33);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<unsigned>(n)); }
};

Cover random_noncovering_cover(const SimplicialComplex& K, int num_sets, Lcg& rng) {
    for (;;) {
        Cover c;
        c.num_sets = num_sets;
        for (VertexId v : K.vertices) {
            std::set<int> ls;
            int count = 1 + rng.below(2);
            while (static_cast<int>(ls.size()) < count) ls.insert(rng.below(num_sets));
            c.labels[v] = std::move(ls);
        }
        if (!covering_simplex(K, c)) return c;
    }
}

PartitionOfUnity random_partition(const SimplicialComplex& K, const Cover& c, Lcg& rng) {
    PartitionOfUnity phi;
    for (VertexId v : K.vertices) {
        RatVector w(c.num_sets, Rational(0));
        Rational sum = 0;
        for (int l : c.labels.at(v)) {
            Rational x(1 + rng.below(9), 1 + rng.below(6));
            w[l] = x;
            sum += x;
        }
        for (Rational& x : w) x /= sum;
        phi.weights[v] = std::move(w);
    }
    return phi;
}

OrientedPseudomanifold load_closed(const std::string& name) {
    ParsedComplex pc = parse_complex_file(g_fixtures + "/" + name);
    return validate_pseudomanifold(pc.complex, true, pc.signs);
}

// ---- criterion 1: degree correctness --------------------------------------

void criterion1() {
    try {
        for (int n = 1; n <= 3; ++n) {
            OrientedPseudomanifold M =
                load_closed("boundary_delta_" + std::to_string(n + 1) + ".complex");
            Cover c = parse_cover_file(g_fixtures + "/identity_" +
                                       std::to_string(n + 1) + ".cover")
                          .cover;
            if (cover_degree(M, c).degree != 1) {
                report(1, false, "identity degree != 1 for n=" + std::to_string(n));
                return;
            }
        }
        OrientedPseudomanifold M3 = load_closed("boundary_delta_3.complex");
        Cover constant = parse_cover_file(g_fixtures + "/constant_3.cover").cover;
        if (cover_degree(M3, constant).degree != 0) {
            report(1, false, "constant cover degree != 0");
            return;
        }
        Lcg rng(101);
        int checked = 0;
        for (int n = 1; n <= 2; ++n) {
            OrientedPseudomanifold M =
                barycentric_subdivide_once(boundary_simplex(n + 1)).manifold;
            OrientedPseudomanifold R = reverse_orientation(M);
            for (int t = 0; t < 50; ++t) {
                Cover c = random_noncovering_cover(M.complex, n + 2, rng);
                if (cover_degree(R, c).degree != -cover_degree(M, c).degree) {
                    report(1, false, "orientation reversal failed to negate degree");
                    return;
                }
                ++checked;
            }
        }
        report(1, true,
               "identity +1 (n=1,2,3), constant 0, reversal negated on " +
                   std::to_string(checked) + " covers");
    } catch (const std::exception& e) {
        report(1, false, e.what());
    }
}

// ---- criterion 2: partition independence ----------------------------------

void criterion2() {
    try {
        Lcg rng(202);
        OrientedPseudomanifold M =
            barycentric_subdivide_once(boundary_simplex(2)).manifold;
        int covers = 0;
        for (; covers < 100; ++covers) {
            Cover c = random_noncovering_cover(M.complex, 3, rng);
            long long base = cover_degree(M, c).degree;
            for (int p = 0; p < 20; ++p) {
                PartitionOfUnity phi = random_partition(M.complex, c, rng);
                if (degree(pl_map(M, c, phi)).degree != base) {
                    report(2, false, "degree varied with the partition");
                    return;
                }
            }
        }
        report(2, true, "100 covers x 20 partitions, degree constant");
    } catch (const std::exception& e) {
        report(2, false, e.what());
    }
}

// ---- criterion 3: subdivision invariance ----------------------------------

void criterion3() {
    try {
        Lcg rng(303);
        int checked = 0;
        for (int n = 1; n <= 2; ++n) {
            OrientedPseudomanifold M = boundary_simplex(n + 1);
            SubdivisionResult sd1 = barycentric_subdivide(M, 1);
            SubdivisionResult sd2 = barycentric_subdivide(M, 2);
            for (int t = 0; t < 25; ++t) {
                Cover c = random_noncovering_cover(M.complex, n + 2, rng);
                long long base = cover_degree(M, c).degree;
                if (cover_degree(sd1.manifold, subdivide_cover(c, sd1)).degree != base ||
                    cover_degree(sd2.manifold, subdivide_cover(c, sd2)).degree != base) {
                    report(3, false, "degree changed under subdivision");
                    return;
                }
                ++checked;
            }
        }
        report(3, true, std::to_string(checked) +
                            " covers stable under one and two subdivisions");
    } catch (const std::exception& e) {
        report(3, false, e.what());
    }
}

// ---- criterion 4: sperner oracle -------------------------------------------

void criterion4() {
    try {
        for (int times = 1; times <= 2; ++times) {
            SubdivisionResult sd =
                barycentric_subdivide(oriented_solid_simplex(2), times);
            SpernerFile sf = parse_sperner_file(
                g_fixtures + "/sperner_disc_" + std::to_string(times) + ".sperner");
            SpernerCount sc = sperner_count(sd.manifold, sf.labels, sf.carrier);
            if (sc.unsigned_count % 2 != 1) {
                report(4, false, "unsigned fully-labeled count is even");
                return;
            }
            // boundary degree of the induced circle labeling
            OrientedPseudomanifold circle = boundary_of(sd.manifold);
            Cover bc;
            bc.num_sets = 3;
            for (VertexId v : circle.complex.vertices) bc.labels[v] = {sf.labels.at(v)};
            long long bdeg = cover_degree(circle, bc).degree;
            if (std::abs(bdeg) != 1 || sc.signed_count != bdeg) {
                report(4, false, "signed count " + std::to_string(sc.signed_count) +
                                     " != boundary degree " + std::to_string(bdeg));
                return;
            }
        }
        report(4, true, "odd unsigned count, signed count equals boundary degree +-1");
    } catch (const std::exception& e) {
        report(4, false, e.what());
    }
}

// ---- criterion 5: kkm obstruction ------------------------------------------

struct DiscProblem {
    OrientedPseudomanifold disc;
    OrientedPseudomanifold boundary_circle;
    std::vector<VertexId> boundary_vertices;  // circular walk not required
};

bool kkm_sample(const DiscProblem& dp, Lcg& rng, int want_nonzero, int want_zero,
                std::string& err) {
    // degree-nonzero boundary labelings: every extension attempt must fail
    int nonzero = 0;
    int guard = 0;
    while (nonzero < want_nonzero && ++guard < 20000) {
        ExtensionProblem p;
        p.ambient = dp.disc;
        p.mode = LabelMode::singleton;
        p.boundary_cover.num_sets = 3;
        for (VertexId v : dp.boundary_vertices)
            p.boundary_cover.labels[v] = {rng.below(3)};
        if (covering_simplex(dp.boundary_circle.complex, p.boundary_cover)) continue;
        if (cover_degree(dp.boundary_circle, p.boundary_cover).degree == 0) continue;
        Certificate c = verify_kkm(p);
        if (c.verdict != Verdict::obstructed || !c.exhausted ||
            c.explored_assignments != c.search_space_size) {
            err = "nonzero-degree labeling not fully obstructed";
            return false;
        }
        ++nonzero;
    }
    if (nonzero < want_nonzero) {
        err = "nonzero-degree sample generation starved";
        return false;
    }
    // degree-zero side: restrict a covering-free labeling of the whole disc;
    // such a boundary labeling has degree zero and a guaranteed extension
    int zero = 0;
    guard = 0;
    while (zero < want_zero && ++guard < 20000) {
        Cover full;
        full.num_sets = 3;
        for (VertexId v : dp.disc.complex.vertices) full.labels[v] = {rng.below(3)};
        if (covering_simplex(dp.disc.complex, full)) continue;
        ExtensionProblem p;
        p.ambient = dp.disc;
        p.mode = LabelMode::singleton;
        p.boundary_cover.num_sets = 3;
        for (VertexId v : dp.boundary_vertices)
            p.boundary_cover.labels[v] = full.labels.at(v);
        if (cover_degree(dp.boundary_circle, p.boundary_cover).degree != 0) {
            err = "restricted covering-free labeling has nonzero boundary degree";
            return false;
        }
        Certificate c = verify_kkm(p);
        if (c.verdict != Verdict::extendable || !c.witness) {
            err = "degree-zero labeling did not extend";
            return false;
        }
        try {
            recheck_certificate(p, c);
        } catch (const std::exception& e) {
            err = std::string("witness failed recheck: ") + e.what();
            return false;
        }
        ++zero;
    }
    if (zero < want_zero) {
        err = "degree-zero sample generation starved";
        return false;
    }
    return true;
}

void criterion5() {
    try {
        Lcg rng(505);
        // cone over a hexagon
        DiscProblem hex;
        {
            ParsedComplex pc = parse_complex_file(g_fixtures + "/hexagon_disc.complex");
            hex.disc = validate_pseudomanifold(pc.complex, false, pc.signs);
            hex.boundary_circle = boundary_of(hex.disc);
            hex.boundary_vertices = hex.boundary_circle.complex.vertices;
        }
        std::string err;
        if (!kkm_sample(hex, rng, 100, 20, err)) {
            report(5, false, "hexagon disc: " + err);
            return;
        }
        // twice-subdivided triangle
        DiscProblem tri;
        tri.disc = barycentric_subdivide(oriented_solid_simplex(2), 2).manifold;
        tri.boundary_circle = boundary_of(tri.disc);
        tri.boundary_vertices = tri.boundary_circle.complex.vertices;
        if (!kkm_sample(tri, rng, 100, 20, err)) {
            report(5, false, "subdivided triangle: " + err);
            return;
        }
        report(5, true,
               "100 obstructed (exhaustive) + 20 extendable (rechecked) on each disc");
    } catch (const std::exception& e) {
        report(5, false, e.what());
    }
}

// ---- criterion 6: homotopy iff map-class -----------------------------------

void criterion6() {
    try {
        Lcg rng(606);
        int witnesses = 0, pairs = 0;
        for (int n = 1; n <= 2; ++n) {
            OrientedPseudomanifold M =
                barycentric_subdivide_once(boundary_simplex(n + 1)).manifold;
            for (int t = 0; t < 100; ++t) {
                Cover a = random_noncovering_cover(M.complex, n + 2, rng);
                Cover b = random_noncovering_cover(M.complex, n + 2, rng);
                ClassificationVerdict v = covers_homotopic(M, a, b);
                long long da = cover_degree(M, a).degree;
                long long db = cover_degree(M, b).degree;
                if (v.relation == Relation::homotopic && da != db) {
                    report(6, false, "homotopic verdict with unequal degrees");
                    return;
                }
                if (v.relation == Relation::distinct && da == db) {
                    report(6, false, "distinct verdict with equal degrees");
                    return;
                }
                if (v.relation == Relation::unknown) {
                    report(6, false, "unknown verdict on a sphere source");
                    return;
                }
                if (v.basis == Basis::witness) {
                    if (!v.prism_carrier || !v.prism_cover ||
                        !validate_homotopy_witness(M, a, b, *v.prism_carrier,
                                                   *v.prism_cover)) {
                        report(6, false, "emitted prism witness failed re-validation");
                        return;
                    }
                    ++witnesses;
                }
                ++pairs;
            }
        }
        report(6, true, std::to_string(pairs) + " pairs consistent, " +
                            std::to_string(witnesses) + " prism witnesses re-validated");
    } catch (const std::exception& e) {
        report(6, false, e.what());
    }
}

// ---- criterion 7: cobordism decision ----------------------------------------

void criterion7() {
    try {
        Lcg rng(707);
        OrientedPseudomanifold M = load_closed("boundary_delta_3.complex");
        for (int t = 0; t < 100; ++t) {
            Cover a = random_noncovering_cover(M.complex, 4, rng);
            Cover b = random_noncovering_cover(M.complex, 4, rng);
            ClassificationVerdict v = covers_cobordant(M, a, M, b);
            bool equal = *v.degree1 == *v.degree2;
            if ((v.relation == Relation::cobordant) != equal ||
                (v.relation == Relation::distinct) != !equal) {
                report(7, false, "cobordant verdict disagrees with degree equality");
                return;
            }
        }
        ParsedComplex pc = parse_complex_file(g_fixtures + "/hopf.complex");
        OrientedPseudomanifold H = validate_pseudomanifold(pc.complex, true, pc.signs);
        Cover hc = parse_cover_file(g_fixtures + "/hopf.cover").cover;
        long long h = hopf_invariant(pl_map(H, hc), *pc.realization);
        if (h != 1 && h != -1) {
            report(7, false, "hopf invariant is " + std::to_string(h));
            return;
        }
        ClassificationVerdict nc = null_cobordance(H, hc);
        if (nc.relation != Relation::null_cobordant || nc.basis != Basis::theorem) {
            report(7, false, "hopf fixture not null-cobordant by theorem");
            return;
        }
        report(7, true,
               "100 pairs: cobordant iff equal degree; hopf fixture: invariant " +
                   std::to_string(h) + ", null-cobordant");
    } catch (const std::exception& e) {
        report(7, false, e.what());
    }
}

// ---- criterion 8: preimage-cobordism witness ---------------------------------

// signed preimage count of the cover map on a closed oriented surface at a
// shared regular value; nullopt when the value is degenerate for this map
std::optional<std::vector<int>> preimage_signs_at(const PLMap& f, const RegularValue& x) {
    static thread_local std::map<int, OrientedPseudomanifold> cache;
    auto it = cache.find(f.target_dim);
    if (it == cache.end()) it = cache.emplace(f.target_dim, boundary_simplex(f.target_dim)).first;
    Simplex tfacet;
    for (int c = 0; c <= f.target_dim; ++c)
        if (c != x.omitted_index) tfacet.push_back(c);
    int tsign = it->second.signs[it->second.complex.facet_index(tfacet)];

    std::vector<int> signs;
    const auto& facets = f.source.complex.facets;
    for (size_t fi = 0; fi < facets.size(); ++fi) {
        bool in_plane = true;
        for (VertexId v : facets[fi])
            if (f.image_of(v)[x.omitted_index] != 0) {
                in_plane = false;
                break;
            }
        if (!in_plane) continue;
        auto r = detail::facet_preimage(f, facets[fi], x);
        if (r.outcome == detail::FacetOutcome::kDegenerate) return std::nullopt;
        if (r.outcome == detail::FacetOutcome::kPreimage)
            signs.push_back(r.det_sign * f.source.signs[fi] * tsign);
    }
    return signs;
}

void criterion8() {
    try {
        Lcg rng(808);
        OrientedPseudomanifold S = boundary_simplex(3);
        PrismResult pr = prism(S);
        GeometricRealization G;
        G.ambient_dim = 4;
        for (VertexId v : S.complex.vertices) {
            RatVector base(3, Rational(0));
            if (v > 0) base[v - 1] = 1;
            RatVector bottom = base, top = base;
            bottom.push_back(0);
            top.push_back(1);
            G.coordinates[pr.bottom.at(v)] = bottom;
            G.coordinates[pr.top.at(v)] = top;
        }
        VertexId offset = pr.top.at(0) - pr.bottom.at(0);

        int cases = 0;
        int guard = 0;
        while (cases < 20 && ++guard < 4000) {
            Cover a = random_noncovering_cover(S.complex, 4, rng);
            Cover b = random_noncovering_cover(S.complex, 4, rng);
            if (cover_degree(S, a).degree != cover_degree(S, b).degree) continue;
            Cover q = prism_cover(pr, a, b);
            if (covering_simplex(pr.manifold.complex, q)) continue;
            PLMap fq = pl_map(pr.manifold, q);
            PLMap fa = pl_map(S, a);
            PLMap fb = pl_map(S, b);

            // find a value generic for the prism map and both boundary maps
            bool done = false;
            for (int round = 0; round < kMaxRegularValueRounds && !done; ++round)
                for (int om = 0; om <= 3 && !done; ++om) {
                    RegularValue x = detail::regular_value_candidate(3, om, round);
                    auto curve = preimage_curve_at(fq, G, x);
                    if (!curve) continue;
                    auto sa = preimage_signs_at(fa, x);
                    auto sb = preimage_signs_at(fb, x);
                    if (!sa || !sb) continue;
                    done = true;

                    size_t bottom_ends = 0, top_ends = 0;
                    for (const auto& comp : curve->components) {
                        if (comp.closed) continue;
                        if (comp.end_faces.size() != 2) {
                            report(8, false, "arc without exactly two boundary ends");
                            return;
                        }
                        for (const Simplex& ef : comp.end_faces)
                            (ef.front() >= offset ? top_ends : bottom_ends) += 1;
                    }
                    long long da = 0, db = 0;
                    for (int s : *sa) da += s;
                    for (int s : *sb) db += s;
                    // arcs pair the boundary preimage points one-to-one
                    if (bottom_ends != sa->size() || top_ends != sb->size()) {
                        report(8, false, "arc endpoints do not match boundary preimages");
                        return;
                    }
                    // with the bottom orientation reversed the signed endpoint
                    // sum is db - da, zero for equal-degree covers
                    if (db - da != 0) {
                        report(8, false, "signed endpoint sum nonzero");
                        return;
                    }
                    ++cases;
                }
        }
        if (cases < 20) {
            report(8, false, "only " + std::to_string(cases) + " prism cases found");
            return;
        }
        report(8, true, std::to_string(cases) +
                            " prism maps: arcs pair boundary preimages, signed sum zero");
    } catch (const std::exception& e) {
        report(8, false, e.what());
    }
}

// ---- criterion 9: negative and validation tests ------------------------------

void criterion9() {
    try {
        ParsedComplex rp2 = parse_complex_file(g_fixtures + "/rp2.complex");
        bool rejected = false;
        try {
            validate_pseudomanifold(rp2.complex, true);
        } catch (const NonOrientable&) {
            rejected = true;
        }
        if (!rejected) {
            report(9, false, "rp2 fixture not rejected as NonOrientable");
            return;
        }
        HomologyReport h_rp2 = homology(rp2.complex, 2);
        bool rp2_ok = h_rp2.betti == std::vector<int>{1, 0, 0} &&
                      h_rp2.torsion[1] == std::vector<Integer>{2};

        bool spheres_ok = true;
        for (int m = 1; m <= 3; ++m) {
            SimplicialComplex S =
                load_closed("boundary_delta_" + std::to_string(m + 1) + ".complex").complex;
            spheres_ok = spheres_ok && homology(S, m) == sphere_homology(m);
        }
        HomologyReport disc = homology(solid_simplex(2), 2);
        bool disc_ok = disc.betti == std::vector<int>{1, 0, 0} &&
                       disc.torsion[1].empty();
        if (!rp2_ok || !spheres_ok || !disc_ok) {
            report(9, false, "a homology report deviated from the expectation");
            return;
        }
        report(9, true, "rp2 rejected; S1, S2, S3, disc, rp2 homology exact");
    } catch (const std::exception& e) {
        report(9, false, e.what());
    }
}

// ---- criterion 10: determinism ------------------------------------------------

std::optional<std::string> run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

void criterion10() {
    try {
        const std::string& fx = g_fixtures;
        std::vector<std::string> commands = {
            "validate " + fx + "/boundary_delta_3.complex",
            "validate " + fx + "/hopf.complex",
            "validate --with-boundary " + fx + "/hexagon_disc.complex",
            "degree " + fx + "/boundary_delta_3.complex " + fx + "/identity_3.cover",
            "degree " + fx + "/boundary_delta_4.complex " + fx + "/identity_4.cover",
            "hopf " + fx + "/hopf.complex " + fx + "/hopf.cover",
            "kkm-verify " + fx + "/hexagon_disc.complex " + fx + "/hexagon_disc.cover",
            "kkm-verify --mode subsets " + fx + "/hexagon_disc.complex " + fx +
                "/hexagon_disc.cover",
            "homotopic " + fx + "/boundary_delta_3.complex " + fx +
                "/identity_3.cover " + fx + "/identity_3.cover",
            "cobordant " + fx + "/boundary_delta_3.complex " + fx +
                "/identity_3.cover " + fx + "/boundary_delta_3.complex " + fx +
                "/constant_3.cover",
            "null-cobordant " + fx + "/hopf.complex " + fx + "/hopf.cover",
            "subdivide " + fx + "/boundary_delta_3.complex",
            "sperner " + fx + "/sperner_disc_2.complex " + fx +
                "/sperner_disc_2.sperner",
        };
        for (const std::string& cmd : commands) {
            auto first = run_cli(cmd);
            auto second = run_cli(cmd);
            if (!first || !second || first->empty() || *first != *second) {
                report(10, false, "output differs across runs: " + cmd);
                return;
            }
        }
        // thread counts must not change any report byte
        for (const std::string& threaded :
             {std::string("degree " + fx + "/boundary_delta_4.complex " + fx +
                          "/identity_4.cover"),
              std::string("homotopic " + fx + "/boundary_delta_3.complex " + fx +
                          "/identity_3.cover " + fx + "/constant_3.cover"),
              std::string("null-cobordant " + fx + "/boundary_delta_3.complex " +
                          fx + "/identity_3.cover")}) {
            auto t1 = run_cli(threaded + " --threads 1");
            auto t4 = run_cli(threaded + " --threads 4");
            if (!t1 || !t4 || t1->empty() || *t1 != *t4) {
                report(10, false, "output differs across thread counts: " + threaded);
                return;
            }
        }
        report(10, true, "byte-identical reports across repeated runs and thread counts");
    } catch (const std::exception& e) {
        report(10, false, e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <fixtures-dir> <cli-binary>\n";
        return 2;
    }
    g_fixtures = argv[1];
    g_cli = argv[2];
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures) {
        std::cout << g_failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
