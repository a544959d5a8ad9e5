#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "covtop/covtop.hpp"

namespace {

using namespace covtop;

// Stable mapping from library error codes to CLI exit codes.
int exit_code_for(const std::string& code) {
    static const std::vector<std::string> codes = {
        "MixedDimension", "DuplicateFacet", "DegenerateFacet", "NotPseudomanifold",
        "NotStronglyConnected", "NonOrientable", "HasBoundary", "EmptyBoundary",
        "SizeLimit", "LabelOutOfRange", "NotSubordinate", "MissingVertex",
        "NotClosed", "ImageNotInBoundary", "GenericityExhausted", "NoRealization",
        "PoleOnCurve", "CurvesIntersect", "NotSperner", "BudgetExceeded",
        "CoveringSimplexInInput", "DimensionMismatch", "ParseError",
        "ValidationError", "UnknownCommand"};
    for (size_t i = 0; i < codes.size(); ++i)
        if (codes[i] == code) return static_cast<int>(i) + 10;
    return 9;
}

struct LoadedManifold {
    OrientedPseudomanifold manifold;
    std::optional<GeometricRealization> realization;
};

LoadedManifold load_manifold(const std::string& path, bool want_closed) {
    ParsedComplex pc = parse_complex_file(path);
    LoadedManifold out;
    out.manifold = validate_pseudomanifold(pc.complex, want_closed, pc.signs);
    out.realization = pc.realization;
    return out;
}

Cover load_cover(const std::string& path, const SimplicialComplex& K) {
    ParsedCover pc = parse_cover_file(path);
    validate_cover(K, pc.cover);
    return pc.cover;
}

void print_verdict_report(const ClassificationVerdict& v, const std::string& command,
                          int subdivisions_used = -1) {
    std::cout << serialize_verdict(v);
    std::cout << "command " << command << "\n";
    if (subdivisions_used >= 0)
        std::cout << "subdivisions_used " << subdivisions_used << "\n";
}

int cmd_validate(const std::string& complex_path, bool want_closed) {
    ParsedComplex pc = parse_complex_file(complex_path);
    OrientedPseudomanifold M = validate_pseudomanifold(pc.complex, want_closed, pc.signs);
    if (pc.realization) validate_realization(pc.complex, *pc.realization);
    HomologyReport h = homology(pc.complex, pc.complex.dimension);
    std::cout << "format report " << kSchemaVersion << "\n";
    std::cout << "command validate\n";
    std::cout << "dimension " << M.dimension() << "\n";
    std::cout << "vertices " << M.complex.vertices.size() << "\n";
    std::cout << "facets " << M.complex.facets.size() << "\n";
    std::cout << "closed " << (M.closed() ? 1 : 0) << "\n";
    std::cout << "boundary_facets " << M.boundary_facets.size() << "\n";
    std::cout << "realized " << (pc.realization ? 1 : 0) << "\n";
    std::cout << "betti";
    for (int b : h.betti) std::cout << " " << b;
    std::cout << "\n";
    for (size_t k = 0; k < h.torsion.size(); ++k) {
        if (h.torsion[k].empty()) continue;
        std::cout << "torsion " << k;
        for (const Integer& t : h.torsion[k]) std::cout << " " << t.str();
        std::cout << "\n";
    }
    return 0;
}

int cmd_degree(const std::string& complex_path, const std::string& cover_path, int threads) {
    LoadedManifold lm = load_manifold(complex_path, true);
    Cover C = load_cover(cover_path, lm.manifold.complex);
    DegreeResult d = cover_degree(lm.manifold, C, threads);
    std::cout << "format report " << kSchemaVersion << "\n";
    std::cout << "command degree\n";
    std::cout << "degree " << d.degree << "\n";
    std::cout << "preimages " << d.preimages.size() << "\n";
    std::cout << "regular_value " << d.regular_value_used.omitted_index;
    for (const Rational& c : d.regular_value_used.point) std::cout << " " << to_string(c);
    std::cout << "\n";
    return 0;
}

int cmd_hopf(const std::string& complex_path, const std::string& cover_path) {
    LoadedManifold lm = load_manifold(complex_path, true);
    if (!lm.realization)
        throw NoRealization("hopf needs vertex coordinates in the complex file");
    Cover C = load_cover(cover_path, lm.manifold.complex);
    PLMap f = pl_map(lm.manifold, C);
    long long h = hopf_invariant(f, *lm.realization);
    std::cout << "format report " << kSchemaVersion << "\n";
    std::cout << "command hopf\n";
    std::cout << "hopf_invariant " << h << "\n";
    return 0;
}

ExtensionProblem make_problem(const std::string& complex_path, const std::string& cover_path,
                              const std::string& mode, long long budget) {
    ExtensionProblem p;
    p.ambient = load_manifold(complex_path, false).manifold;
    if (p.ambient.boundary_facets.empty())
        throw ValidationError("kkm commands need an ambient manifold with boundary");
    ParsedCover pc = parse_cover_file(cover_path);
    p.boundary_cover = pc.cover;
    if (mode == "singleton")
        p.mode = LabelMode::singleton;
    else if (mode == "subsets")
        p.mode = LabelMode::subsets;
    else
        throw ValidationError("mode must be 'singleton' or 'subsets'");
    p.budget = budget;
    return p;
}

int cmd_kkm_verify(const std::string& complex_path, const std::string& cover_path,
                   const std::string& mode, long long budget) {
    ExtensionProblem p = make_problem(complex_path, cover_path, mode, budget);
    Certificate c = verify_kkm(p);
    std::cout << serialize_certificate(c);
    return 0;
}

int cmd_kkm_extend(const std::string& complex_path, const std::string& cover_path,
                   const std::string& mode, long long budget) {
    ExtensionProblem p = make_problem(complex_path, cover_path, mode, budget);
    Certificate c = verify_kkm(p);
    if (c.verdict == Verdict::extendable) {
        std::cout << serialize_cover(*c.witness);
        return 0;
    }
    std::cout << serialize_certificate(c);
    return 0;
}

int cmd_recheck(const std::string& cert_path, const std::string& complex_path,
                const std::string& cover_path, long long budget) {
    Certificate c = parse_certificate_file(cert_path);
    ExtensionProblem p = make_problem(
        complex_path, cover_path, c.mode == LabelMode::singleton ? "singleton" : "subsets",
        budget);
    recheck_certificate(p, c);
    std::cout << "format report " << kSchemaVersion << "\n";
    std::cout << "command recheck\n";
    std::cout << "certificate_ok 1\n";
    std::cout << "verdict " << to_string(c.verdict) << "\n";
    return 0;
}

int cmd_homotopic(const std::string& complex_path, const std::string& cover1_path,
                  const std::string& cover2_path, int threads, int subdivide) {
    LoadedManifold lm = load_manifold(complex_path, true);
    OrientedPseudomanifold M = lm.manifold;
    Cover c1 = load_cover(cover1_path, M.complex);
    Cover c2 = load_cover(cover2_path, M.complex);
    ClassificationVerdict v;
    int used = 0;
    for (int k = 0;; ++k) {
        v = covers_homotopic(M, c1, c2, threads);
        used = k;
        if (v.relation != Relation::unknown || k == subdivide) break;
        SubdivisionResult sd = barycentric_subdivide_once(M);
        c1 = subdivide_cover(c1, sd);
        c2 = subdivide_cover(c2, sd);
        M = sd.manifold;
    }
    print_verdict_report(v, "homotopic", used);
    return 0;
}

int cmd_cobordant(const std::string& c1p, const std::string& v1p, const std::string& c2p,
                  const std::string& v2p, int threads) {
    LoadedManifold a = load_manifold(c1p, true);
    LoadedManifold b = load_manifold(c2p, true);
    Cover s1 = load_cover(v1p, a.manifold.complex);
    Cover s2 = load_cover(v2p, b.manifold.complex);
    ClassificationVerdict v = covers_cobordant(a.manifold, s1, b.manifold, s2, threads);
    print_verdict_report(v, "cobordant");
    return 0;
}

int cmd_null_cobordant(const std::string& cp, const std::string& vp, int threads) {
    LoadedManifold a = load_manifold(cp, true);
    Cover s = load_cover(vp, a.manifold.complex);
    ClassificationVerdict v = null_cobordance(a.manifold, s, threads);
    print_verdict_report(v, "null-cobordant");
    return 0;
}

int cmd_subdivide(const std::string& complex_path, int times, const std::string& cover_path,
                  const std::string& cover_out) {
    LoadedManifold lm = load_manifold(complex_path, false);
    SubdivisionResult sd = barycentric_subdivide(lm.manifold, times);
    if (!cover_path.empty()) {
        Cover C = load_cover(cover_path, lm.manifold.complex);
        Cover sub = subdivide_cover(C, sd);
        if (cover_out.empty())
            throw ValidationError("--cover requires --cover-out");
        std::ofstream out(cover_out);
        if (!out) throw ValidationError("cannot write '" + cover_out + "'");
        out << serialize_cover(sub);
    }
    std::cout << serialize_complex(sd.manifold.complex, sd.manifold.signs);
    return 0;
}

int cmd_sperner(const std::string& complex_path, const std::string& sperner_path) {
    LoadedManifold lm = load_manifold(complex_path, false);
    SpernerFile sf = parse_sperner_file(sperner_path);
    SpernerCount sc = sperner_count(lm.manifold, sf.labels, sf.carrier);
    std::cout << "format report " << kSchemaVersion << "\n";
    std::cout << "command sperner\n";
    std::cout << "unsigned_count " << sc.unsigned_count << "\n";
    std::cout << "signed_count " << sc.signed_count << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homotopy and cobordism invariants of covers of triangulated manifolds"};
    app.allow_extras();

    std::string complex_path, complex2_path, cover_path, cover2_path;
    std::string cert_path, sperner_path, cover_out;
    std::string mode = "singleton";
    long long budget = 10'000'000;
    int threads = 1;
    int subdivide = 0;
    int times = 1;
    bool want_open = false;

    auto* validate = app.add_subcommand("validate", "validate a complex and report homology");
    validate->add_option("complex", complex_path)->required();
    validate->add_flag("--with-boundary", want_open, "accept a nonempty boundary");

    auto* degree = app.add_subcommand("degree", "degree of the map induced by a cover");
    degree->add_option("complex", complex_path)->required();
    degree->add_option("cover", cover_path)->required();
    degree->add_option("--threads", threads);

    auto* hopf = app.add_subcommand("hopf", "hopf invariant of a cover of a realized 3-sphere");
    hopf->add_option("complex", complex_path)->required();
    hopf->add_option("cover", cover_path)->required();

    auto* kkmv = app.add_subcommand("kkm-verify", "search for a cover extension, with certificate");
    kkmv->add_option("complex", complex_path)->required();
    kkmv->add_option("cover", cover_path)->required();
    kkmv->add_option("--mode", mode)->check(CLI::IsMember({"singleton", "subsets"}));
    kkmv->add_option("--budget", budget);

    auto* kkme = app.add_subcommand("kkm-extend", "emit an extension cover when one exists");
    kkme->add_option("complex", complex_path)->required();
    kkme->add_option("cover", cover_path)->required();
    kkme->add_option("--mode", mode)->check(CLI::IsMember({"singleton", "subsets"}));
    kkme->add_option("--budget", budget);

    auto* rec = app.add_subcommand("recheck", "re-validate a serialized certificate");
    rec->add_option("certificate", cert_path)->required();
    rec->add_option("complex", complex_path)->required();
    rec->add_option("cover", cover_path)->required();
    rec->add_option("--budget", budget);

    auto* hom = app.add_subcommand("homotopic", "decide homotopy of two covers");
    hom->add_option("complex", complex_path)->required();
    hom->add_option("cover1", cover_path)->required();
    hom->add_option("cover2", cover2_path)->required();
    hom->add_option("--threads", threads);
    hom->add_option("--subdivide", subdivide, "retry after up to K subdivisions");

    auto* cob = app.add_subcommand("cobordant", "decide cobordism of two covers");
    cob->add_option("complex1", complex_path)->required();
    cob->add_option("cover1", cover_path)->required();
    cob->add_option("complex2", complex2_path)->required();
    cob->add_option("cover2", cover2_path)->required();
    cob->add_option("--threads", threads);

    auto* nul = app.add_subcommand("null-cobordant", "decide null-cobordance of a cover");
    nul->add_option("complex", complex_path)->required();
    nul->add_option("cover", cover_path)->required();
    nul->add_option("--threads", threads);

    auto* sub = app.add_subcommand("subdivide", "barycentric subdivision of a complex");
    sub->add_option("complex", complex_path)->required();
    sub->add_option("--subdivide,--times", times, "number of subdivisions");
    sub->add_option("--cover", cover_path, "cover to transport");
    sub->add_option("--cover-out", cover_out, "output path for the transported cover");

    auto* spe = app.add_subcommand("sperner", "count fully labeled facets of a Sperner labeling");
    spe->add_option("complex", complex_path)->required();
    spe->add_option("labels", sperner_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(complex_path, !want_open);
        if (*degree) return cmd_degree(complex_path, cover_path, threads);
        if (*hopf) return cmd_hopf(complex_path, cover_path);
        if (*kkmv) return cmd_kkm_verify(complex_path, cover_path, mode, budget);
        if (*kkme) return cmd_kkm_extend(complex_path, cover_path, mode, budget);
        if (*rec) return cmd_recheck(cert_path, complex_path, cover_path, budget);
        if (*hom) return cmd_homotopic(complex_path, cover_path, cover2_path, threads, subdivide);
        if (*cob) return cmd_cobordant(complex_path, cover_path, complex2_path, cover2_path, threads);
        if (*nul) return cmd_null_cobordant(complex_path, cover_path, threads);
        if (*sub) return cmd_subdivide(complex_path, times, cover_path, cover_out);
        if (*spe) return cmd_sperner(complex_path, sperner_path);
        throw covtop::UnknownCommand("no subcommand selected");
    } catch (const covtop::Error& e) {
        std::cerr << "error " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error " << e.what() << "\n";
        return 1;
    }
}
