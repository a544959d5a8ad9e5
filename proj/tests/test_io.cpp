#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "covtop/covtop.hpp"

using namespace covtop;

namespace {

ParsedComplex parse_complex_text(const std::string& text) {
    std::istringstream in(text);
    return parse_complex(in);
}

ParsedCover parse_cover_text(const std::string& text) {
    std::istringstream in(text);
    return parse_cover(in);
}

}  // namespace

TEST_CASE("rationals serialize in lowest terms and parse back") {
    CHECK(to_string(Rational(1, 2)) == "1/2");
    CHECK(to_string(Rational(2, 4)) == "1/2");
    CHECK(to_string(Rational(-3, 6)) == "-1/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(parse_rational("22/7") == Rational(22, 7));
    CHECK(parse_rational("-4/8") == Rational(-1, 2));
    CHECK(parse_rational("17") == 17);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
}

TEST_CASE("complex round-trip with signs and coordinates") {
    OrientedPseudomanifold M = boundary_simplex(3);
    GeometricRealization G;
    G.ambient_dim = 3;
    for (VertexId v : M.complex.vertices) {
        RatVector c(3, Rational(0));
        if (v > 0) c[v - 1] = Rational(2, 3);
        G.coordinates[v] = c;
    }
    std::string text = serialize_complex(M.complex, M.signs, G);
    ParsedComplex pc = parse_complex_text(text);
    CHECK(pc.complex.facets == M.complex.facets);
    REQUIRE(pc.signs);
    CHECK(*pc.signs == M.signs);
    REQUIRE(pc.realization);
    CHECK(pc.realization->coordinates == G.coordinates);
    // reserialization is byte-identical
    CHECK(serialize_complex(pc.complex, pc.signs, pc.realization) == text);
}

TEST_CASE("complex parser validates structure") {
    CHECK_THROWS_AS(parse_complex_text(""), ParseError);
    CHECK_THROWS_AS(parse_complex_text("format cover 1\n"), ParseError);
    CHECK_THROWS_AS(parse_complex_text("format complex 2\n"), ParseError);
    CHECK_THROWS_AS(parse_complex_text("format complex 1\ndimension 1\n"), ParseError);
    // dimension mismatch
    CHECK_THROWS_AS(parse_complex_text("format complex 1\ndimension 2\n"
                                       "vertex 0\nvertex 1\nfacet 0 1\n"),
                    ValidationError);
    // facet uses an undeclared vertex
    CHECK_THROWS_AS(parse_complex_text("format complex 1\ndimension 1\n"
                                       "vertex 0\nfacet 0 1\n"),
                    ValidationError);
    // declared vertex in no facet
    CHECK_THROWS_AS(parse_complex_text("format complex 1\ndimension 1\n"
                                       "vertex 0\nvertex 1\nvertex 2\nfacet 0 1\n"),
                    ValidationError);
    // partial orientation signs
    CHECK_THROWS_AS(parse_complex_text("format complex 1\ndimension 1\n"
                                       "vertex 0\nvertex 1\nvertex 2\n"
                                       "facet 0 1 sign 1\nfacet 1 2\nfacet 0 2\n"),
                    ValidationError);
    // duplicate vertex declaration
    CHECK_THROWS_AS(parse_complex_text("format complex 1\ndimension 1\n"
                                       "vertex 0\nvertex 0\nvertex 1\nfacet 0 1\n"),
                    ParseError);
    // partial coordinates
    CHECK_THROWS_AS(parse_complex_text("format complex 1\ndimension 1\n"
                                       "vertex 0 1/2\nvertex 1\nfacet 0 1\n"),
                    ValidationError);
    // bad rational coordinate
    CHECK_THROWS_AS(parse_complex_text("format complex 1\ndimension 1\n"
                                       "vertex 0 1/0\nvertex 1 0\nfacet 0 1\n"),
                    ParseError);
    // unknown record
    CHECK_THROWS_AS(parse_complex_text("format complex 1\nwibble\n"), ParseError);
}

TEST_CASE("comments and signs in input order are handled") {
    ParsedComplex pc = parse_complex_text(
        "# a triangle boundary\n"
        "format complex 1\n"
        "dimension 1\n"
        "vertex 0\nvertex 1\nvertex 2\n"
        "facet 1 2 sign 1   # out of canonical order\n"
        "facet 0 1 sign 1\n"
        "facet 0 2 sign -1\n");
    REQUIRE(pc.signs);
    // canonical facet order is lexicographic: {0,1},{0,2},{1,2}
    CHECK(*pc.signs == std::vector<int>{1, -1, 1});
    CHECK_NOTHROW(validate_pseudomanifold(pc.complex, true, pc.signs));
}

TEST_CASE("cover round-trip with and without weights") {
    Cover c;
    c.num_sets = 3;
    c.labels[0] = {0, 2};
    c.labels[1] = {1};
    c.labels[2] = {2};
    std::string text = serialize_cover(c);
    ParsedCover pc = parse_cover_text(text);
    CHECK(pc.cover.num_sets == 3);
    CHECK(pc.cover.labels == c.labels);
    CHECK(!pc.partition);
    CHECK(serialize_cover(pc.cover) == text);

    PartitionOfUnity phi;
    phi.weights[0] = {Rational(1, 3), 0, Rational(2, 3)};
    phi.weights[1] = {0, 1, 0};
    phi.weights[2] = {0, 0, 1};
    std::string wtext = serialize_cover(c, phi);
    ParsedCover wc = parse_cover_text(wtext);
    REQUIRE(wc.partition);
    CHECK(wc.partition->weights == phi.weights);
    CHECK(serialize_cover(wc.cover, wc.partition) == wtext);
}

TEST_CASE("cover parser validates structure") {
    CHECK_THROWS_AS(parse_cover_text("format cover 1\nlabels 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_cover_text("format cover 1\nnum_sets 0\n"), ParseError);
    CHECK_THROWS_AS(parse_cover_text("format cover 1\nnum_sets 3\nlabels 0\n"), ParseError);
    CHECK_THROWS_AS(
        parse_cover_text("format cover 1\nnum_sets 3\nlabels 0 1\nlabels 0 2\n"),
        ParseError);
    // weights for some vertices but not others
    CHECK_THROWS_AS(parse_cover_text("format cover 1\nnum_sets 2\n"
                                     "labels 0 0\nlabels 1 1\nweights 0 1 0\n"),
                    ValidationError);
}

TEST_CASE("sperner files round-trip") {
    SpernerFile sf;
    sf.labels[0] = 0;
    sf.carrier[0] = {0};
    sf.labels[5] = 1;
    sf.carrier[5] = {0, 1, 2};
    std::string text = serialize_sperner(sf);
    std::istringstream in(text);
    SpernerFile rt = parse_sperner(in);
    CHECK(rt.labels == sf.labels);
    CHECK(rt.carrier == sf.carrier);
    CHECK(serialize_sperner(rt) == text);

    std::istringstream bad("format sperner 1\nvertex 0 label 0\n");
    CHECK_THROWS_AS(parse_sperner(bad), ParseError);
}

TEST_CASE("certificate serialization preserves every field") {
    Certificate c;
    c.verdict = Verdict::obstructed;
    c.mode = LabelMode::subsets;
    c.num_sets = 3;
    c.search_space_size = Integer("282429536481");  // 3^24, needs wide ints
    c.explored_assignments = Integer("282429536481");
    c.nodes = 123456;
    c.exhausted = true;
    c.free_vertices = {4, 7, 9};
    std::string text = serialize_certificate(c);
    std::istringstream in(text);
    Certificate rt = parse_certificate(in);
    CHECK(rt.verdict == c.verdict);
    CHECK(rt.mode == c.mode);
    CHECK(rt.num_sets == c.num_sets);
    CHECK(rt.search_space_size == c.search_space_size);
    CHECK(rt.explored_assignments == c.explored_assignments);
    CHECK(rt.nodes == c.nodes);
    CHECK(rt.exhausted == c.exhausted);
    CHECK(rt.free_vertices == c.free_vertices);
    CHECK(!rt.witness);
    CHECK(serialize_certificate(rt) == text);

    std::istringstream no_verdict("format certificate 1\nkind kkm\n");
    CHECK_THROWS_AS(parse_certificate(no_verdict), ParseError);
    std::istringstream bad_kind("format certificate 1\nkind sperner\nverdict obstructed\n");
    CHECK_THROWS_AS(parse_certificate(bad_kind), ParseError);
}

TEST_CASE("verdict serialization lists relation, basis, and witness") {
    ClassificationVerdict v;
    v.relation = Relation::distinct;
    v.basis = Basis::invariant;
    v.degree1 = 1;
    v.degree2 = -2;
    v.note = "unequal degrees";
    std::string text = serialize_verdict(v);
    CHECK(text.find("relation distinct\n") != std::string::npos);
    CHECK(text.find("basis invariant\n") != std::string::npos);
    CHECK(text.find("degree1 1\n") != std::string::npos);
    CHECK(text.find("degree2 -2\n") != std::string::npos);
    CHECK(text.find("note unequal degrees\n") != std::string::npos);
}

TEST_CASE("missing files raise ParseError") {
    CHECK_THROWS_AS(parse_complex_file("no/such/file.complex"), ParseError);
    CHECK_THROWS_AS(parse_cover_file("no/such/file.cover"), ParseError);
    CHECK_THROWS_AS(parse_certificate_file("no/such/file.cert"), ParseError);
    CHECK_THROWS_AS(parse_sperner_file("no/such/file.sperner"), ParseError);
}

TEST_CASE("shipped fixtures parse and validate") {
    for (const char* name : {"fixtures/boundary_delta_2.complex",
                             "fixtures/boundary_delta_3.complex",
                             "fixtures/boundary_delta_4.complex"}) {
        ParsedComplex pc = parse_complex_file(name);
        REQUIRE(pc.signs);
        CHECK_NOTHROW(validate_pseudomanifold(pc.complex, true, pc.signs));
    }
    ParsedComplex rp2 = parse_complex_file("fixtures/rp2.complex");
    CHECK_THROWS_AS(validate_pseudomanifold(rp2.complex, true), NonOrientable);

    ParsedComplex hopf = parse_complex_file("fixtures/hopf.complex");
    REQUIRE(hopf.realization);
    OrientedPseudomanifold H = validate_pseudomanifold(hopf.complex, true, hopf.signs);
    CHECK_NOTHROW(validate_realization(hopf.complex, *hopf.realization));
    Cover hc = parse_cover_file("fixtures/hopf.cover").cover;
    CHECK_NOTHROW(validate_cover(hopf.complex, hc));
    CHECK(!covering_simplex(hopf.complex, hc));
}
