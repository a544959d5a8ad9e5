#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "covtop/classify.hpp"
#include "covtop/cover.hpp"
#include "covtop/kkm.hpp"
#include "covtop/realization.hpp"

namespace covtop {

// Structured-text formats, one record per line, '#' starts a comment.
// Every file opens with "format <kind> <schema-version>".
inline constexpr int kSchemaVersion = 1;

struct ParsedComplex {
    SimplicialComplex complex;
    std::optional<std::vector<int>> signs;
    std::optional<GeometricRealization> realization;
};

struct ParsedCover {
    Cover cover;
    std::optional<PartitionOfUnity> partition;
};

namespace detail {

struct Lines {
    std::string origin;  // file name for diagnostics
    std::vector<std::pair<int, std::vector<std::string>>> rows;  // line no, tokens
};

inline Lines tokenize(std::istream& in, const std::string& origin) {
    Lines out;
    out.origin = origin;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::vector<std::string> toks;
        std::string t;
        while (ss >> t) toks.push_back(t);
        if (!toks.empty()) out.rows.push_back({no, std::move(toks)});
    }
    return out;
}

inline Lines tokenize_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return tokenize(in, path);
}

[[noreturn]] inline void parse_fail(const Lines& ls, int line, const std::string& msg) {
    throw ParseError(ls.origin + ":" + std::to_string(line) + ": " + msg);
}

inline long long to_int(const Lines& ls, int line, const std::string& tok) {
    try {
        size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        parse_fail(ls, line, "expected an integer, got '" + tok + "'");
    }
}

inline void expect_header(const Lines& ls, const std::string& kind) {
    if (ls.rows.empty()) throw ParseError(ls.origin + ": empty file");
    const auto& [no, toks] = ls.rows.front();
    if (toks.size() != 3 || toks[0] != "format" || toks[1] != kind)
        parse_fail(ls, no, "expected header 'format " + kind + " " +
                               std::to_string(kSchemaVersion) + "'");
    if (to_int(ls, no, toks[2]) != kSchemaVersion)
        parse_fail(ls, no, "unsupported schema version " + toks[2]);
}

}  // namespace detail

inline ParsedComplex parse_complex(std::istream& in, const std::string& origin = "<input>") {
    auto ls = detail::tokenize(in, origin);
    detail::expect_header(ls, "complex");

    int declared_dim = -2;
    std::map<VertexId, RatVector> coords;
    std::set<VertexId> declared_vertices;
    std::vector<Simplex> facets;
    std::vector<int> signs;
    bool any_sign = false, any_coord = false;

    for (size_t r = 1; r < ls.rows.size(); ++r) {
        const auto& [no, toks] = ls.rows[r];
        const std::string& key = toks[0];
        if (key == "dimension") {
            if (toks.size() != 2) detail::parse_fail(ls, no, "dimension takes one value");
            declared_dim = static_cast<int>(detail::to_int(ls, no, toks[1]));
        } else if (key == "vertex") {
            if (toks.size() < 2) detail::parse_fail(ls, no, "vertex needs an id");
            VertexId v = static_cast<VertexId>(detail::to_int(ls, no, toks[1]));
            if (!declared_vertices.insert(v).second)
                detail::parse_fail(ls, no, "vertex " + std::to_string(v) + " declared twice");
            if (toks.size() > 2) {
                any_coord = true;
                RatVector c;
                for (size_t i = 2; i < toks.size(); ++i) {
                    try {
                        c.push_back(parse_rational(toks[i]));
                    } catch (const ParseError& e) {
                        detail::parse_fail(ls, no, e.what());
                    }
                }
                coords[v] = std::move(c);
            }
        } else if (key == "facet") {
            Simplex f;
            int sign = 0;
            for (size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "sign") {
                    if (i + 2 != toks.size())
                        detail::parse_fail(ls, no, "sign takes exactly one value at line end");
                    long long s = detail::to_int(ls, no, toks[i + 1]);
                    if (s != 1 && s != -1)
                        detail::parse_fail(ls, no, "orientation sign must be 1 or -1");
                    sign = static_cast<int>(s);
                    break;
                }
                f.push_back(static_cast<VertexId>(detail::to_int(ls, no, toks[i])));
            }
            if (f.empty()) detail::parse_fail(ls, no, "facet needs vertex ids");
            facets.push_back(std::move(f));
            signs.push_back(sign);
            if (sign != 0) any_sign = true;
        } else {
            detail::parse_fail(ls, no, "unknown record '" + key + "'");
        }
    }
    if (facets.empty()) throw ParseError(origin + ": no facets");
    if (any_sign)
        for (size_t i = 0; i < signs.size(); ++i)
            if (signs[i] == 0)
                throw ValidationError(origin + ": facet " + std::to_string(i) +
                                      " lacks an orientation sign while others have one");

    ParsedComplex out;
    // signs follow input facet order; reorder to the canonical facet order
    std::vector<Simplex> raw = facets;
    out.complex = build_complex(std::move(facets));
    if (static_cast<int>(out.complex.facets.front().size()) - 1 != declared_dim)
        throw ValidationError(origin + ": declared dimension " +
                              std::to_string(declared_dim) + " does not match facets of dimension " +
                              std::to_string(out.complex.facets.front().size() - 1));
    for (VertexId v : out.complex.vertices)
        if (!declared_vertices.count(v))
            throw ValidationError(origin + ": facet uses undeclared vertex " +
                                  std::to_string(v));
    for (VertexId v : declared_vertices)
        if (!out.complex.has_vertex(v))
            throw ValidationError(origin + ": declared vertex " + std::to_string(v) +
                                  " appears in no facet");
    if (any_sign) {
        std::vector<int> canon(out.complex.facets.size(), 0);
        for (size_t i = 0; i < raw.size(); ++i) {
            Simplex s = raw[i];
            std::sort(s.begin(), s.end());
            canon[out.complex.facet_index(s)] = signs[i];
        }
        out.signs = std::move(canon);
    }
    if (any_coord) {
        GeometricRealization G;
        G.coordinates = std::move(coords);
        G.ambient_dim = static_cast<int>(G.coordinates.begin()->second.size());
        for (VertexId v : out.complex.vertices)
            if (!G.coordinates.count(v))
                throw ValidationError(origin + ": vertex " + std::to_string(v) +
                                      " has no coordinates while others do");
        out.realization = std::move(G);
    }
    return out;
}

inline ParsedComplex parse_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_complex(in, path);
}

inline std::string serialize_complex(const SimplicialComplex& K,
                                     const std::optional<std::vector<int>>& signs = std::nullopt,
                                     const std::optional<GeometricRealization>& G = std::nullopt) {
    std::ostringstream out;
    out << "format complex " << kSchemaVersion << "\n";
    out << "dimension " << K.dimension << "\n";
    for (VertexId v : K.vertices) {
        out << "vertex " << v;
        if (G)
            for (const Rational& c : G->coordinates.at(v)) out << " " << to_string(c);
        out << "\n";
    }
    for (size_t i = 0; i < K.facets.size(); ++i) {
        out << "facet";
        for (VertexId v : K.facets[i]) out << " " << v;
        if (signs) out << " sign " << (*signs)[i];
        out << "\n";
    }
    return out.str();
}

inline ParsedCover parse_cover(std::istream& in, const std::string& origin = "<input>") {
    auto ls = detail::tokenize(in, origin);
    detail::expect_header(ls, "cover");

    ParsedCover out;
    out.cover.num_sets = -1;
    PartitionOfUnity phi;
    bool any_weight = false;
    for (size_t r = 1; r < ls.rows.size(); ++r) {
        const auto& [no, toks] = ls.rows[r];
        const std::string& key = toks[0];
        if (key == "num_sets") {
            if (toks.size() != 2) detail::parse_fail(ls, no, "num_sets takes one value");
            out.cover.num_sets = static_cast<int>(detail::to_int(ls, no, toks[1]));
            if (out.cover.num_sets < 1) detail::parse_fail(ls, no, "num_sets must be positive");
        } else if (key == "labels") {
            if (toks.size() < 3) detail::parse_fail(ls, no, "labels needs an id and at least one label");
            VertexId v = static_cast<VertexId>(detail::to_int(ls, no, toks[1]));
            if (out.cover.labels.count(v))
                detail::parse_fail(ls, no, "labels for vertex " + std::to_string(v) + " given twice");
            std::set<int> s;
            for (size_t i = 2; i < toks.size(); ++i)
                s.insert(static_cast<int>(detail::to_int(ls, no, toks[i])));
            out.cover.labels[v] = std::move(s);
        } else if (key == "weights") {
            if (toks.size() < 3) detail::parse_fail(ls, no, "weights needs an id and values");
            VertexId v = static_cast<VertexId>(detail::to_int(ls, no, toks[1]));
            RatVector w;
            for (size_t i = 2; i < toks.size(); ++i) {
                try {
                    w.push_back(parse_rational(toks[i]));
                } catch (const ParseError& e) {
                    detail::parse_fail(ls, no, e.what());
                }
            }
            phi.weights[v] = std::move(w);
            any_weight = true;
        } else {
            detail::parse_fail(ls, no, "unknown record '" + key + "'");
        }
    }
    if (out.cover.num_sets < 0) throw ParseError(origin + ": missing num_sets");
    if (any_weight) {
        for (const auto& [v, ls2] : out.cover.labels)
            if (!phi.weights.count(v))
                throw ValidationError(origin + ": vertex " + std::to_string(v) +
                                      " has labels but no weights");
        out.partition = std::move(phi);
    }
    return out;
}

inline ParsedCover parse_cover_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_cover(in, path);
}

inline std::string serialize_cover(const Cover& C,
                                   const std::optional<PartitionOfUnity>& phi = std::nullopt) {
    std::ostringstream out;
    out << "format cover " << kSchemaVersion << "\n";
    out << "num_sets " << C.num_sets << "\n";
    for (const auto& [v, ls] : C.labels) {
        out << "labels " << v;
        for (int l : ls) out << " " << l;
        out << "\n";
    }
    if (phi)
        for (const auto& [v, w] : phi->weights) {
            out << "weights " << v;
            for (const Rational& r : w) out << " " << to_string(r);
            out << "\n";
        }
    return out.str();
}

inline std::string serialize_certificate(const Certificate& c) {
    std::ostringstream out;
    out << "format certificate " << kSchemaVersion << "\n";
    out << "kind kkm\n";
    out << "verdict " << to_string(c.verdict) << "\n";
    out << "mode " << (c.mode == LabelMode::singleton ? "singleton" : "subsets") << "\n";
    out << "num_sets " << c.num_sets << "\n";
    out << "search_space_size " << c.search_space_size.str() << "\n";
    out << "explored_assignments " << c.explored_assignments.str() << "\n";
    out << "nodes " << c.nodes << "\n";
    out << "exhausted " << (c.exhausted ? 1 : 0) << "\n";
    out << "free_vertices";
    for (VertexId v : c.free_vertices) out << " " << v;
    out << "\n";
    if (c.witness)
        for (const auto& [v, ls] : c.witness->labels) {
            out << "witness " << v;
            for (int l : ls) out << " " << l;
            out << "\n";
        }
    return out.str();
}

inline Certificate parse_certificate(std::istream& in, const std::string& origin = "<input>") {
    auto ls = detail::tokenize(in, origin);
    detail::expect_header(ls, "certificate");
    Certificate c;
    Cover witness;
    bool have_witness = false;
    bool have_verdict = false;
    for (size_t r = 1; r < ls.rows.size(); ++r) {
        const auto& [no, toks] = ls.rows[r];
        const std::string& key = toks[0];
        auto one = [&]() -> const std::string& {
            if (toks.size() != 2) detail::parse_fail(ls, no, key + " takes one value");
            return toks[1];
        };
        if (key == "kind") {
            if (one() != "kkm") detail::parse_fail(ls, no, "unknown certificate kind");
        } else if (key == "verdict") {
            const std::string& v = one();
            have_verdict = true;
            if (v == "obstructed")
                c.verdict = Verdict::obstructed;
            else if (v == "extendable")
                c.verdict = Verdict::extendable;
            else if (v == "inconclusive")
                c.verdict = Verdict::inconclusive;
            else
                detail::parse_fail(ls, no, "unknown verdict '" + v + "'");
        } else if (key == "mode") {
            const std::string& v = one();
            if (v == "singleton")
                c.mode = LabelMode::singleton;
            else if (v == "subsets")
                c.mode = LabelMode::subsets;
            else
                detail::parse_fail(ls, no, "unknown mode '" + v + "'");
        } else if (key == "num_sets") {
            c.num_sets = static_cast<int>(detail::to_int(ls, no, one()));
        } else if (key == "search_space_size") {
            try {
                c.search_space_size = Integer(one());
            } catch (const std::exception&) {
                detail::parse_fail(ls, no, "bad integer");
            }
        } else if (key == "explored_assignments") {
            try {
                c.explored_assignments = Integer(one());
            } catch (const std::exception&) {
                detail::parse_fail(ls, no, "bad integer");
            }
        } else if (key == "nodes") {
            c.nodes = detail::to_int(ls, no, one());
        } else if (key == "exhausted") {
            c.exhausted = detail::to_int(ls, no, one()) != 0;
        } else if (key == "free_vertices") {
            for (size_t i = 1; i < toks.size(); ++i)
                c.free_vertices.push_back(static_cast<VertexId>(detail::to_int(ls, no, toks[i])));
        } else if (key == "witness") {
            if (toks.size() < 3) detail::parse_fail(ls, no, "witness needs an id and labels");
            VertexId v = static_cast<VertexId>(detail::to_int(ls, no, toks[1]));
            std::set<int> s;
            for (size_t i = 2; i < toks.size(); ++i)
                s.insert(static_cast<int>(detail::to_int(ls, no, toks[i])));
            witness.labels[v] = std::move(s);
            have_witness = true;
        } else {
            detail::parse_fail(ls, no, "unknown record '" + key + "'");
        }
    }
    if (!have_verdict) throw ParseError(origin + ": missing verdict");
    if (have_witness) {
        witness.num_sets = c.num_sets;
        c.witness = std::move(witness);
    }
    return c;
}

inline Certificate parse_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_certificate(in, path);
}

/// Re-validate a certificate against the extension problem it claims to
/// solve. Throws ValidationError (or CoveringSimplexInInput) on any
/// inconsistency; silent return means the certificate checks out.
inline void recheck_certificate(const ExtensionProblem& p, const Certificate& c) {
    if (c.num_sets != p.boundary_cover.num_sets)
        throw ValidationError("certificate num_sets does not match the problem");
    if (c.mode != p.mode) throw ValidationError("certificate mode does not match the problem");
    std::vector<VertexId> free = p.free_vertices();
    if (c.free_vertices != free)
        throw ValidationError("certificate free-vertex list does not match the problem");

    Integer per_vertex = c.mode == LabelMode::singleton
                             ? Integer(c.num_sets)
                             : (Integer(1) << c.num_sets) - 1;
    Integer space = 1;
    for (size_t i = 0; i < free.size(); ++i) space *= per_vertex;
    if (c.search_space_size != space)
        throw ValidationError("search space size " + c.search_space_size.str() +
                              " does not match the problem's " + space.str());

    switch (c.verdict) {
        case Verdict::extendable: {
            if (!c.witness) throw ValidationError("extendable certificate has no witness");
            const Cover& w = *c.witness;
            // restriction: boundary vertices must keep their boundary labels
            std::set<VertexId> free_set(free.begin(), free.end());
            for (VertexId v : p.ambient.complex.vertices) {
                if (free_set.count(v)) {
                    if (!w.labels.count(v))
                        throw ValidationError("witness misses free vertex " + std::to_string(v));
                } else if (w.labels_of(v) != p.boundary_cover.labels_of(v)) {
                    throw ValidationError("witness does not restrict to the boundary cover at vertex " +
                                          std::to_string(v));
                }
            }
            if (c.mode == LabelMode::singleton)
                for (VertexId v : free)
                    if (w.labels_of(v).size() != 1)
                        throw ValidationError("singleton-mode witness has a non-singleton label at vertex " +
                                              std::to_string(v));
            if (auto cs = covering_simplex(p.ambient.complex, w))
                throw CoveringSimplexInInput("witness has covering simplex " +
                                             simplex_to_string(*cs));
            break;
        }
        case Verdict::obstructed:
            if (!c.exhausted) throw ValidationError("obstructed certificate not marked exhausted");
            if (c.explored_assignments != space)
                throw ValidationError("exhaustion accounting covers " +
                                      c.explored_assignments.str() + " of " + space.str() +
                                      " assignments");
            break;
        case Verdict::inconclusive:
            if (c.exhausted)
                throw ValidationError("inconclusive certificate claims exhaustion");
            if (c.nodes <= p.budget)
                throw ValidationError("inconclusive certificate within budget");
            break;
    }
}

/// Sperner labeling data: one label per vertex plus the carrier face of the
/// original simplex the vertex subdivides.
struct SpernerFile {
    std::map<VertexId, int> labels;
    std::map<VertexId, Simplex> carrier;
};

inline SpernerFile parse_sperner(std::istream& in, const std::string& origin = "<input>") {
    auto ls = detail::tokenize(in, origin);
    detail::expect_header(ls, "sperner");
    SpernerFile out;
    for (size_t r = 1; r < ls.rows.size(); ++r) {
        const auto& [no, toks] = ls.rows[r];
        if (toks[0] != "vertex" || toks.size() < 6 || toks[2] != "label" || toks[4] != "carrier")
            detail::parse_fail(ls, no, "expected 'vertex <id> label <l> carrier <ids...>'");
        VertexId v = static_cast<VertexId>(detail::to_int(ls, no, toks[1]));
        if (out.labels.count(v))
            detail::parse_fail(ls, no, "vertex " + std::to_string(v) + " given twice");
        out.labels[v] = static_cast<int>(detail::to_int(ls, no, toks[3]));
        Simplex c;
        for (size_t i = 5; i < toks.size(); ++i)
            c.push_back(static_cast<VertexId>(detail::to_int(ls, no, toks[i])));
        std::sort(c.begin(), c.end());
        out.carrier[v] = std::move(c);
    }
    return out;
}

inline SpernerFile parse_sperner_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_sperner(in, path);
}

inline std::string serialize_sperner(const SpernerFile& s) {
    std::ostringstream out;
    out << "format sperner " << kSchemaVersion << "\n";
    for (const auto& [v, l] : s.labels) {
        out << "vertex " << v << " label " << l << " carrier";
        for (VertexId c : s.carrier.at(v)) out << " " << c;
        out << "\n";
    }
    return out.str();
}

inline std::string serialize_verdict(const ClassificationVerdict& v) {
    std::ostringstream out;
    out << "format verdict " << kSchemaVersion << "\n";
    out << "relation " << to_string(v.relation) << "\n";
    out << "basis " << to_string(v.basis) << "\n";
    if (v.degree1) out << "degree1 " << *v.degree1 << "\n";
    if (v.degree2) out << "degree2 " << *v.degree2 << "\n";
    if (!v.note.empty()) out << "note " << v.note << "\n";
    if (v.prism_cover)
        for (const auto& [vtx, ls] : v.prism_cover->labels) {
            out << "witness " << vtx;
            for (int l : ls) out << " " << l;
            out << "\n";
        }
    return out.str();
}

}  // namespace covtop
