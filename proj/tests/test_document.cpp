#include "doctest.h"

#include "nis/document.hpp"
#include "nis/errors.hpp"
#include "support.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace nis;
using testsupport::iv;
using testsupport::rv;

namespace {

std::string data_file(const std::string& name) {
    std::ifstream in(std::string(NIS_TEST_DATA) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DocumentError parse_error(const std::string& text) {
    try {
        parse_document(text);
    } catch (const DocumentError& e) {
        return e;
    }
    FAIL("expected a document error");
    return DocumentError(DocumentError::Kind::Syntax, "");
}

std::string wrap(const std::string& kind, const std::string& payload) {
    return R"({"kind": ")" + kind + R"(", "schema_version": "1", "payload": )" + payload + "}";
}

Document doc(Payload p) { return Document{kSchemaVersion, std::move(p)}; }

RationalVector random_vector(std::mt19937& rng, std::size_t n) {
    RationalVector v(n);
    for (auto& x : v) x = testsupport::small_rational(rng, 9, 7);
    return v;
}

Fan random_fan(std::mt19937& rng) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<SimplicialCone> cones;
    std::map<std::size_t, RationalVector> marks;
    for (std::size_t c = 0; c < 1 + rng() % 5; ++c) {
        for (;;) {
            std::vector<RationalVector> gens;
            for (std::size_t k = 0; k < rng() % (n + 1); ++k) gens.push_back(random_vector(rng, n));
            RationalMatrix m(gens.begin(), gens.end());
            if (rank(m) != gens.size()) continue;
            cones.emplace_back(n, gens);
            break;
        }
        if (rng() % 2) marks[c] = random_vector(rng, n);
    }
    return Fan(n, cones, marks);
}

ModelDocument random_model(std::mt19937& rng) {
    for (;;) {
        HertInvariant q{static_cast<int>(rng() % 3), static_cast<int>(rng() % 2), static_cast<int>(rng() % 2),
                        static_cast<int>(rng() % 3), 0};
        q.n = q.h + 2 * q.e + q.r + q.t;
        if (q.n == 0) continue;
        TwistingGroup tw;
        if (q.h >= 1 && q.t >= 1 && rng() % 2) tw.hyperbolic_embedding.push_back(std::vector<bool>(q.h, true));
        ModelDocument d{LinearModel(q, tw), std::nullopt};
        if (rng() % 2) {
            ModelPoint p;
            p.hyperbolic = random_vector(rng, static_cast<std::size_t>(q.h));
            for (int i = 0; i < q.e; ++i)
                p.elbolic.push_back({testsupport::small_rational(rng), testsupport::small_rational(rng)});
            p.torus = random_vector(rng, static_cast<std::size_t>(q.t));
            for (auto& a : p.torus) a = frac(a);
            p.flat = random_vector(rng, static_cast<std::size_t>(q.r));
            d.point = p;
        }
        return d;
    }
}

MarkedGraphDocument random_graph(std::mt19937& rng) {
    const std::size_t n = 2 + rng() % 2;
    MarkedGraph g;
    g.ambient_dim = n;
    g.topology = rng() % 2 ? MarkedGraph::Topology::Circle : MarkedGraph::Topology::Interval;
    for (std::size_t i = 0; i < 1 + rng() % 4; ++i) {
        if (rng() % 3 == 0) {
            IntegerVector w(n);
            for (auto& x : w) x = static_cast<long>(rng() % 7) - 3;
            g.vertices.push_back(Mark::couple(random_vector(rng, n), w));
        } else {
            g.vertices.push_back(Mark::single(random_vector(rng, n)));
        }
    }
    IntegerMatrix rows;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        IntegerVector r(n);
        for (auto& x : r) x = static_cast<long>(rng() % 9) - 4;
        rows.push_back(r);
    }
    return {g, IntegerLattice(n, rows)};
}

Arrangement2D random_arrangement(std::mt19937& rng) {
    Arrangement2D a;
    a.curves = 1 + rng() % 6;
    for (std::size_t d = 0; d < 1 + rng() % 3; ++d) {
        std::vector<std::size_t> s;
        for (std::size_t k = 0; k < 1 + rng() % 4; ++k) s.push_back(rng() % a.curves);
        a.domains.push_back(s);
        a.reversed.push_back(rng() % 2 == 0);
    }
    return a;
}

MonodromyDocument random_monodromy(std::mt19937& rng) {
    MonodromyDocument m;
    m.dim = 1 + rng() % 3;
    m.lattice = IntegerLattice::full(m.dim);
    m.generators = rng() % 3;
    for (std::size_t r = 0; r < rng() % 3; ++r) {
        IntegerVector row(m.generators);
        for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
        m.relations.push_back(row);
    }
    for (std::size_t j = 0; j < m.generators; ++j) m.mu.push_back(random_vector(rng, m.dim));
    if (rng() % 2) m.new_free = std::vector<RationalVector>{random_vector(rng, m.dim)};
    return m;
}

Document random_document(std::mt19937& rng, int kind) {
    switch (kind) {
        case 0: return doc(random_fan(rng));
        case 1: return doc(testsupport::random_planar_field(rng, 4));
        case 2: return doc(random_model(rng));
        case 3: return doc(random_graph(rng));
        case 4: return doc(random_arrangement(rng));
        case 5: return doc(standard_surface(SurfaceKind::OrientableGenus, static_cast<int>(rng() % 3)));
        default: return doc(random_monodromy(rng));
    }
}

}  // namespace

TEST_CASE("documents: examples") {
    const Document d = parse_document(data_file("quadrant_fan.json"));
    CHECK(d.kind() == "fan");
    const Fan& f = std::get<Fan>(d.payload);
    CHECK(f.size() == 9);
    CHECK(doc(quadrant_fan()) == d);

    const Document v = parse_document(data_file("field.json"));
    const auto& x = std::get<PolyVectorField>(v.payload);
    CHECK(x.terms().size() == 1);
    CHECK(x.coefficient(TermKey{{2, 0}, 1}) == GaussianRational(5));
    CHECK(x.linear().gammas == GaussianVector{GaussianRational(1), GaussianRational(2)});
    CHECK(parse_document(serialize_document(v)) == v);

    const Document g = parse_document(data_file("field_nonresonant.json"));
    CHECK(std::get<PolyVectorField>(g.payload).coefficient(TermKey{{0, 3}, 0}) ==
          GaussianRational(Rational(1), Rational(2)));

    for (const char* name : {"trigone_fan.json", "half_plane_fan.json", "arrangement_opposite.json",
                             "arrangement_conflict.json", "graph_circle.json", "graph_same_side.json",
                             "graph_lens.json", "monodromy.json", "model.json"}) {
        CAPTURE(name);
        const Document e = parse_document(data_file(name));
        CHECK(parse_document(serialize_document(e)) == e);
    }
}

TEST_CASE("documents: errors carry a location") {
    auto e = parse_error(wrap("fan", R"({"dim": 2, "cones": [[], [["1/0", 1]]]})"));
    CHECK(e.kind() == DocumentError::Kind::Schema);
    CHECK(e.path() == "/payload/cones/1/0/0");

    e = parse_error("{\n  \"kind\": \"fan\",\n  oops\n}");
    CHECK(e.kind() == DocumentError::Kind::Syntax);
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);

    e = parse_error("");
    CHECK(e.kind() == DocumentError::Kind::Syntax);
    CHECK(e.line() == 1);

    CHECK(parse_error(wrap("fan", R"({"dim": 2, "cones": [], "colour": 1})")).path() == "/payload/colour");
    CHECK(parse_error(wrap("fan", R"({"cones": []})")).path() == "/payload/dim");
    CHECK(parse_error(wrap("circle", "{}")).path() == "/kind");
    CHECK(parse_error(R"({"kind": "fan", "schema_version": "2", "payload": {"dim": 1, "cones": []}})").path() ==
          "/schema_version");
    CHECK(parse_error(R"({"kind": "fan", "schema_version": "1", "payload": {"dim": 1, "cones": []}, "x": 0})")
              .path() == "/x");
    CHECK(parse_error(wrap("fan", R"({"dim": 2, "cones": [[[0.5, 1]]]})")).path() == "/payload/cones/0/0/0");
    CHECK(parse_error(wrap("fan", R"({"dim": 2, "cones": [[[1, 1], [2, 2]]]})")).path() == "/payload/cones/0");
    CHECK(parse_error(wrap("fan", R"({"dim": 2, "cones": [[[1, 1]]], "marks": [{"cone": 3, "vector": [1, 1]}]})"))
              .path() == "/payload/marks/0/cone");
    CHECK(parse_error(wrap("vector_field", R"({"eigenvalues": [1], "terms": [{"exponent": [1], "component": 0,
              "coefficient": 1}]})"))
              .path() == "/payload");
    CHECK(parse_error(wrap("vector_field", R"({"eigenvalues": [{"re": 1, "imag": 2}]})")).path() ==
          "/payload/eigenvalues/0/imag");
    CHECK(parse_error(wrap("marked_graph", R"({"dim": 2, "topology": "line", "lattice": [], "vertices": []})"))
              .path() == "/payload/topology");
    CHECK(parse_error(wrap("marked_graph", R"({"dim": 2, "topology": "circle", "lattice": [[1]], "vertices": []})"))
              .path() == "/payload/lattice/0");
    CHECK(parse_error(wrap("arrangement", R"({"curves": 2, "domains": [[0, 1]], "reversed": []})")).path() ==
          "/payload/reversed");
    CHECK(parse_error(wrap("complex", R"({"boundaries": [[[]], [[[0, 2]]]]})")).path() == "/payload");
    CHECK(parse_error(wrap("model", R"({"hert": {"h": 1, "e": 0, "r": 0, "t": 0}, "point": {"hyperbolic": []}})"))
              .path() == "/payload/point");
    CHECK(parse_error(wrap("monodromy", R"({"dim": 1, "lattice": [], "generators": 2, "relations": [], "mu": [[0]]})"))
              .path() == "/payload/mu");
}

TEST_CASE("documents: parse inverts serialize on random documents") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 350; ++iter) {
        const Document d = random_document(rng, iter % 7);
        CAPTURE(d.kind());
        const std::string text = serialize_document(d);
        const Document back = parse_document(text);
        CHECK(back == d);
        CHECK(serialize_document(back) == text);
    }
}

TEST_CASE("documents: big rationals survive") {
    const Rational big = Rational(Integer("1000000000000000000000000000001"), Integer(7));
    const Fan f(1, {SimplicialCone(1, {}), SimplicialCone(1, {RationalVector{big}})}, {{1, RationalVector{-big}}});
    const Document d = doc(f);
    const std::string text = serialize_document(d);
    CHECK(text.find("1000000000000000000000000000001/7") != std::string::npos);
    CHECK(parse_document(text) == d);

    MonodromyDocument m;
    m.dim = 1;
    m.lattice = IntegerLattice(1, {IntegerVector{Integer("123456789012345678901234567890")}});
    m.generators = 0;
    CHECK(parse_document(serialize_document(doc(m))) == doc(m));
}
