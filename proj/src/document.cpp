#include "nis/document.hpp"

#include "nis/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <set>

namespace nis {

using json = nlohmann::json;

DocumentError::DocumentError(Kind kind, const std::string& message, std::size_t line, std::size_t column,
                             std::string path)
    : std::runtime_error(message), kind_(kind), line_(line), column_(column), path_(std::move(path)) {}

namespace {

constexpr const char* kKinds[] = {"fan", "vector_field", "model", "marked_graph", "arrangement", "complex",
                                  "monodromy"};

// Read-only cursor into a JSON value that knows its path for error messages.
class Node {
public:
    Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    const json& raw() const { return *j_; }

    [[noreturn]] void fail(const std::string& message) const {
        throw DocumentError(DocumentError::Kind::Schema, (path_.empty() ? "/" : path_) + ": " + message, 0, 0,
                            path_.empty() ? "/" : path_);
    }

    void expect_object(std::initializer_list<const char*> allowed) const {
        if (!j_->is_object()) fail("expected an object");
        for (const auto& [key, value] : j_->items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                Node(value, path_ + "/" + key).fail("unknown field");
        }
    }

    bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

    Node at(const char* key) const {
        if (!j_->is_object()) fail("expected an object");
        const auto it = j_->find(key);
        if (it == j_->end()) Node(*j_, path_ + "/" + key).fail("missing field");
        return Node(*it, path_ + "/" + key);
    }

    std::optional<Node> opt(const char* key) const {
        if (!has(key)) return std::nullopt;
        return at(key);
    }

    std::vector<Node> items() const {
        if (!j_->is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], path_ + "/" + std::to_string(i));
        return out;
    }

    Rational rational() const {
        if (j_->is_number_integer()) return Rational(j_->get<long long>());
        if (j_->is_number_unsigned()) return Rational(Integer(j_->get<unsigned long long>()));
        if (!j_->is_string()) fail("expected an integer or a \"p/q\" string");
        try {
            return parse_rational(j_->get<std::string>());
        } catch (const ArgumentError& e) {
            fail(e.what());
        }
    }

    Integer integer() const {
        const Rational q = rational();
        if (denominator_of(q) != 1) fail("expected an integer");
        return numerator_of(q);
    }

    std::size_t index() const {
        if (!j_->is_number_integer() || j_->get<long long>() < 0) fail("expected a non-negative integer");
        return static_cast<std::size_t>(j_->get<long long>());
    }

    int small_int() const {
        if (!j_->is_number_integer()) fail("expected an integer");
        const long long v = j_->get<long long>();
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail("integer out of range");
        return static_cast<int>(v);
    }

    bool boolean() const {
        if (!j_->is_boolean()) fail("expected a boolean");
        return j_->get<bool>();
    }

    std::string string() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }

    GaussianRational gaussian() const {
        if (j_->is_object()) {
            expect_object({"re", "im"});
            const Rational re = has("re") ? at("re").rational() : Rational(0);
            const Rational im = has("im") ? at("im").rational() : Rational(0);
            return {re, im};
        }
        return GaussianRational(rational());
    }

    RationalVector rational_vector() const {
        RationalVector v;
        for (const auto& n : items()) v.push_back(n.rational());
        return v;
    }

    IntegerVector integer_vector() const {
        IntegerVector v;
        for (const auto& n : items()) v.push_back(n.integer());
        return v;
    }

    std::vector<std::size_t> index_vector() const {
        std::vector<std::size_t> v;
        for (const auto& n : items()) v.push_back(n.index());
        return v;
    }

    std::vector<bool> bool_vector() const {
        std::vector<bool> v;
        for (const auto& n : items()) v.push_back(n.boolean());
        return v;
    }

private:
    const json* j_;
    std::string path_;
};

// Runs a constructor and reports library errors at the node's path.
template <class F>
auto guarded(const Node& n, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DocumentError&) {
        throw;
    } catch (const std::exception& e) {
        n.fail(e.what());
    }
}

json integer_json(const Integer& z) {
    if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
        return json(z.convert_to<long long>());
    return json(z.str());
}

json rational_json(const Rational& q) {
    if (denominator_of(q) == 1) return integer_json(numerator_of(q));
    return json(to_string(q));
}

json gaussian_json(const GaussianRational& z) {
    if (z.is_real()) return rational_json(z.re());
    return json{{"re", rational_json(z.re())}, {"im", rational_json(z.im())}};
}

json rational_vector_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(rational_json(x));
    return out;
}

json integer_vector_json(const IntegerVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(integer_json(x));
    return out;
}

// ---------------------------------------------------------------------------
// Payload readers

Fan read_fan(const Node& p) {
    p.expect_object({"dim", "cones", "marks"});
    const std::size_t n = p.at("dim").index();
    std::vector<SimplicialCone> cones;
    for (const auto& c : p.at("cones").items()) {
        std::vector<RationalVector> gens;
        for (const auto& g : c.items()) gens.push_back(g.rational_vector());
        cones.push_back(guarded(c, [&] { return SimplicialCone(n, gens); }));
    }
    std::map<std::size_t, RationalVector> marks;
    const bool explicit_marks = p.has("marks");
    if (explicit_marks) {
        for (const auto& m : p.at("marks").items()) {
            m.expect_object({"cone", "vector"});
            const std::size_t cone = m.at("cone").index();
            if (cone >= cones.size()) m.at("cone").fail("cone index out of range");
            if (marks.count(cone)) m.at("cone").fail("duplicate mark");
            const auto v = m.at("vector").rational_vector();
            if (v.size() != n) m.at("vector").fail("wrong length");
            marks[cone] = v;
        }
    }
    return guarded(p, [&] {
        return explicit_marks ? Fan(n, std::move(cones), std::move(marks)) : Fan::with_default_marks(n, std::move(cones));
    });
}

json write_fan(const Fan& f) {
    json cones = json::array();
    for (const auto& c : f.cones()) {
        json gens = json::array();
        for (const auto& g : c.generators()) gens.push_back(rational_vector_json(g));
        cones.push_back(gens);
    }
    json marks = json::array();
    for (const auto& [cone, v] : f.marks()) marks.push_back({{"cone", cone}, {"vector", rational_vector_json(v)}});
    return {{"dim", f.ambient_dim()}, {"cones", cones}, {"marks", marks}};
}

PolyVectorField read_vector_field(const Node& p) {
    p.expect_object({"eigenvalues", "hamiltonian", "terms"});
    EigenvalueTuple eigs;
    for (const auto& g : p.at("eigenvalues").items()) eigs.gammas.push_back(g.gaussian());
    if (eigs.gammas.empty()) p.at("eigenvalues").fail("expected at least one eigenvalue");
    if (const auto h = p.opt("hamiltonian")) eigs.hamiltonian = h->boolean();
    TermMap terms;
    if (const auto ts = p.opt("terms")) {
        for (const auto& t : ts->items()) {
            t.expect_object({"exponent", "component", "coefficient"});
            TermKey key;
            for (const auto& e : t.at("exponent").items()) key.exponent.push_back(e.small_int());
            key.component = t.at("component").index();
            if (terms.count(key)) t.fail("duplicate term");
            terms.emplace(key, t.at("coefficient").gaussian());
        }
    }
    return guarded(p, [&] { return PolyVectorField(std::move(eigs), std::move(terms)); });
}

json write_vector_field(const PolyVectorField& x) {
    json eigs = json::array();
    for (const auto& g : x.linear().gammas) eigs.push_back(gaussian_json(g));
    json terms = json::array();
    for (const auto& [key, c] : x.terms())
        terms.push_back({{"exponent", key.exponent}, {"component", key.component}, {"coefficient", gaussian_json(c)}});
    return {{"eigenvalues", eigs}, {"hamiltonian", x.linear().hamiltonian}, {"terms", terms}};
}

ModelDocument read_model(const Node& p) {
    p.expect_object({"hert", "twist", "point"});
    const Node h = p.at("hert");
    h.expect_object({"h", "e", "r", "t"});
    HertInvariant q;
    q.h = h.at("h").small_int();
    q.e = h.at("e").small_int();
    q.r = h.at("r").small_int();
    q.t = h.at("t").small_int();
    q.n = q.h + 2 * q.e + q.r + q.t;
    TwistingGroup twist;
    if (const auto tw = p.opt("twist"))
        for (const auto& row : tw->items()) twist.hyperbolic_embedding.push_back(row.bool_vector());
    ModelDocument doc{guarded(p, [&] { return LinearModel(q, twist); }), std::nullopt};
    if (const auto pt = p.opt("point")) {
        pt->expect_object({"hyperbolic", "elbolic", "torus", "flat"});
        ModelPoint mp;
        if (const auto v = pt->opt("hyperbolic")) mp.hyperbolic = v->rational_vector();
        if (const auto v = pt->opt("elbolic")) {
            for (const auto& pair : v->items()) {
                const auto xy = pair.rational_vector();
                if (xy.size() != 2) pair.fail("expected [x, y]");
                mp.elbolic.push_back({xy[0], xy[1]});
            }
        }
        if (const auto v = pt->opt("torus")) {
            mp.torus = v->rational_vector();
            for (auto& a : mp.torus) a = frac(a);
        }
        if (const auto v = pt->opt("flat")) mp.flat = v->rational_vector();
        guarded(*pt, [&] {
            check_point(doc.model, mp);
            return 0;
        });
        doc.point = mp;
    }
    return doc;
}

json write_model(const ModelDocument& d) {
    const auto& q = d.model.hert();
    json out{{"hert", {{"h", q.h}, {"e", q.e}, {"r", q.r}, {"t", q.t}}}, {"twist", d.model.twist().hyperbolic_embedding}};
    if (d.point) {
        json elb = json::array();
        for (const auto& c : d.point->elbolic) elb.push_back({rational_json(c.x), rational_json(c.y)});
        out["point"] = {{"hyperbolic", rational_vector_json(d.point->hyperbolic)},
                        {"elbolic", elb},
                        {"torus", rational_vector_json(d.point->torus)},
                        {"flat", rational_vector_json(d.point->flat)}};
    }
    return out;
}

IntegerLattice read_lattice(const Node& rows, std::size_t n) {
    IntegerMatrix m;
    for (const auto& r : rows.items()) {
        auto v = r.integer_vector();
        if (v.size() != n) r.fail("wrong length");
        m.push_back(std::move(v));
    }
    return IntegerLattice(n, m);
}

json write_lattice(const IntegerLattice& z) {
    json rows = json::array();
    for (const auto& b : z.basis()) rows.push_back(integer_vector_json(b));
    return rows;
}

MarkedGraphDocument read_marked_graph(const Node& p) {
    p.expect_object({"dim", "topology", "lattice", "vertices"});
    MarkedGraph g;
    g.ambient_dim = p.at("dim").index();
    const std::string topo = p.at("topology").string();
    if (topo == "circle") g.topology = MarkedGraph::Topology::Circle;
    else if (topo == "interval") g.topology = MarkedGraph::Topology::Interval;
    else p.at("topology").fail("expected \"circle\" or \"interval\"");
    for (const auto& v : p.at("vertices").items()) {
        v.expect_object({"kind", "v", "w"});
        const std::string kind = v.at("kind").string();
        if (kind == "single") {
            if (v.has("w")) v.at("w").fail("single marks carry no w");
            g.vertices.push_back(Mark::single(v.at("v").rational_vector()));
        } else if (kind == "couple") {
            g.vertices.push_back(Mark::couple(v.at("v").rational_vector(), v.at("w").integer_vector()));
        } else {
            v.at("kind").fail("expected \"single\" or \"couple\"");
        }
    }
    return {std::move(g), read_lattice(p.at("lattice"), p.at("dim").index())};
}

json write_marked_graph(const MarkedGraphDocument& d) {
    json verts = json::array();
    for (const auto& m : d.graph.vertices) {
        json v{{"kind", m.kind == Mark::Kind::Single ? "single" : "couple"}, {"v", rational_vector_json(m.v)}};
        if (m.kind == Mark::Kind::Couple) v["w"] = integer_vector_json(m.w);
        verts.push_back(v);
    }
    return {{"dim", d.graph.ambient_dim},
            {"topology", d.graph.topology == MarkedGraph::Topology::Circle ? "circle" : "interval"},
            {"lattice", write_lattice(d.lattice)},
            {"vertices", verts}};
}

Arrangement2D read_arrangement(const Node& p) {
    p.expect_object({"curves", "domains", "reversed"});
    Arrangement2D a;
    a.curves = p.at("curves").index();
    for (const auto& d : p.at("domains").items()) a.domains.push_back(d.index_vector());
    if (const auto r = p.opt("reversed")) {
        a.reversed = r->bool_vector();
        if (a.reversed.size() != a.domains.size()) r->fail("one flag per domain expected");
    }
    return a;
}

json write_arrangement(const Arrangement2D& a) {
    json out{{"curves", a.curves}, {"domains", a.domains}};
    std::vector<bool> flags = a.reversed;
    if (flags.empty()) flags.assign(a.domains.size(), false);
    out["reversed"] = flags;
    return out;
}

CellComplex read_complex(const Node& p) {
    p.expect_object({"boundaries", "labels"});
    std::vector<std::vector<CellComplex::Boundary>> bounds;
    for (const auto& layer : p.at("boundaries").items()) {
        std::vector<CellComplex::Boundary> cells;
        for (const auto& cell : layer.items()) {
            CellComplex::Boundary b;
            for (const auto& inc : cell.items()) {
                const auto pair = inc.items();
                if (pair.size() != 2) inc.fail("expected [facet, sign]");
                b.push_back({pair[0].index(), pair[1].small_int()});
            }
            cells.push_back(std::move(b));
        }
        bounds.push_back(std::move(cells));
    }
    std::vector<std::vector<CellLabel>> labels;
    if (const auto l = p.opt("labels")) {
        for (const auto& layer : l->items()) {
            std::vector<CellLabel> cells;
            for (const auto& cell : layer.items()) {
                const auto pair = cell.items();
                if (pair.size() != 2) cell.fail("expected [copy, source]");
                cells.push_back({static_cast<std::uint64_t>(pair[0].index()), pair[1].index()});
            }
            labels.push_back(std::move(cells));
        }
    }
    return guarded(p, [&] { return CellComplex(std::move(bounds), std::move(labels)); });
}

json write_complex(const CellComplex& c) {
    json layers = json::array();
    for (const auto& layer : c.boundaries()) {
        json cells = json::array();
        for (const auto& b : layer) {
            json incs = json::array();
            for (const auto& inc : b) incs.push_back({inc.facet, inc.sign});
            cells.push_back(incs);
        }
        layers.push_back(cells);
    }
    json out{{"boundaries", layers}};
    if (!c.labels().empty()) {
        json ls = json::array();
        for (const auto& layer : c.labels()) {
            json cells = json::array();
            for (const auto& l : layer) cells.push_back({l.copy, l.source});
            ls.push_back(cells);
        }
        out["labels"] = ls;
    }
    return out;
}

std::vector<RationalVector> read_vectors(const Node& list, std::size_t n) {
    std::vector<RationalVector> out;
    for (const auto& v : list.items()) {
        out.push_back(v.rational_vector());
        if (out.back().size() != n) v.fail("wrong length");
    }
    return out;
}

MonodromyDocument read_monodromy(const Node& p) {
    p.expect_object({"dim", "lattice", "generators", "relations", "mu", "new_free"});
    MonodromyDocument d;
    d.dim = p.at("dim").index();
    d.lattice = read_lattice(p.at("lattice"), d.dim);
    d.generators = p.at("generators").index();
    for (const auto& r : p.at("relations").items()) {
        d.relations.push_back(r.integer_vector());
        if (d.relations.back().size() != d.generators) r.fail("one entry per generator expected");
    }
    d.mu = read_vectors(p.at("mu"), d.dim);
    if (d.mu.size() != d.generators) p.at("mu").fail("one value per generator expected");
    if (const auto f = p.opt("new_free")) d.new_free = read_vectors(*f, d.dim);
    return d;
}

json write_monodromy(const MonodromyDocument& d) {
    json rel = json::array();
    for (const auto& r : d.relations) rel.push_back(integer_vector_json(r));
    json mu = json::array();
    for (const auto& v : d.mu) mu.push_back(rational_vector_json(v));
    json out{{"dim", d.dim},
             {"lattice", write_lattice(d.lattice)},
             {"generators", d.generators},
             {"relations", rel},
             {"mu", mu}};
    if (d.new_free) {
        json nf = json::array();
        for (const auto& v : *d.new_free) nf.push_back(rational_vector_json(v));
        out["new_free"] = nf;
    }
    return out;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

bool same_fan(const Fan& a, const Fan& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.size() != b.size() || a.marks() != b.marks()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.cone(i).generators() != b.cone(i).generators()) return false;
    return true;
}

bool same_graph(const MarkedGraph& a, const MarkedGraph& b) {
    if (a.topology != b.topology || a.ambient_dim != b.ambient_dim || a.vertices.size() != b.vertices.size())
        return false;
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
        const auto& x = a.vertices[i];
        const auto& y = b.vertices[i];
        if (x.kind != y.kind || x.v != y.v || x.w != y.w) return false;
    }
    return true;
}

}  // namespace

std::string Document::kind() const { return kKinds[payload.index()]; }

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        throw DocumentError(DocumentError::Kind::Syntax,
                            "syntax error at line " + std::to_string(line) + ", column " + std::to_string(col), line,
                            col);
    }
    const Node root(j, "");
    root.expect_object({"kind", "schema_version", "payload"});
    const std::string version = root.at("schema_version").string();
    if (version != kSchemaVersion) root.at("schema_version").fail("unsupported schema version");
    const std::string kind = root.at("kind").string();
    const Node p = root.at("payload");
    const auto payload = [&]() -> Payload {
        if (kind == "fan") return read_fan(p);
        if (kind == "vector_field") return read_vector_field(p);
        if (kind == "model") return read_model(p);
        if (kind == "marked_graph") return read_marked_graph(p);
        if (kind == "arrangement") return read_arrangement(p);
        if (kind == "complex") return read_complex(p);
        if (kind == "monodromy") return read_monodromy(p);
        root.at("kind").fail("unknown document kind \"" + kind + "\"");
    };
    Document doc{version, payload()};
    return doc;
}

std::string serialize_document(const Document& doc) {
    json payload = std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Fan>) return write_fan(x);
            else if constexpr (std::is_same_v<T, PolyVectorField>) return write_vector_field(x);
            else if constexpr (std::is_same_v<T, ModelDocument>) return write_model(x);
            else if constexpr (std::is_same_v<T, MarkedGraphDocument>) return write_marked_graph(x);
            else if constexpr (std::is_same_v<T, Arrangement2D>) return write_arrangement(x);
            else if constexpr (std::is_same_v<T, CellComplex>) return write_complex(x);
            else return write_monodromy(x);
        },
        doc.payload);
    const json out{{"kind", doc.kind()}, {"schema_version", doc.schema_version}, {"payload", payload}};
    return out.dump(2) + "\n";
}

bool operator==(const Document& a, const Document& b) {
    if (a.schema_version != b.schema_version || a.payload.index() != b.payload.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.payload);
            if constexpr (std::is_same_v<T, Fan>) {
                return same_fan(x, y);
            } else if constexpr (std::is_same_v<T, PolyVectorField>) {
                return x == y;
            } else if constexpr (std::is_same_v<T, ModelDocument>) {
                return x.model.hert() == y.model.hert() && x.model.twist() == y.model.twist() && x.point == y.point;
            } else if constexpr (std::is_same_v<T, MarkedGraphDocument>) {
                return same_graph(x.graph, y.graph) && x.lattice == y.lattice;
            } else if constexpr (std::is_same_v<T, Arrangement2D>) {
                const auto flags = [](const Arrangement2D& r) {
                    return r.reversed.empty() ? std::vector<bool>(r.domains.size(), false) : r.reversed;
                };
                return x.curves == y.curves && x.domains == y.domains && flags(x) == flags(y);
            } else if constexpr (std::is_same_v<T, CellComplex>) {
                return x.boundaries() == y.boundaries() && x.labels() == y.labels();
            } else {
                return x.dim == y.dim && x.lattice == y.lattice && x.generators == y.generators &&
                       x.relations == y.relations && x.mu == y.mu && x.new_free == y.new_free;
            }
        },
        a.payload);
}

}  // namespace nis
