#include "nis/cli.hpp"

#include "nis/document.hpp"
#include "nis/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace nis {

namespace {

using json = nlohmann::json;

// A computed answer: exit code, machine report and text rendering.
struct Outcome {
    int code = 0;
    json report = json::object();
    std::string text;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

Document load(const std::string& path) { return parse_document(read_file(path)); }

template <class T>
const T& payload_as(const Document& d, const char* expected) {
    if (const T* p = std::get_if<T>(&d.payload)) return *p;
    throw UsageError("expected a " + std::string(expected) + " document, got " + d.kind());
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

RationalVector parse_vector(const std::string& s) {
    RationalVector v;
    for (const auto& part : split(s, ',')) v.push_back(parse_rational(part));
    if (v.empty()) throw UsageError("empty vector");
    return v;
}

std::string str(const Rational& q) { return to_string(q); }

json vec_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(str(x));
    return out;
}

json ivec_json(const IntegerVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

std::string vec_text(const RationalVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + str(v[i]);
    return s + ")";
}

std::string ivec_text(const IntegerVector& v) { return vec_text(to_rational(v)); }

template <class T>
std::string join(const std::vector<T>& xs, const std::string& sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        if constexpr (std::is_same_v<T, std::string>) s += xs[i];
        else s += std::to_string(xs[i]);
    }
    return s;
}

std::string monomial_text(const TermKey& key) {
    std::string s;
    for (std::size_t j = 0; j < key.exponent.size(); ++j) {
        if (key.exponent[j] == 0) continue;
        if (!s.empty()) s += " ";
        s += "x" + std::to_string(j + 1);
        if (key.exponent[j] > 1) s += "^" + std::to_string(key.exponent[j]);
    }
    return s;
}

std::string term_text(const TermKey& key, const GaussianRational& c) {
    const std::string cs = to_string(c);
    const std::string coeff = c.is_real() ? cs : "(" + cs + ")";
    return coeff + " " + monomial_text(key) + " d/dx" + std::to_string(key.component + 1);
}

std::string weight_field_text(const IntegerVector& rho) {
    std::string s;
    for (std::size_t j = 0; j < rho.size(); ++j) {
        if (rho[j] == 0) continue;
        const Integer a = abs(rho[j]);
        const bool neg = rho[j] < 0;
        if (s.empty()) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        if (a != 1) s += a.str() + " ";
        s += "x" + std::to_string(j + 1) + " d/dx" + std::to_string(j + 1);
    }
    return s.empty() ? "0" : s;
}

json terms_json(const PolyVectorField& x) {
    json out = json::array();
    for (const auto& [key, c] : x.terms())
        out.push_back({{"exponent", key.exponent},
                       {"component", key.component},
                       {"re", str(c.re())},
                       {"im", str(c.im())},
                       {"text", term_text(key, c)}});
    return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Outcome invariants_outcome(const CellComplex& c) {
    const auto inv = complex_invariants(c);
    Outcome o;
    o.report = {{"euler", inv.euler}, {"orientable", inv.orientable}, {"closed", inv.closed}, {"census", inv.census}};
    o.text = "chi=" + std::to_string(inv.euler) + " orientable=" + bool_text(inv.orientable) +
             " closed=" + bool_text(inv.closed) + "\ncensus=" + join(inv.census) + "\n";
    return o;
}

void maybe_write(const std::string& path, Payload payload) {
    if (path.empty()) return;
    write_file(path, serialize_document(Document{kSchemaVersion, std::move(payload)}));
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_validate_fan(const std::string& file) {
    const Document d = load(file);
    const Fan& f = payload_as<Fan>(d, "fan");
    const auto r = validate_fan(f);
    Outcome o;
    o.code = r.ok ? 0 : 1;
    json vs = json::array();
    o.text = r.ok ? "valid fan: " + std::to_string(f.size()) + " cones\n" : "invalid fan\n";
    for (const auto& v : r.violations) {
        vs.push_back({{"rule", v.rule}, {"cones", v.cones}, {"witness", vec_json(v.witness)}});
        o.text += "  " + v.rule + ": cones " + join(v.cones) +
                  (v.witness.empty() ? "" : " witness " + vec_text(v.witness)) + "\n";
    }
    o.report = {{"ok", r.ok}, {"cones", f.size()}, {"violations", vs}};
    return o;
}

Outcome cmd_complete(const std::string& file) {
    Outcome o = cmd_validate_fan(file);
    if (o.code != 0) {
        o.report["complete"] = false;
        return o;
    }
    const Document d = load(file);
    const bool c = is_complete(std::get<Fan>(d.payload));
    o.code = c ? 0 : 1;
    o.report["complete"] = c;
    o.text = c ? "complete\n" : "not complete\n";
    return o;
}

Outcome cmd_locate(const std::string& file, const std::string& point) {
    const Document d = load(file);
    const Fan& f = payload_as<Fan>(d, "fan");
    const RationalVector w = parse_vector(point);
    if (w.size() != f.ambient_dim()) throw UsageError("point has the wrong length");
    Outcome o;
    const auto r = validate_fan(f);
    if (!r.ok || !is_complete(f)) {
        o.code = 1;
        o.report = {{"located", false}, {"reason", r.ok ? "fan is not complete" : "fan is invalid"}};
        o.text = std::string(r.ok ? "fan is not complete" : "fan is invalid") + "\n";
        return o;
    }
    const std::size_t i = fan_locate(f, w);
    json gens = json::array();
    std::string gtext;
    for (const auto& g : f.cone(i).generators()) {
        gens.push_back(vec_json(g));
        gtext += " " + vec_text(g);
    }
    o.report = {{"located", true}, {"cone", i}, {"dim", f.cone(i).dim()}, {"generators", gens}};
    o.text = "cone " + std::to_string(i) + " (dim " + std::to_string(f.cone(i).dim()) + ")" +
             (gtext.empty() ? "" : " spanned by" + gtext) + "\n";
    return o;
}

Outcome cmd_domain(const std::string& file, const std::string& output) {
    const Document d = load(file);
    const auto dom = domain_from_fan(payload_as<Fan>(d, "fan"));
    Outcome o = invariants_outcome(dom.complex);
    json facets = json::array();
    for (const auto ray : dom.fan.rays()) facets.push_back({{"ray", ray}, {"facet", dom.facet_of_ray(ray)}});
    o.report["facets"] = facets;
    maybe_write(output, dom.complex);
    return o;
}

Outcome cmd_glue(const std::string& file, const std::string& labels, const std::string& output) {
    const Document d = load(file);
    const auto dom = domain_from_fan(payload_as<Fan>(d, "fan"));
    FacetLabeling lab;
    std::size_t i = 0;
    for (const auto& part : split(labels, ',')) {
        int l = 0;
        try {
            l = std::stoi(part);
        } catch (const std::exception&) {
            throw UsageError("bad label \"" + part + "\"");
        }
        lab.label[i++] = l;
        lab.k = std::max(lab.k, l);
    }
    const CellComplex glued = glue_reflections(dom, lab);
    Outcome o = invariants_outcome(glued);
    o.report["copies"] = std::uint64_t{1} << lab.k;
    maybe_write(output, glued);
    return o;
}

Outcome cmd_invariants(const std::string& file) {
    const Document d = load(file);
    if (const auto* f = std::get_if<Fan>(&d.payload)) return invariants_outcome(domain_from_fan(*f).complex);
    return invariants_outcome(payload_as<CellComplex>(d, "complex or fan"));
}

Outcome cmd_surface(const std::string& kind, const std::string& output) {
    CellComplex c;
    if (kind == "sphere8") {
        c = standard_surface(SurfaceKind::Sphere8);
    } else if (kind.rfind("genus:", 0) == 0) {
        int g = 0;
        try {
            g = std::stoi(kind.substr(6));
        } catch (const std::exception&) {
            throw UsageError("bad genus in \"" + kind + "\"");
        }
        c = standard_surface(SurfaceKind::OrientableGenus, g);
    } else {
        throw UsageError("--kind must be sphere8 or genus:G");
    }
    Outcome o = invariants_outcome(c);
    maybe_write(output, c);
    return o;
}

Outcome cmd_resonance(const std::string& file, int bound) {
    const Document d = load(file);
    const auto& x = payload_as<PolyVectorField>(d, "vector_field");
    const auto r = resonance_report(x.linear(), bound);
    Outcome o;
    json rels = json::array();
    for (const auto& c : r.relations) rels.push_back(ivec_json(c));
    json gens = json::array();
    o.text = "resonance rank r=" + std::to_string(r.resonance_rank) + "\ntoric degree d=" +
             std::to_string(r.toric_degree) + "\n";
    for (const auto& c : r.relations) o.text += "relation " + ivec_text(c) + "\n";
    for (const auto& g : r.generators) {
        gens.push_back({{"weights", ivec_json(g)}, {"field", weight_field_text(g)}});
        o.text += "generator " + weight_field_text(g) + "\n";
    }
    o.text += "stabilized=" + bool_text(r.stabilized) + "\n";
    o.report = {{"resonance_rank", r.resonance_rank},
                {"toric_degree", r.toric_degree},
                {"relations", rels},
                {"generators", gens},
                {"degree_bound", r.degree_bound},
                {"hamiltonian", r.hamiltonian},
                {"kernel_rank", r.kernel_rank},
                {"stabilized", r.stabilized}};
    return o;
}

Outcome cmd_normalize(const std::string& file, int degree, const std::string& output) {
    const Document d = load(file);
    const auto& x = payload_as<PolyVectorField>(d, "vector_field");
    const auto r = pd_normalize(x, degree);
    Outcome o;
    json jets = json::array();
    for (const auto& e : r.jets)
        jets.push_back({{"term", term_text(e.term, e.coefficient)}, {"divisor", to_string(e.divisor)}});
    o.report = {{"degree", degree}, {"terms", terms_json(r.normal_form)}, {"eliminated", jets}};
    o.text = "normal form up to degree " + std::to_string(degree) + ", " + std::to_string(r.jets.size()) +
             " terms eliminated\n";
    for (const auto& [key, c] : r.normal_form.terms()) o.text += "  " + term_text(key, c) + "\n";
    maybe_write(output, r.normal_form);
    return o;
}

Outcome cmd_nf_check(const std::string& file, int degree) {
    const Document d = load(file);
    const auto& x = payload_as<PolyVectorField>(d, "vector_field");
    const bool normal = is_pb_normal(x, degree);
    Outcome o;
    o.code = normal ? 0 : 1;
    json bad = json::array();
    for (const auto& [key, c] : x.terms())
        if (key.degree() <= degree && !resonance_divisor(x.linear(), key).is_zero()) bad.push_back(term_text(key, c));
    o.report = {{"normal", normal}, {"degree", degree}, {"nonresonant_terms", bad}};
    o.text = normal ? "normal up to degree " + std::to_string(degree) + "\n" : "not normal\n";
    for (const auto& b : bad) o.text += "  nonresonant: " + b.get<std::string>() + "\n";
    return o;
}

Outcome cmd_types(int dim, int toric) {
    const auto types = enumerate_singularity_types(dim, toric);
    Outcome o;
    json list = json::array();
    for (const auto& t : types) {
        const auto& q = t.hert;
        json item{{"name", t.name},
                  {"hert", {{"h", q.h}, {"e", q.e}, {"r", q.r}, {"t", q.t}}},
                  {"twist", t.twist.hyperbolic_embedding}};
        if (t.label) item["label"] = *t.label;
        list.push_back(item);
        o.text += (t.label ? *t.label : std::string("-")) + "\t" + t.name + "\th=" + std::to_string(q.h) +
                  " e=" + std::to_string(q.e) + " r=" + std::to_string(q.r) + " t=" + std::to_string(q.t) + "\n";
    }
    o.report = {{"dim", dim}, {"toric_degree", toric}, {"count", types.size()}, {"types", list}};
    o.text = std::to_string(types.size()) + " types\n" + o.text;
    return o;
}

json violations_json(const GraphReport& r, std::string& text) {
    json vs = json::array();
    for (const auto& v : r.violations) {
        json item{{"condition", v.condition}, {"message", v.message}};
        if (v.vertex) item["vertex"] = *v.vertex;
        vs.push_back(item);
        text += "  " + v.condition + (v.vertex ? " at vertex " + std::to_string(*v.vertex) : "") + ": " + v.message +
                "\n";
    }
    return vs;
}

Outcome cmd_marked_graph(const std::string& file) {
    const Document d = load(file);
    const auto& g = payload_as<MarkedGraphDocument>(d, "marked_graph");
    const auto r = validate_marked_graph(g.graph, g.lattice);
    Outcome o;
    o.code = r.ok ? 0 : 1;
    o.text = r.ok ? "valid marked graph\n" : "invalid marked graph\n";
    o.report = {{"ok", r.ok}, {"violations", violations_json(r, o.text)}};
    return o;
}

Outcome cmd_classify(const std::string& file) {
    const Document d = load(file);
    const auto& g = payload_as<MarkedGraphDocument>(d, "marked_graph");
    const auto r = validate_marked_graph(g.graph, g.lattice);
    Outcome o;
    if (!r.ok) {
        o.code = 1;
        o.text = "invalid marked graph\n";
        o.report = {{"ok", false}, {"violations", violations_json(r, o.text)}};
        return o;
    }
    const auto c = classify_case(g.graph, g.lattice);
    o.report = {{"ok", true}, {"case", std::string(1, c.case_letter)}};
    o.text = "case " + std::string(1, c.case_letter) + "\n";
    if (c.manifold) {
        o.report["manifold"] = *c.manifold;
        o.text += "manifold " + *c.manifold + "\n";
    }
    if (c.lens_p) {
        o.report["lens_p"] = c.lens_p->str();
        o.report["lens_q"] = c.lens_q->str();
        o.text += "lens p=" + c.lens_p->str() + " q=" + c.lens_q->str() + "\n";
    }
    return o;
}

Outcome cmd_arrangement(const std::string& file) {
    const Document d = load(file);
    const auto r = check_2d_arrangement(payload_as<Arrangement2D>(d, "arrangement"));
    Outcome o;
    o.code = r.feasible ? 0 : 1;
    if (r.feasible) {
        json angles = json::array();
        o.text = "feasible\n";
        for (std::size_t c = 0; c < r.angles.size(); ++c) {
            angles.push_back(str(r.angles[c]));
            o.text += "  curve " + std::to_string(c) + ": " + str(r.angles[c]) + " turn\n";
        }
        o.report = {{"feasible", true}, {"angles", angles}};
    } else {
        o.report = {{"feasible", false}, {"certificate", r.certificate}};
        o.text = "infeasible\n  conflicting domains: " + join(r.certificate) + "\n";
    }
    return o;
}

std::vector<MonodromyElement> monodromy_elements(const MonodromyDocument& m) {
    std::vector<MonodromyElement> out;
    for (const auto& v : m.mu) out.push_back({v, m.lattice});
    return out;
}

json parts_json(const std::vector<MonodromyPart>& parts, const std::string& tag, std::string& text) {
    json out = json::array();
    for (const auto& p : parts) {
        out.push_back({{"index", p.index}, {"order", p.order.str()}, {"value", vec_json(p.value)}});
        text += "  " + tag + " f" + std::to_string(p.index) + (tag == "torsion" ? " order " + p.order.str() : "") +
                ": " + vec_text(p.value) + "\n";
    }
    return out;
}

Outcome cmd_monodromy(const std::string& action, const std::string& file, const std::string& output) {
    const Document d = load(file);
    const auto& m = payload_as<MonodromyDocument>(d, "monodromy");
    const AbelianPresentation p(m.relations, m.generators);
    Outcome o;
    MonodromyDecomposition dec;
    try {
        dec = monodromy_decompose(p, monodromy_elements(m));
    } catch (const CompatibilityError& e) {
        o.code = 1;
        o.report = {{"compatible", false}, {"generator", e.index()}, {"message", e.what()}};
        o.text = std::string("incompatible: ") + e.what() + "\n";
        return o;
    }
    json orders = json::array();
    for (const auto& t : p.torsion_orders()) orders.push_back(t.str());
    if (action == "decompose") {
        o.text = "torsion orders: " + std::string(orders.empty() ? "none" : "") + "\n";
        if (!orders.empty()) {
            std::vector<std::string> os;
            for (const auto& t : p.torsion_orders()) os.push_back(t.str());
            o.text = "torsion orders: " + join(os) + "\n";
        }
        o.text += "free rank: " + std::to_string(p.free_rank()) + "\n";
        o.report = {{"compatible", true}, {"torsion_orders", orders}, {"free_rank", p.free_rank()}};
        o.report["torsion"] = parts_json(dec.torsion, "torsion", o.text);
        o.report["free"] = parts_json(dec.free, "free", o.text);
        o.report["trivial"] = parts_json(dec.trivial, "trivial", o.text);
        return o;
    }
    if (!m.new_free) throw UsageError("retwist needs a new_free field in the document");
    const auto mu = monodromy_retwist(dec, *m.new_free);
    json values = json::array();
    o.text = "retwisted monodromy\n";
    for (std::size_t j = 0; j < mu.size(); ++j) {
        values.push_back(vec_json(mu[j]));
        o.text += "  e" + std::to_string(j) + ": " + vec_text(mu[j]) + "\n";
    }
    o.report = {{"compatible", true}, {"mu", values}};
    MonodromyDocument next = m;
    next.mu = mu;
    next.new_free.reset();
    maybe_write(output, next);
    return o;
}

Outcome cmd_limit(const std::string& file, const std::string& w) {
    const Document d = load(file);
    const auto& m = payload_as<ModelDocument>(d, "model");
    const auto r = limit_orbit(m.model, parse_vector(w));
    Outcome o;
    o.report = {{"divergent", r.divergent}, {"zero_set", r.zero_set}};
    o.text = r.divergent ? "divergent\n" : "converges to the orbit with x_i = 0 for i in {" + join(r.zero_set) + "}\n";
    return o;
}

Outcome cmd_flow(const std::string& file, const std::string& w, const std::string& time) {
    const Document d = load(file);
    const auto& m = payload_as<ModelDocument>(d, "model");
    if (!m.point) throw UsageError("flow needs a point in the model document");
    const auto s = flow(m.model, parse_vector(w), *m.point, parse_rational(time));
    Outcome o;
    json hyp = json::array();
    for (const auto& c : s.hyperbolic) hyp.push_back({{"mantissa", str(c.mantissa)}, {"exponent", str(c.exponent)}});
    json elb = json::array();
    for (const auto& c : s.elbolic)
        elb.push_back({{"x", str(c.x)}, {"y", str(c.y)}, {"log_scale", str(c.log_scale)}, {"turns", str(c.turns)}});
    const auto values = evaluate(s);
    o.report = {{"hyperbolic", hyp},
                {"elbolic", elb},
                {"torus", vec_json(s.torus)},
                {"flat", vec_json(s.flat)},
                {"approximate", values}};
    std::ostringstream ss;
    ss.precision(12);
    for (std::size_t i = 0; i < values.size(); ++i) ss << (i ? " " : "") << values[i];
    o.text = ss.str() + "\n";
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations for nondegenerate integrable systems and their classifying data", "nis"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit a machine-readable report");

    std::string file, point, labels, output, kind, w, time;
    int bound = 0, degree = 0, dim = 0, toric = 0;
    std::function<Outcome()> action;

    const auto file_arg = [&](CLI::App* sub) { sub->add_option("file", file, "Input document")->required(); };
    const auto output_opt = [&](CLI::App* sub) { sub->add_option("--output", output, "Write the result document"); };

    auto* s = app.add_subcommand("validate-fan", "Check the fan axioms");
    file_arg(s);
    s->callback([&] { action = [&] { return cmd_validate_fan(file); }; });

    s = app.add_subcommand("complete", "Check that a valid fan covers the whole space");
    file_arg(s);
    s->callback([&] { action = [&] { return cmd_complete(file); }; });

    s = app.add_subcommand("locate", "Find the cone containing a point");
    file_arg(s);
    s->add_option("--point", point, "Comma-separated rationals")->required();
    s->callback([&] { action = [&] { return cmd_locate(file, point); }; });

    s = app.add_subcommand("domain", "Orbit complex of the domain of a fan");
    file_arg(s);
    output_opt(s);
    s->callback([&] { action = [&] { return cmd_domain(file, output); }; });

    s = app.add_subcommand("glue", "Glue reflected copies of a domain");
    file_arg(s);
    s->add_option("--labels", labels, "Comma-separated label per facet, in ray order")->required();
    output_opt(s);
    s->callback([&] { action = [&] { return cmd_glue(file, labels, output); }; });

    s = app.add_subcommand("invariants", "Euler characteristic, orientability and closedness");
    file_arg(s);
    s->callback([&] { action = [&] { return cmd_invariants(file); }; });

    s = app.add_subcommand("surface", "Standard glued surfaces");
    s->add_option("--kind", kind, "sphere8 or genus:G")->required();
    output_opt(s);
    s->callback([&] { action = [&] { return cmd_surface(kind, output); }; });

    s = app.add_subcommand("resonance", "Resonance relations and toric degree");
    file_arg(s);
    s->add_option("--bound", bound, "Degree bound")->required();
    s->callback([&] { action = [&] { return cmd_resonance(file, bound); }; });

    s = app.add_subcommand("normalize", "Truncated Poincare-Dulac normalization");
    file_arg(s);
    s->add_option("--degree", degree, "Truncation degree")->required();
    output_opt(s);
    s->callback([&] { action = [&] { return cmd_normalize(file, degree, output); }; });

    s = app.add_subcommand("nf-check", "Check that a field commutes with its semisimple part");
    file_arg(s);
    s->add_option("--degree", degree, "Truncation degree")->required();
    s->callback([&] { action = [&] { return cmd_nf_check(file, degree); }; });

    s = app.add_subcommand("types", "Enumerate singularity types");
    s->add_option("--dim", dim, "Dimension n")->required();
    s->add_option("--toric-degree", toric, "Toric degree")->required();
    s->callback([&] { action = [&] { return cmd_types(dim, toric); }; });

    s = app.add_subcommand("marked-graph", "Validate a marked graph");
    file_arg(s);
    s->callback([&] { action = [&] { return cmd_marked_graph(file); }; });

    s = app.add_subcommand("classify", "Classify a valid marked graph");
    file_arg(s);
    s->callback([&] { action = [&] { return cmd_classify(file); }; });

    s = app.add_subcommand("arrangement", "Check a planar arrangement of domains");
    file_arg(s);
    s->callback([&] { action = [&] { return cmd_arrangement(file); }; });

    auto* mono = app.add_subcommand("monodromy", "Monodromy decomposition and retwisting");
    mono->require_subcommand(1);
    for (const char* name : {"decompose", "retwist"}) {
        auto* sub = mono->add_subcommand(name, name == std::string("decompose") ? "Split into torsion and free parts"
                                                                                 : "Replace the free part");
        file_arg(sub);
        output_opt(sub);
        const std::string act = name;
        sub->callback([&, act] { action = [&, act] { return cmd_monodromy(act, file, output); }; });
    }

    s = app.add_subcommand("limit", "Limit orbit of a one-parameter subgroup in a hyperbolic chart");
    file_arg(s);
    s->add_option("--w", w, "Comma-separated rationals")->required();
    s->callback([&] { action = [&] { return cmd_limit(file, w); }; });

    s = app.add_subcommand("flow", "Exact flow of a model point");
    file_arg(s);
    s->add_option("--w", w, "Comma-separated rationals")->required();
    s->add_option("--time", time, "Rational time")->required();
    s->callback([&] { action = [&] { return cmd_flow(file, w, time); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const Outcome o = action();
        if (as_json) out << o.report.dump(2) << "\n";
        else out << o.text;
        return o.code;
    } catch (const DocumentError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

}  // namespace nis
