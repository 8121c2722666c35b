#include "nis/linear_models.hpp"

#include "nis/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

namespace nis {

namespace {

using Mask = std::uint32_t;  // F_2 vector, bit i = coordinate i

Mask to_mask(const std::vector<bool>& row) {
    Mask m = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) m |= Mask{1} << i;
    return m;
}

std::vector<bool> to_row(Mask m, int h) {
    std::vector<bool> row(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) row[static_cast<std::size_t>(i)] = (m >> i) & 1u;
    return row;
}

// Reduced echelon basis over F_2; pivots are the lowest set bits, rows sorted
// by pivot. Returns fewer rows than given when they are dependent.
std::vector<Mask> f2_echelon(std::vector<Mask> rows) {
    std::vector<Mask> basis;
    for (Mask r : rows) {
        for (Mask b : basis)
            if (r & (b & -b)) r ^= b;
        if (r == 0) continue;
        const Mask pivot = r & -r;
        for (Mask& b : basis)
            if (b & pivot) b ^= r;
        basis.push_back(r);
    }
    std::sort(basis.begin(), basis.end(), [](Mask a, Mask b) { return (a & -a) < (b & -b); });
    return basis;
}

bool f2_contains(const std::vector<Mask>& echelon, Mask v) {
    for (Mask b : echelon)
        if (v & (b & -b)) v ^= b;
    return v == 0;
}

Mask permute(Mask m, const std::vector<int>& perm) {
    Mask out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if ((m >> i) & 1u) out |= Mask{1} << perm[i];
    return out;
}

// Row bits read from coordinate 0 upward, compared lexicographically.
std::vector<std::vector<bool>> rows_of(const std::vector<Mask>& basis, int h) {
    std::vector<std::vector<bool>> out;
    for (Mask m : basis) out.push_back(to_row(m, h));
    return out;
}

// Canonical representative of a subspace under coordinate permutations: the
// lexicographically largest echelon form.
std::vector<std::vector<bool>> canonical_subspace(const std::vector<Mask>& basis, int h) {
    std::vector<int> perm(static_cast<std::size_t>(h));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<bool>> best;
    do {
        std::vector<Mask> image;
        for (Mask m : basis) image.push_back(permute(m, perm));
        auto rows = rows_of(f2_echelon(image), h);
        if (best.empty() || rows > best) best = std::move(rows);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "-" : "") + parts[i];
    return out;
}

std::string bits(Mask m, int h) {
    std::string s;
    for (int i = 0; i < h; ++i) s += ((m >> i) & 1u) ? '1' : '0';
    return s;
}

void check_length(std::size_t got, std::size_t expected, const char* what) {
    if (got != expected) {
        throw DimensionError(std::string(what) + " has length " + std::to_string(got) + ", expected " +
                             std::to_string(expected));
    }
}

const std::map<std::string, std::string>& roman_labels() {
    static const std::map<std::string, std::string> labels{
        {"(h)", "I"},       {"(h_t)", "II"},  {"(e)", "III"},       {"(h-h)", "IV"},    {"(h-h_t)", "V"},
        {"(h-h)_t", "VI"},  {"(e-h)", "VII"}, {"(h_t-h_t)", "VIII"}, {"(e-h_t)", "IX"}, {"(e-e)", "X"}};
    return labels;
}

int roman_value(const std::string& s) {
    static const std::map<std::string, int> v{{"I", 1},   {"II", 2},  {"III", 3},  {"IV", 4}, {"V", 5},
                                              {"VI", 6},  {"VII", 7}, {"VIII", 8}, {"IX", 9}, {"X", 10}};
    return v.at(s);
}

}  // namespace

void HertInvariant::validate() const {
    if (h < 0 || e < 0 || r < 0 || t < 0) throw ArgumentError("invariant entries must be nonnegative");
    if (n <= 0) throw ArgumentError("dimension must be positive");
    if (h + 2 * e + r + t != n) throw ArgumentError("h + 2e + r + t must equal n");
}

int toric_degree_of_hert(const HertInvariant& q) {
    q.validate();
    return q.e + q.t;
}

LinearModel::LinearModel(HertInvariant hert, TwistingGroup twist) : hert_(hert), twist_(std::move(twist)) {
    hert_.validate();
    const int k = static_cast<int>(twist_.rank());
    if (k > std::min(hert_.h, hert_.t)) throw ArgumentError("twisting rank exceeds min(h, t)");
    if (hert_.h > 32) throw ArgumentError("at most 32 hyperbolic components are supported");
    std::vector<Mask> rows;
    for (const auto& row : twist_.hyperbolic_embedding) {
        check_length(row.size(), static_cast<std::size_t>(hert_.h), "twisting row");
        rows.push_back(to_mask(row));
    }
    if (f2_echelon(rows).size() != rows.size()) throw ArgumentError("twisting rows are dependent over Z_2");
}

std::vector<std::string> LinearModel::generators() const {
    std::vector<std::string> out;
    int coord = 1;
    for (int i = 0; i < hert_.h; ++i, ++coord) {
        const std::string x = "x" + std::to_string(coord);
        out.push_back(x + " d/d" + x);
    }
    for (int j = 0; j < hert_.e; ++j, coord += 2) {
        const std::string u = "x" + std::to_string(coord);
        const std::string v = "x" + std::to_string(coord + 1);
        out.push_back(u + " d/d" + u + " + " + v + " d/d" + v);
        out.push_back("2pi (" + u + " d/d" + v + " - " + v + " d/d" + u + ")");
    }
    for (int i = 1; i <= hert_.t; ++i) out.push_back("d/dz" + std::to_string(i));
    for (int i = 1; i <= hert_.r; ++i) out.push_back("d/dzeta" + std::to_string(i));
    return out;
}

void check_point(const LinearModel& model, const ModelPoint& p) {
    const auto& q = model.hert();
    check_length(p.hyperbolic.size(), static_cast<std::size_t>(q.h), "hyperbolic part");
    check_length(p.elbolic.size(), static_cast<std::size_t>(q.e), "elbolic part");
    check_length(p.torus.size(), static_cast<std::size_t>(q.t), "torus part");
    check_length(p.flat.size(), static_cast<std::size_t>(q.r), "flat part");
}

FlowState as_flow_state(const ModelPoint& p) {
    FlowState s;
    for (const auto& x : p.hyperbolic) s.hyperbolic.push_back({x, Rational(0)});
    for (const auto& z : p.elbolic) s.elbolic.push_back({z.x, z.y, Rational(0), Rational(0)});
    for (const auto& z : p.torus) s.torus.push_back(frac(z));
    s.flat = p.flat;
    return s;
}

FlowState flow(const LinearModel& model, const RationalVector& w, const FlowState& z0, const Rational& time) {
    const auto& q = model.hert();
    check_length(w.size(), static_cast<std::size_t>(q.n), "flow vector");
    check_length(z0.hyperbolic.size(), static_cast<std::size_t>(q.h), "hyperbolic part");
    check_length(z0.elbolic.size(), static_cast<std::size_t>(q.e), "elbolic part");
    check_length(z0.torus.size(), static_cast<std::size_t>(q.t), "torus part");
    check_length(z0.flat.size(), static_cast<std::size_t>(q.r), "flat part");
    FlowState s = z0;
    std::size_t k = 0;
    for (auto& x : s.hyperbolic) x.exponent += w[k++] * time;
    for (auto& z : s.elbolic) {
        z.log_scale += w[k++] * time;
        z.turns = frac(z.turns + w[k++] * time);
    }
    for (auto& z : s.torus) z = frac(z + w[k++] * time);
    for (auto& z : s.flat) z += w[k++] * time;
    return s;
}

FlowState flow(const LinearModel& model, const RationalVector& w, const ModelPoint& z0, const Rational& time) {
    check_point(model, z0);
    return flow(model, w, as_flow_state(z0), time);
}

std::vector<double> evaluate(const FlowState& s) {
    std::vector<double> out;
    for (const auto& x : s.hyperbolic)
        out.push_back(x.mantissa.convert_to<double>() * std::exp(x.exponent.convert_to<double>()));
    for (const auto& z : s.elbolic) {
        const double scale = std::exp(z.log_scale.convert_to<double>());
        const double theta = 2.0 * std::numbers::pi * z.turns.convert_to<double>();
        const double x = z.x.convert_to<double>();
        const double y = z.y.convert_to<double>();
        out.push_back(scale * (x * std::cos(theta) - y * std::sin(theta)));
        out.push_back(scale * (x * std::sin(theta) + y * std::cos(theta)));
    }
    for (const auto& z : s.torus) out.push_back(z.convert_to<double>());
    for (const auto& z : s.flat) out.push_back(z.convert_to<double>());
    return out;
}

FlowState apply_twist(const LinearModel& model, std::size_t g, const FlowState& s) {
    if (g >= model.twist().rank()) throw ArgumentError("no twisting generator " + std::to_string(g));
    FlowState out = s;
    const auto& row = model.twist().hyperbolic_embedding[g];
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) out.hyperbolic[i].mantissa = -out.hyperbolic[i].mantissa;
    out.torus[g] = frac(out.torus[g] + Rational(1, 2));
    return out;
}

OrbitLimit limit_orbit(const LinearModel& model, const RationalVector& w) {
    const auto& q = model.hert();
    if (q.h != q.n) throw PreconditionError("orbit limits need a totally hyperbolic chart (h = n)");
    check_length(w.size(), static_cast<std::size_t>(q.n), "direction");
    ModelPoint start;
    start.hyperbolic.assign(static_cast<std::size_t>(q.h), Rational(1));
    RationalVector minus_w;
    for (const auto& x : w) minus_w.push_back(-x);
    // The exponent of each coordinate is -w_i * s; its sign decides the limit.
    const FlowState s = flow(model, minus_w, start, Rational(1));
    OrbitLimit out;
    for (std::size_t i = 0; i < s.hyperbolic.size(); ++i) {
        const int sg = sign(s.hyperbolic[i].exponent);
        if (sg > 0) return OrbitLimit{true, {}};
        if (sg < 0) out.zero_set.push_back(i);
    }
    return out;
}

std::string singularity_name(int e, int h, const TwistingGroup& twist) {
    std::vector<Mask> rows;
    for (const auto& row : twist.hyperbolic_embedding) rows.push_back(to_mask(row));
    const auto basis = f2_echelon(rows);
    Mask support = 0;
    for (Mask m : basis) support |= m;
    Mask units = 0;
    for (int i = 0; i < h; ++i)
        if (f2_contains(basis, Mask{1} << i)) units |= Mask{1} << i;
    const Mask joint = support & ~units;
    const int n_units = std::popcount(units);
    const int n_joint = std::popcount(joint);
    const bool simple = static_cast<int>(basis.size()) == n_units + (joint ? 1 : 0) &&
                        (joint == 0 || (n_joint >= 2 && f2_contains(basis, joint)));

    std::vector<std::string> parts(static_cast<std::size_t>(e), "e");
    if (!simple) {
        for (int i = 0; i < h; ++i) parts.push_back("h");
        std::string tag;
        for (std::size_t i = 0; i < basis.size(); ++i) tag += (i ? "," : "") + bits(basis[i], h);
        return "(" + join(parts) + ")_t{" + tag + "}";
    }
    for (int i = 0; i < h - n_units - n_joint; ++i) parts.push_back("h");
    for (int i = 0; i < n_units; ++i) parts.push_back("h_t");
    if (n_joint == 0) return "(" + join(parts) + ")";
    const std::string joint_part = "(" + join(std::vector<std::string>(static_cast<std::size_t>(n_joint), "h")) + ")_t";
    if (parts.empty()) return joint_part;
    return "(" + join(parts) + "-" + joint_part + ")";
}

std::vector<SingularityType> enumerate_singularity_types(int n, int toric_degree) {
    if (n < 2 || n > 8) throw ArgumentError("dimension must lie in [2, 8]");
    if (toric_degree < 0 || toric_degree > n) throw ArgumentError("toric degree must lie in [0, n]");
    std::vector<SingularityType> out;
    for (int e = 0; e <= toric_degree; ++e) {
        const int t = toric_degree - e;
        for (int h = 0; h + 2 * e + t <= n; ++h) {
            if (e + h < 1) continue;
            const int r = n - h - 2 * e - t;
            const HertInvariant hert{h, e, r, t, n};
            for (int k = 0; k <= std::min(h, t); ++k) {
                // All rank-k subspaces of (Z_2)^h, then classes up to permutation.
                std::set<std::vector<Mask>> subspaces;
                std::vector<Mask> chosen;
                const Mask limit = Mask{1} << h;
                auto rec = [&](auto&& self, Mask from) -> void {
                    if (static_cast<int>(chosen.size()) == k) {
                        auto b = f2_echelon(chosen);
                        if (static_cast<int>(b.size()) == k) subspaces.insert(std::move(b));
                        return;
                    }
                    for (Mask v = from; v < limit; ++v) {
                        chosen.push_back(v);
                        self(self, v + 1);
                        chosen.pop_back();
                    }
                };
                rec(rec, 1);
                std::set<std::vector<std::vector<bool>>> classes;
                for (const auto& s : subspaces) classes.insert(canonical_subspace(s, h));
                // Larger canonical forms first: twists on single components before joint ones.
                for (auto it = classes.rbegin(); it != classes.rend(); ++it) {
                    TwistingGroup g{*it};
                    out.push_back({std::nullopt, singularity_name(e, h, g), hert, g});
                }
            }
        }
    }
    if (n >= 3 && toric_degree == n - 2) {
        for (auto& s : out) {
            if (auto it = roman_labels().find(s.name); it != roman_labels().end()) s.label = it->second;
        }
        std::stable_sort(out.begin(), out.end(), [](const SingularityType& a, const SingularityType& b) {
            const int va = a.label ? roman_value(*a.label) : 100;
            const int vb = b.label ? roman_value(*b.label) : 100;
            return va < vb;
        });
    }
    return out;
}

ConstraintReport check_elbolic_constraints(const HertInvariant& hert, bool has_fixed_point,
                                           std::optional<int> action_toric_degree) {
    hert.validate();
    ConstraintReport report;
    const int degree = hert.e + hert.t;
    if (hert.h > 0) report.violations.push_back("elbolic actions have no hyperbolic component (h = 0 required)");
    if (has_fixed_point) {
        if (hert.r != 0 || hert.t != 0) report.violations.push_back("a fixed point needs r = t = 0");
        if (hert.n % 2 != 0) report.violations.push_back("a fixed point needs even dimension");
        if (2 * degree != hert.n) report.violations.push_back("a fixed point needs toric degree n/2");
    } else if (hert.r == 0 && 2 * degree != hert.n + hert.t) {
        report.violations.push_back("a compact orbit of dimension k needs toric degree (n + k)/2");
    }
    if (action_toric_degree && *action_toric_degree != degree) {
        report.violations.push_back("declared toric degree differs from e + t");
    }
    report.ok = report.violations.empty();
    return report;
}

ConstraintReport check_toric_degree_consistency(const std::vector<HertInvariant>& orbits) {
    ConstraintReport report;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        orbits[i].validate();
        if (orbits[i].n != orbits[0].n) {
            report.violations.push_back("orbit " + std::to_string(i) + " has a different dimension");
        } else if (toric_degree_of_hert(orbits[i]) != toric_degree_of_hert(orbits[0])) {
            report.violations.push_back("orbit " + std::to_string(i) + " has toric degree " +
                                        std::to_string(toric_degree_of_hert(orbits[i])) + ", orbit 0 has " +
                                        std::to_string(toric_degree_of_hert(orbits[0])));
        }
    }
    report.ok = report.violations.empty();
    return report;
}

}  // namespace nis
