#include "nis/classification.hpp"

#include "nis/errors.hpp"
#include "nis/simplex.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace nis {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

// Linear functional vanishing on the span of z (rank n - 1 assumed).
std::optional<RationalVector> normal_functional(const IntegerLattice& z) {
    RationalMatrix rows;
    for (const auto& b : z.basis()) rows.push_back(to_rational(b));
    const auto ns = nullspace(rows, z.ambient_dim());
    if (ns.size() != 1) return std::nullopt;
    return ns.front();
}

bool is_end(const MarkedGraph& g, std::size_t i) {
    return g.topology == MarkedGraph::Topology::Interval && (i == 0 || i + 1 == g.vertices.size());
}

// Extended gcd: returns (g, x, y) with a x + b y = g >= 0.
std::array<Integer, 3> ext_gcd(Integer a, Integer b) {
    Integer x0{1}, y0{0}, x1{0}, y1{1};
    while (b != 0) {
        const Integer q = a / b;
        Integer t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

Integer mod_pos(const Integer& a, const Integer& p) {
    Integer r = a % p;
    if (r < 0) r += p;
    return r;
}

// (p, q) for the lens space glued along w1, w2, given in coordinates of a
// basis of a rank-2 lattice. q is normalized to the least of +-q^{+-1} mod p.
std::pair<Integer, Integer> lens_invariants(const IntegerVector& a, const IntegerVector& b) {
    const auto [g, x, y] = ext_gcd(a[0], a[1]);
    // u = (-y, x) completes a to a basis: det(a, u) = a0 x + a1 y = 1.
    const Integer beta = a[0] * b[1] - a[1] * b[0];
    const Integer alpha = b[0] * x - b[1] * (-y);
    const Integer p = beta < 0 ? Integer(-beta) : beta;
    if (p <= 1) return {p, Integer(0)};
    const Integer q = mod_pos(beta < 0 ? Integer(-alpha) : alpha, p);
    const Integer qinv = mod_pos(std::get<1>(ext_gcd(q, p)), p);
    const Integer best = std::min({q, Integer(p - q), qinv, Integer(p - qinv)});
    return {p, best};
}

RationalVector add_scaled(RationalVector acc, const RationalVector& v, const Rational& c) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += c * v[k];
    return acc;
}

}  // namespace

GraphReport validate_marked_graph(const MarkedGraph& g, const IntegerLattice& z) {
    GraphReport r;
    auto fail = [&](std::string cond, std::optional<std::size_t> v, std::string msg) {
        r.ok = false;
        r.violations.push_back({std::move(cond), v, std::move(msg)});
    };
    const std::size_t n = g.ambient_dim;
    const std::size_t m = g.vertices.size();

    if (g.topology == MarkedGraph::Topology::Circle) {
        if (m == 0 || m % 2 != 0) fail("C_i", std::nullopt, "circle needs an even positive number of vertices");
    } else if (m < 2) {
        fail("C_i", std::nullopt, "interval needs at least two vertices");
    }

    bool shapes_ok = true;
    for (std::size_t i = 0; i < m; ++i) {
        const Mark& mk = g.vertices[i];
        if (mk.kind == Mark::Kind::Couple && !is_end(g, i))
            fail("C_ii", i, "couple mark away from an end of an interval");
        if (mk.v.size() != n) {
            fail("C_ii", i, "mark vector has length " + idx(mk.v.size()));
            shapes_ok = false;
        }
        if (mk.kind == Mark::Kind::Couple && mk.w.size() != n) {
            fail("C_ii", i, "couple vector has length " + idx(mk.w.size()));
            shapes_ok = false;
        }
    }

    if (z.ambient_dim() != n || n == 0 || z.rank() + 1 != n) {
        fail("C_iii", std::nullopt, "isotropy lattice must have rank n - 1 in dimension n");
        return r;
    }
    if (!shapes_ok) return r;

    const auto nu = normal_functional(z);
    std::vector<int> side(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const Mark& mk = g.vertices[i];
        side[i] = sign(dot(*nu, mk.v));
        if (side[i] == 0) fail("C_iv", i, "mark vector lies in the span of the isotropy lattice");
        if (mk.kind == Mark::Kind::Couple) {
            try {
                if (!is_primitive(mk.w, z)) fail("C_iv", i, "couple vector is not primitive in the lattice");
            } catch (const MembershipError&) {
                fail("C_iv", i, "couple vector is not in the lattice");
            }
        }
    }
    const std::size_t pairs = g.topology == MarkedGraph::Topology::Circle ? m : (m == 0 ? 0 : m - 1);
    for (std::size_t i = 0; i < pairs; ++i) {
        const std::size_t j = (i + 1) % m;
        if (side[i] != 0 && side[i] == side[j])
            fail("C_iv", i, "vertices " + idx(i) + " and " + idx(j) + " lie on the same side");
    }
    return r;
}

Classification classify_case(const MarkedGraph& g, const IntegerLattice& z) {
    const auto report = validate_marked_graph(g, z);
    if (!report.ok) {
        const auto& v = report.violations.front();
        throw PreconditionError("invalid marked graph (" + v.condition + "): " + v.message);
    }
    const std::size_t n = g.ambient_dim;
    Classification c;
    if (g.topology == MarkedGraph::Topology::Circle) {
        c.case_letter = 'a';
        c.manifold = "T^" + idx(n);
        return c;
    }
    const Mark& first = g.vertices.front();
    const Mark& last = g.vertices.back();
    const int couples = (first.kind == Mark::Kind::Couple) + (last.kind == Mark::Kind::Couple);
    c.case_letter = couples == 0 ? 'b' : couples == 1 ? 'c' : 'd';
    if (n == 2) {
        c.manifold = couples == 0 ? "Klein bottle" : couples == 1 ? "RP^2" : "S^2";
    } else if (n == 3 && couples == 2) {
        const auto a = z.coordinates(to_rational(first.w));
        const auto b = z.coordinates(to_rational(last.w));
        const auto [p, q] = lens_invariants(*a, *b);
        c.lens_p = p;
        c.lens_q = q;
        if (p == 0) c.manifold = "S^2 x S^1";
        else if (p == 1) c.manifold = "S^3";
        else c.manifold = "L(" + p.str() + "," + q.str() + ")";
    }
    return c;
}

bool MonodromyElement::equivalent(const RationalVector& other) const {
    if (other.size() != representative.size()) throw DimensionError("monodromy vectors differ in length");
    RationalVector d(other.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = representative[k] - other[k];
    return modulus.contains(d);
}

AbelianPresentation::AbelianPresentation(IntegerMatrix relations, std::size_t generators)
    : relations_(std::move(relations)), generators_(generators) {
    for (const auto& row : relations_)
        if (row.size() != generators_) throw DimensionError("relation row length differs from generator count");
    if (relations_.empty() || generators_ == 0) {
        smith_.u = identity_matrix(relations_.size());
        smith_.d = IntegerMatrix(relations_.size(), IntegerVector(generators_, Integer(0)));
        smith_.v = identity_matrix(generators_);
    } else {
        smith_ = smith_decomposition(relations_, generators_);
    }
}

Integer AbelianPresentation::invariant_factor(std::size_t i) const {
    if (i >= generators_) throw ArgumentError("generator index out of range");
    if (i >= smith_.d.size()) return Integer(0);
    return smith_.d[i][i];
}

std::vector<Integer> AbelianPresentation::torsion_orders() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < generators_; ++i)
        if (invariant_factor(i) > 1) out.push_back(invariant_factor(i));
    return out;
}

std::size_t AbelianPresentation::free_rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < generators_; ++i)
        if (invariant_factor(i) == 0) ++r;
    return r;
}

MonodromyDecomposition monodromy_decompose(const AbelianPresentation& p, const std::vector<MonodromyElement>& mu) {
    const std::size_t g = p.generator_count();
    if (mu.size() != g)
        throw DimensionError("monodromy has " + idx(mu.size()) + " values for " + idx(g) + " generators");
    MonodromyDecomposition out;
    out.v = p.smith().v;
    if (g == 0) return out;
    const std::size_t n = mu.front().representative.size();
    const IntegerLattice& z = mu.front().modulus;
    for (const auto& e : mu) {
        if (e.representative.size() != n || e.modulus.ambient_dim() != n)
            throw DimensionError("monodromy values differ in dimension");
        if (!(e.modulus == z)) throw ArgumentError("monodromy values use different lattices");
    }
    const IntegerMatrix vinv = unimodular_inverse(out.v);
    for (std::size_t i = 0; i < g; ++i) {
        RationalVector value(n, Rational(0));
        for (std::size_t j = 0; j < g; ++j)
            if (vinv[i][j] != 0) value = add_scaled(std::move(value), mu[j].representative, Rational(vinv[i][j]));
        const Integer d = p.invariant_factor(i);
        if (d >= 1) {
            RationalVector scaled(value);
            for (auto& x : scaled) x *= Rational(d);
            if (!z.contains(scaled))
                throw CompatibilityError("generator " + idx(i) + " of order " + d.str() +
                                             " is not sent to an element of that order",
                                         i);
        }
        MonodromyPart part{i, d, std::move(value)};
        if (d == 0) out.free.push_back(std::move(part));
        else if (d == 1) out.trivial.push_back(std::move(part));
        else out.torsion.push_back(std::move(part));
    }
    return out;
}

std::vector<RationalVector> monodromy_retwist(const MonodromyDecomposition& d,
                                              const std::vector<RationalVector>& new_free) {
    if (new_free.size() != d.free.size())
        throw DimensionError("expected " + idx(d.free.size()) + " free values, got " + idx(new_free.size()));
    const std::size_t g = d.v.size();
    std::vector<const RationalVector*> f(g, nullptr);
    for (const auto& part : d.torsion) f.at(part.index) = &part.value;
    for (const auto& part : d.trivial) f.at(part.index) = &part.value;
    for (std::size_t k = 0; k < d.free.size(); ++k) f.at(d.free[k].index) = &new_free[k];
    if (g == 0) return {};
    const std::size_t n = f.front()->size();
    for (std::size_t i = 0; i < g; ++i) {
        if (f[i] == nullptr) throw ArgumentError("decomposition does not cover generator " + idx(i));
        if (f[i]->size() != n) throw DimensionError("free value has the wrong length");
    }
    std::vector<RationalVector> out(g, RationalVector(n, Rational(0)));
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t i = 0; i < g; ++i)
            if (d.v[j][i] != 0) out[j] = add_scaled(std::move(out[j]), *f[i], Rational(d.v[j][i]));
    return out;
}

bool twisting_compatibility(const std::vector<TwistWitness>& witnesses, const std::vector<RationalVector>& mu,
                            const IntegerLattice& z) {
    const std::size_t n = z.ambient_dim();
    for (const auto& v : mu)
        if (v.size() != n) throw DimensionError("monodromy value has the wrong length");
    for (const auto& wit : witnesses) {
        if (wit.loop_class.size() != mu.size()) throw DimensionError("loop class length differs from generator count");
        if (wit.w.size() != n) throw DimensionError("twisting vector has the wrong length");
        if (!z.spans(wit.w)) throw PreconditionError("twisting vector is outside the span of the lattice");
    }
    for (const auto& wit : witnesses) {
        RationalVector value(n, Rational(0));
        for (std::size_t j = 0; j < mu.size(); ++j)
            if (wit.loop_class[j] != 0) value = add_scaled(std::move(value), mu[j], Rational(wit.loop_class[j]));
        for (std::size_t k = 0; k < n; ++k) value[k] -= wit.w[k];
        if (!z.contains(value)) return false;
    }
    return true;
}

namespace {

using Sequence = std::vector<std::size_t>;

void check_arrangement(const Arrangement2D& a) {
    if (a.curves > kMaxArrangementCurves)
        throw ArgumentError("arrangement has " + idx(a.curves) + " curves; the limit is " +
                            idx(kMaxArrangementCurves));
    if (!a.reversed.empty() && a.reversed.size() != a.domains.size())
        throw ArgumentError("orientation flags do not match the domains");
    std::vector<bool> used(a.curves, false);
    for (std::size_t d = 0; d < a.domains.size(); ++d) {
        const auto& seq = a.domains[d];
        if (seq.empty()) throw ArgumentError("domain " + idx(d) + " has an empty boundary");
        std::vector<bool> seen(a.curves, false);
        for (const std::size_t c : seq) {
            if (c >= a.curves) throw ArgumentError("domain " + idx(d) + " refers to curve " + idx(c));
            if (seen[c]) throw ArgumentError("domain " + idx(d) + " repeats curve " + idx(c));
            seen[c] = used[c] = true;
        }
    }
    for (std::size_t c = 0; c < a.curves; ++c)
        if (!used[c]) throw ArgumentError("curve " + idx(c) + " bounds no domain");
}

std::vector<Sequence> oriented_domains(const Arrangement2D& a) {
    std::vector<Sequence> out;
    for (std::size_t d = 0; d < a.domains.size(); ++d) {
        Sequence s = a.domains[d];
        if (!a.reversed.empty() && a.reversed[d]) std::reverse(s.begin(), s.end());
        out.push_back(std::move(s));
    }
    return out;
}

// Gaps u_0..u_{m-1} between circularly consecutive curves. Homogeneous strict
// constraints u > 0 and total - 2 arc > 0 become u = 1 + u' and
// total - 2 arc - s = 1 with u', s >= 0.
std::optional<std::vector<Rational>> solve_gaps(const std::vector<std::size_t>& pos,
                                                const std::vector<Sequence>& domains, std::size_t m) {
    RationalMatrix rows;
    RationalVector rhs;
    std::size_t slack_count = 0;
    for (const auto& s : domains) slack_count += s.size();
    const std::size_t cols = m + slack_count;
    std::size_t slack = m;
    for (const auto& s : domains) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            const std::size_t from = pos[s[j]];
            const std::size_t to = pos[s[(j + 1) % s.size()]];
            RationalVector row(cols, Rational(0));
            for (std::size_t k = 0; k < m; ++k) row[k] = 1;
            // Forward arc from `from` to `to`; the whole circle when they coincide.
            std::size_t k = from;
            do {
                row[k] -= 2;
                k = (k + 1) % m;
            } while (k != to);
            Rational r(1);
            for (std::size_t q = 0; q < m; ++q) r -= row[q];
            row[slack++] = -1;
            rows.push_back(std::move(row));
            rhs.push_back(r);
        }
    }
    const auto x = find_nonnegative_solution(rows, rhs, cols);
    if (!x) return std::nullopt;
    std::vector<Rational> gaps(m);
    for (std::size_t k = 0; k < m; ++k) gaps[k] = (*x)[k] + 1;
    return gaps;
}

bool cyclically_increasing(const Sequence& s, const std::vector<std::size_t>& pos) {
    std::size_t descents = 0;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (pos[s[(j + 1) % s.size()]] <= pos[s[j]]) ++descents;
    return descents == 1;
}

std::optional<std::vector<Rational>> search(std::size_t m, const std::vector<Sequence>& domains) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> pos(m);
    do {
        for (std::size_t k = 0; k < m; ++k) pos[order[k]] = k;
        if (!std::all_of(domains.begin(), domains.end(),
                         [&](const Sequence& s) { return cyclically_increasing(s, pos); }))
            continue;
        const auto gaps = solve_gaps(pos, domains, m);
        if (!gaps) continue;
        Rational total(0);
        for (const auto& g : *gaps) total += g;
        std::vector<Rational> angles(m);
        Rational acc(0);
        for (std::size_t k = 0; k < m; ++k) {
            angles[order[k]] = acc / total;
            acc += (*gaps)[k];
        }
        return angles;
    } while (m > 1 && std::next_permutation(order.begin() + 1, order.end()));
    return std::nullopt;
}

// Feasibility of a subset of domains, over the curves they use.
bool subset_feasible(const std::vector<Sequence>& domains, const std::vector<std::size_t>& subset, std::size_t curves) {
    std::vector<std::size_t> relabel(curves, curves);
    std::size_t m = 0;
    std::vector<Sequence> sub;
    for (const std::size_t d : subset) {
        Sequence s;
        for (const std::size_t c : domains[d]) {
            if (relabel[c] == curves) relabel[c] = m++;
            s.push_back(relabel[c]);
        }
        sub.push_back(std::move(s));
    }
    return search(m, sub).has_value();
}

}  // namespace

ArrangementResult check_2d_arrangement(const Arrangement2D& a) {
    check_arrangement(a);
    const auto domains = oriented_domains(a);
    ArrangementResult r;
    if (auto angles = search(a.curves, domains)) {
        r.feasible = true;
        r.angles = std::move(*angles);
        return r;
    }
    std::vector<std::size_t> keep(domains.size());
    std::iota(keep.begin(), keep.end(), 0);
    for (std::size_t i = 0; i < keep.size();) {
        std::vector<std::size_t> trial;
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (j != i) trial.push_back(keep[j]);
        if (!subset_feasible(domains, trial, a.curves)) keep = std::move(trial);
        else ++i;
    }
    r.certificate = std::move(keep);
    return r;
}

}  // namespace nis
