#include "nis/resonance.hpp"

#include "nis/errors.hpp"
#include "nis/simplex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace nis {

namespace {

GaussianRational weighted_sum(const std::vector<int>& b, const GaussianVector& gammas) {
    GaussianRational s;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] != 0) {
            s += GaussianRational(Rational(b[j])) * gammas[j];
        }
    }
    return s;
}

IntegerVector to_integer_vector(const std::vector<int>& v) {
    IntegerVector out;
    out.reserve(v.size());
    for (int x : v) out.emplace_back(x);
    return out;
}

bool relation_less(const IntegerVector& a, const IntegerVector& b) {
    const Integer sa = std::accumulate(a.begin(), a.end(), Integer(0));
    const Integer sb = std::accumulate(b.begin(), b.end(), Integer(0));
    if (sa != sb) return sa < sb;
    return a < b;
}

// Non-Hamiltonian resonance relations with 1 <= sum c_j <= bound.
std::vector<IntegerVector> enumerate_relations(const GaussianVector& gammas, int bound) {
    const std::size_t m = gammas.size();
    std::vector<IntegerVector> out;
    std::vector<int> b(m, 0);
    // b ranges over nonnegative vectors with |b| <= bound + 1.
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int remaining) {
        if (j == m) {
            const int total = bound + 1 - remaining;
            const GaussianRational s = weighted_sum(b, gammas);
            if (total >= 1 && total <= bound && s.is_zero()) {
                out.push_back(to_integer_vector(b));
            }
            if (total >= 2) {
                for (std::size_t l = 0; l < m; ++l) {
                    if (b[l] == 0 && s == gammas[l]) {
                        IntegerVector c = to_integer_vector(b);
                        c[l] = -1;
                        out.push_back(std::move(c));
                    }
                }
            }
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            b[j] = v;
            rec(j + 1, remaining - v);
        }
        b[j] = 0;
    };
    rec(0, bound + 1);
    std::sort(out.begin(), out.end(), relation_less);
    return out;
}

// If some real functional phi(z) = alpha*Re z + beta*Im z is >= 1 on every
// eigenvalue, relations are bounded: sum_j b_j phi_j = phi_l forces
// |b| <= max phi / min phi.
std::optional<int> half_plane_bound(const GaussianVector& gammas) {
    const std::size_t m = gammas.size();
    // Variables: alpha+, alpha-, beta+, beta-, slack_j.
    RationalMatrix a(m, RationalVector(4 + m, Rational(0)));
    RationalVector rhs(m, Rational(1));
    for (std::size_t j = 0; j < m; ++j) {
        a[j][0] = gammas[j].re();
        a[j][1] = -gammas[j].re();
        a[j][2] = gammas[j].im();
        a[j][3] = -gammas[j].im();
        a[j][4 + j] = -1;
    }
    const auto sol = find_nonnegative_solution(a, rhs, 4 + m);
    if (!sol) {
        return std::nullopt;
    }
    const Rational alpha = (*sol)[0] - (*sol)[1];
    const Rational beta = (*sol)[2] - (*sol)[3];
    Rational lo, hi;
    for (std::size_t j = 0; j < m; ++j) {
        const Rational phi = alpha * gammas[j].re() + beta * gammas[j].im();
        if (j == 0 || phi < lo) lo = phi;
        if (j == 0 || phi > hi) hi = phi;
    }
    const Integer max_b = floor_of(hi / lo);
    return std::max(1, static_cast<int>(max_b) - 1);
}

// Full field including the diagonal linear terms as degree-one monomials.
TermMap full_terms(const PolyVectorField& x) {
    TermMap out = x.terms();
    for (std::size_t j = 0; j < x.dim(); ++j) {
        const auto& g = x.linear().gammas[j];
        if (!g.is_zero()) {
            std::vector<int> e(x.dim(), 0);
            e[j] = 1;
            out.emplace(TermKey{std::move(e), j}, g);
        }
    }
    return out;
}

void accumulate(TermMap& acc, TermKey key, const GaussianRational& value) {
    if (value.is_zero()) return;
    auto [it, inserted] = acc.try_emplace(std::move(key), value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero()) acc.erase(it);
    }
}

TermMap bracket_terms(const TermMap& a, const TermMap& b, int max_degree) {
    TermMap out;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            if (ka.degree() + kb.degree() - 1 > max_degree) {
                continue;
            }
            // A^{la} d_{la} B^{lb}
            const int eb = kb.exponent[ka.component];
            if (eb > 0) {
                std::vector<int> e(ka.exponent.size());
                for (std::size_t j = 0; j < e.size(); ++j) e[j] = ka.exponent[j] + kb.exponent[j];
                e[ka.component] -= 1;
                accumulate(out, TermKey{std::move(e), kb.component}, ca * cb * GaussianRational(eb));
            }
            // - B^{lb} d_{lb} A^{la}
            const int ea = ka.exponent[kb.component];
            if (ea > 0) {
                std::vector<int> e(ka.exponent.size());
                for (std::size_t j = 0; j < e.size(); ++j) e[j] = ka.exponent[j] + kb.exponent[j];
                e[kb.component] -= 1;
                accumulate(out, TermKey{std::move(e), ka.component}, -(ca * cb * GaussianRational(ea)));
            }
        }
    }
    return out;
}

// exp(ad_Y) X = X + [Y,X] + [Y,[Y,X]]/2 + ..., truncated.
TermMap exp_ad(const TermMap& y, const TermMap& x, int max_degree) {
    TermMap result = x;
    TermMap term = x;
    for (int k = 1; !term.empty(); ++k) {
        term = bracket_terms(y, term, max_degree);
        const GaussianRational inv_k(Rational(1, k));
        for (auto& [key, c] : term) {
            c *= inv_k;
        }
        for (const auto& [key, c] : term) {
            accumulate(result, key, c);
        }
    }
    return result;
}

}  // namespace

// ---------------------------------------------------------------------------

int TermKey::degree() const { return std::accumulate(exponent.begin(), exponent.end(), 0); }

bool operator<(const TermKey& a, const TermKey& b) {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    if (a.exponent != b.exponent) return a.exponent < b.exponent;
    return a.component < b.component;
}

PolyVectorField::PolyVectorField(EigenvalueTuple linear, TermMap terms) : linear_(std::move(linear)) {
    const std::size_t m = linear_.size();
    if (m == 0) {
        throw ArgumentError("vector field dimension must be positive");
    }
    for (auto& [key, c] : terms) {
        if (key.exponent.size() != m || key.component >= m) {
            throw ArgumentError("term index outside the field dimension");
        }
        if (std::any_of(key.exponent.begin(), key.exponent.end(), [](int e) { return e < 0; })) {
            throw ArgumentError("negative exponent in term");
        }
        if (key.degree() < 2) {
            throw ArgumentError("terms must have degree >= 2; the linear part is given by the eigenvalues");
        }
        if (!c.is_zero()) {
            terms_.emplace(key, c);
        }
    }
}

PolyVectorField PolyVectorField::nonlinear(std::size_t dim, TermMap terms) {
    return PolyVectorField(EigenvalueTuple{GaussianVector(dim), false}, std::move(terms));
}

bool PolyVectorField::is_zero() const {
    return terms_.empty() &&
           std::all_of(linear_.gammas.begin(), linear_.gammas.end(), [](const auto& g) { return g.is_zero(); });
}

GaussianRational PolyVectorField::coefficient(const TermKey& key) const {
    const auto it = terms_.find(key);
    return it == terms_.end() ? GaussianRational() : it->second;
}

PolyVectorField PolyVectorField::truncated(int max_degree) const {
    TermMap kept;
    for (const auto& [key, c] : terms_) {
        if (key.degree() <= max_degree) kept.emplace(key, c);
    }
    return PolyVectorField(linear_, std::move(kept));
}

PolyVectorField PolyVectorField::semisimple_part() const { return PolyVectorField(linear_, {}); }

GaussianRational resonance_divisor(const EigenvalueTuple& eigs, const TermKey& key) {
    return weighted_sum(key.exponent, eigs.gammas) - eigs.gammas.at(key.component);
}

PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y, int max_degree) {
    if (x.dim() != y.dim()) {
        throw DimensionError("lie_bracket: dimension mismatch");
    }
    TermMap out = bracket_terms(full_terms(x), full_terms(y), max_degree);
    // Diagonal linear fields commute, so no degree-one terms survive.
    return PolyVectorField::nonlinear(x.dim(), std::move(out));
}

NormalizationResult pd_normalize(const PolyVectorField& x, int max_degree) {
    if (max_degree < 2) {
        throw ArgumentError("pd_normalize: degree must be >= 2");
    }
    const EigenvalueTuple& eigs = x.linear();
    TermMap work = full_terms(x.truncated(max_degree));
    std::vector<EliminationRecord> jets;

    for (int deg = 2; deg <= max_degree; ++deg) {
        // Terms of this degree only change when eliminated: ad_Y raises degree by deg-1 >= 1.
        std::vector<TermKey> keys;
        for (const auto& [key, c] : work) {
            if (key.degree() == deg) keys.push_back(key);
        }
        for (const auto& key : keys) {
            const auto it = work.find(key);
            if (it == work.end()) continue;
            const GaussianRational divisor = resonance_divisor(eigs, key);
            if (divisor.is_zero()) continue;
            const GaussianRational coefficient = it->second;
            const TermMap y{{key, coefficient / divisor}};
            work = exp_ad(y, work, max_degree);
            jets.push_back({key, coefficient, divisor});
        }
    }

    TermMap nonlinear_terms;
    for (auto& [key, c] : work) {
        if (key.degree() >= 2) nonlinear_terms.emplace(key, c);
    }
    return {PolyVectorField(eigs, std::move(nonlinear_terms)), std::move(jets)};
}

bool is_pb_normal(const PolyVectorField& x, int max_degree) {
    return lie_bracket(x, x.semisimple_part(), max_degree).is_zero();
}

ResonanceReport resonance_report(const EigenvalueTuple& eigs, int degree_bound) {
    if (degree_bound < 2) {
        throw ArgumentError("resonance_report: degree bound must be >= 2");
    }
    const std::size_t m = eigs.size();
    if (m == 0) {
        throw ArgumentError("resonance_report: empty eigenvalue tuple");
    }
    ResonanceReport rep;
    rep.degree_bound = degree_bound;
    rep.hamiltonian = eigs.hamiltonian;

    const IntegerLattice kernel = integer_kernel(GaussianMatrix{eigs.gammas}, m);
    rep.kernel_rank = kernel.rank();

    RationalMatrix constraints;
    if (eigs.hamiltonian) {
        rep.relations = kernel.basis();
        rep.stabilized = true;
    } else {
        rep.relations = enumerate_relations(eigs.gammas, degree_bound);
        rep.complete_bound = half_plane_bound(eigs.gammas);
    }
    for (const auto& c : rep.relations) {
        constraints.push_back(to_rational(c));
    }
    rep.resonance_rank = rank(constraints);

    if (!eigs.hamiltonian) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                if (eigs.gammas[j] == eigs.gammas[k]) {
                    RationalVector e(m, Rational(0));
                    e[j] = 1;
                    e[k] = -1;
                    constraints.push_back(std::move(e));
                }
            }
        }
        rep.stabilized = rep.resonance_rank == rep.kernel_rank ||
                         (rep.complete_bound && degree_bound >= *rep.complete_bound);
    }

    rep.q_lattice = integer_kernel(constraints, m);
    rep.toric_degree = rep.q_lattice.rank();
    rep.generators = rep.q_lattice.basis();
    return rep;
}

std::vector<PolyVectorField> torus_generators(const ResonanceReport& report) {
    std::vector<PolyVectorField> out;
    for (const auto& rho : report.generators) {
        GaussianVector weights;
        for (const auto& z : rho) weights.emplace_back(Rational(z));
        out.emplace_back(EigenvalueTuple{std::move(weights), false}, TermMap{});
    }
    return out;
}

}  // namespace nis
