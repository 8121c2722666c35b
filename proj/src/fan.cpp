#include "nis/fan.hpp"

#include "nis/errors.hpp"
#include "nis/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace nis {

namespace {

using DirectionSet = std::vector<IntegerVector>;  // sorted

DirectionSet direction_set(const SimplicialCone& c) {
    DirectionSet s = c.ray_directions();
    std::sort(s.begin(), s.end());
    return s;
}

RationalVector combination(const std::vector<RationalVector>& gens, const RationalVector& coeffs, std::size_t n) {
    RationalVector w(n, Rational(0));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t k = 0; k < n; ++k) w[k] += coeffs[i] * gens[i][k];
    return w;
}

// A point in the relative interiors of both cones, if any. With t, s >= 1
// (the system is homogeneous) and t = 1 + t', s = 1 + s':
// G t' - H s' = H 1 - G 1, t', s' >= 0.
std::optional<RationalVector> common_interior_point(const SimplicialCone& a, const SimplicialCone& b) {
    const std::size_t n = a.ambient_dim();
    const auto& g = a.generators();
    const auto& h = b.generators();
    const std::size_t p = g.size();
    const std::size_t q = h.size();
    RationalMatrix m(n, RationalVector(p + q, Rational(0)));
    RationalVector rhs(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < p; ++i) {
            m[k][i] = g[i][k];
            rhs[k] -= g[i][k];
        }
        for (std::size_t j = 0; j < q; ++j) {
            m[k][p + j] = -h[j][k];
            rhs[k] += h[j][k];
        }
    }
    const auto x = find_nonnegative_solution(m, rhs, p + q);
    if (!x) return std::nullopt;
    RationalVector t(p);
    for (std::size_t i = 0; i < p; ++i) t[i] = (*x)[i] + 1;
    return combination(g, t, n);
}

void check_length(std::size_t expected, const RationalVector& w) {
    if (w.size() != expected) {
        throw DimensionError("vector has length " + std::to_string(w.size()) + ", expected " +
                             std::to_string(expected));
    }
}

}  // namespace

SimplicialCone::SimplicialCone(std::size_t ambient_dim, std::vector<RationalVector> generators)
    : ambient_dim_(ambient_dim), generators_(std::move(generators)) {
    if (ambient_dim_ == 0) throw ArgumentError("cone ambient dimension must be positive");
    for (const auto& g : generators_) check_length(ambient_dim_, g);
    if (rank(generators_) != generators_.size()) {
        throw ArgumentError("cone generators are linearly dependent");
    }
    directions_.reserve(generators_.size());
    for (const auto& g : generators_) directions_.push_back(primitive_vector(g));
}

ConeLocation cone_locate(const SimplicialCone& c, const RationalVector& w) {
    check_length(c.ambient_dim(), w);
    if (c.dim() == 0) {
        if (is_zero(w)) return {ConeLocation::Kind::Face, {}};
        return {};
    }
    const auto t = express_in(c.generators(), w);
    if (!t) return {};
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < t->size(); ++i) {
        if ((*t)[i] < 0) return {};
        if ((*t)[i] > 0) positive.push_back(i);
    }
    if (positive.size() == c.dim()) return {ConeLocation::Kind::Interior, {}};
    return {ConeLocation::Kind::Face, positive};
}

bool in_relative_interior(const SimplicialCone& c, const RationalVector& w) {
    if (c.dim() == 0) {
        check_length(c.ambient_dim(), w);
        return is_zero(w);
    }
    return cone_locate(c, w).kind == ConeLocation::Kind::Interior;
}

Fan::Fan(std::size_t ambient_dim, std::vector<SimplicialCone> cones, std::map<std::size_t, RationalVector> marks)
    : ambient_dim_(ambient_dim), cones_(std::move(cones)), marks_(std::move(marks)) {
    if (ambient_dim_ == 0) throw ArgumentError("fan ambient dimension must be positive");
    for (const auto& c : cones_) {
        if (c.ambient_dim() != ambient_dim_) throw DimensionError("cone ambient dimension differs from the fan's");
    }
    for (const auto& [i, v] : marks_) check_length(ambient_dim_, v);
}

Fan Fan::with_default_marks(std::size_t ambient_dim, std::vector<SimplicialCone> cones,
                            std::map<std::size_t, RationalVector> marks) {
    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (cones[i].dim() == 1 && !marks.count(i)) marks.emplace(i, cones[i].generators()[0]);
    }
    return Fan(ambient_dim, std::move(cones), std::move(marks));
}

std::vector<std::size_t> Fan::rays() const { return cones_of_dim(1); }

std::vector<std::size_t> Fan::cones_of_dim(std::size_t d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].dim() == d) out.push_back(i);
    return out;
}

bool Fan::is_face_of(std::size_t child, std::size_t parent) const {
    const auto& c = cones_.at(child).ray_directions();
    const auto& p = cones_.at(parent).ray_directions();
    return std::all_of(c.begin(), c.end(), [&](const IntegerVector& d) {
        return std::find(p.begin(), p.end(), d) != p.end();
    });
}

std::vector<std::pair<std::size_t, std::size_t>> Fan::face_relation() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t c = 0; c < cones_.size(); ++c)
        for (std::size_t p = 0; p < cones_.size(); ++p)
            if (c != p && cones_[c].dim() < cones_[p].dim() && is_face_of(c, p)) out.emplace_back(c, p);
    return out;
}

FanValidationReport validate_fan(const Fan& f) {
    FanValidationReport report;
    const auto& cones = f.cones();
    const std::size_t n = f.ambient_dim();

    for (std::size_t i = 0; i < cones.size(); ++i) {
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            if (auto w = common_interior_point(cones[i], cones[j])) {
                report.violations.push_back({"disjointness", {i, j}, std::move(*w)});
            }
        }
    }

    std::set<DirectionSet> stored;
    for (const auto& c : cones) stored.insert(direction_set(c));
    std::set<DirectionSet> reported;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        const auto& c = cones[i];
        const std::size_t k = c.dim();
        for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << k); ++mask) {
            DirectionSet face;
            RationalVector witness(n, Rational(0));
            for (std::size_t g = 0; g < k; ++g) {
                if (mask & (std::size_t{1} << g)) {
                    face.push_back(c.ray_directions()[g]);
                    for (std::size_t x = 0; x < n; ++x) witness[x] += c.generators()[g][x];
                }
            }
            std::sort(face.begin(), face.end());
            if (!stored.count(face) && reported.insert(face).second) {
                report.violations.push_back({"face-closure", {i}, std::move(witness)});
            }
        }
    }

    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (cones[i].dim() == 1 && !f.marks().count(i)) {
            report.violations.push_back({"ray-mark", {i}, cones[i].generators()[0]});
        }
    }
    for (const auto& [i, v] : f.marks()) {
        if (i >= cones.size() || cones[i].dim() != 1) {
            report.violations.push_back({"ray-mark", {i}, v});
        } else if (is_zero(v) || primitive_vector(v) != cones[i].ray_directions()[0]) {
            report.violations.push_back({"mark-on-ray", {i}, v});
        }
    }

    report.ok = report.violations.empty();
    return report;
}

bool is_complete(const Fan& f) {
    if (!validate_fan(f).ok) throw PreconditionError("completeness is only defined for a valid fan");
    const std::size_t n = f.ambient_dim();
    const auto top = f.cones_of_dim(n);
    if (top.empty()) return false;
    for (std::size_t ridge : f.cones_of_dim(n - 1)) {
        std::size_t count = 0;
        for (std::size_t t : top) count += f.is_face_of(ridge, t);
        if (count != 2) return false;
    }
    // Dual graph: n-cones adjacent through a shared (n-1)-face.
    std::vector<bool> seen(top.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t a = stack.back();
        stack.pop_back();
        const auto& da = f.cone(top[a]).ray_directions();
        for (std::size_t b = 0; b < top.size(); ++b) {
            if (seen[b]) continue;
            const auto& db = f.cone(top[b]).ray_directions();
            std::size_t shared = 0;
            for (const auto& d : da) shared += std::find(db.begin(), db.end(), d) != db.end();
            if (shared + 1 == n) {
                seen[b] = true;
                ++reached;
                stack.push_back(b);
            }
        }
    }
    return reached == top.size();
}

FanLocator::FanLocator(const Fan& f) : fan_(&f) {
    if (!is_complete(f)) throw PreconditionError("point location needs a complete fan");
}

std::size_t FanLocator::locate(const RationalVector& w) const {
    check_length(fan_->ambient_dim(), w);
    for (std::size_t i = 0; i < fan_->size(); ++i) {
        if (in_relative_interior(fan_->cone(i), w)) return i;
    }
    throw PreconditionError("point not covered by the fan");
}

std::size_t fan_locate(const Fan& f, const RationalVector& w) { return FanLocator(f).locate(w); }

Fan planar_fan(const std::vector<RationalVector>& rays) {
    const std::size_t m = rays.size();
    if (m < 3) throw ArgumentError("a complete planar fan needs at least 3 rays");
    for (const auto& r : rays) check_length(2, r);
    std::vector<SimplicialCone> cones;
    cones.emplace_back(2, std::vector<RationalVector>{});
    for (const auto& r : rays) cones.emplace_back(2, std::vector<RationalVector>{r});
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = rays[i];
        const auto& b = rays[(i + 1) % m];
        if (a[0] * b[1] - a[1] * b[0] <= 0) {
            throw ArgumentError("rays " + std::to_string(i) + " and " + std::to_string((i + 1) % m) +
                                " do not turn counterclockwise by less than half a turn");
        }
        cones.emplace_back(2, std::vector<RationalVector>{a, b});
    }
    return Fan::with_default_marks(2, std::move(cones));
}

Fan quadrant_fan() {
    return planar_fan({{Rational(1), Rational(0)},
                       {Rational(0), Rational(1)},
                       {Rational(-1), Rational(0)},
                       {Rational(0), Rational(-1)}});
}

Fan polygon_fan(std::size_t m) {
    if (m < 3) throw ArgumentError("polygon fan needs at least 3 rays");
    constexpr long scale = 1000000;
    std::vector<RationalVector> rays;
    for (std::size_t k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        rays.push_back({Rational(std::lround(std::cos(theta) * scale), scale),
                        Rational(std::lround(std::sin(theta) * scale), scale)});
    }
    return planar_fan(rays);
}

Fan orthant_fan(std::size_t n) {
    if (n == 0) throw ArgumentError("orthant fan needs a positive dimension");
    std::vector<SimplicialCone> cones;
    // Each coordinate is absent, +e_i or -e_i.
    std::vector<int> digit(n, 0);
    while (true) {
        std::vector<RationalVector> gens;
        for (std::size_t i = 0; i < n; ++i) {
            if (digit[i] == 0) continue;
            RationalVector e(n, Rational(0));
            e[i] = digit[i] == 1 ? 1 : -1;
            gens.push_back(std::move(e));
        }
        cones.emplace_back(n, std::move(gens));
        std::size_t i = 0;
        while (i < n && digit[i] == 2) digit[i++] = 0;
        if (i == n) break;
        ++digit[i];
    }
    // Sort by dimension so the origin comes first and rays precede 2-cones.
    std::stable_sort(cones.begin(), cones.end(),
                     [](const SimplicialCone& a, const SimplicialCone& b) { return a.dim() < b.dim(); });
    return Fan::with_default_marks(n, std::move(cones));
}

}  // namespace nis
