#include "doctest.h"

#include "nis/errors.hpp"
#include "nis/fan.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace nis;
using testsupport::rv;
using Kind = ConeLocation::Kind;

namespace {

Rational cross(const RationalVector& a, const RationalVector& b) { return a[0] * b[1] - a[1] * b[0]; }

// Independent planar oracle: which cone of a planar_fan holds w, using only
// cross and dot products against the ray list.
std::size_t planar_oracle(const std::vector<RationalVector>& rays, const RationalVector& w) {
    if (is_zero(w)) return 0;
    const std::size_t m = rays.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (cross(rays[i], w) == 0 && dot(rays[i], w) > 0) return 1 + i;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (cross(rays[i], w) > 0 && cross(w, rays[(i + 1) % m]) > 0) return 1 + m + i;
    }
    return static_cast<std::size_t>(-1);
}

std::vector<RationalVector> random_rays(std::mt19937& rng) {
    // Random rational directions sorted by angle; retried until every gap is
    // below half a turn.
    std::uniform_int_distribution<int> coord(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> count(3, 8);
    while (true) {
        std::vector<RationalVector> rays;
        const int m = count(rng);
        while (static_cast<int>(rays.size()) < m) {
            RationalVector r{Rational(coord(rng), den(rng)), Rational(coord(rng))};
            if (is_zero(r)) continue;
            const auto p = primitive_vector(r);
            bool dup = false;
            for (const auto& s : rays) dup |= primitive_vector(s) == p;
            if (!dup) rays.push_back(r);
        }
        std::sort(rays.begin(), rays.end(), [](const RationalVector& a, const RationalVector& b) {
            return std::atan2(a[1].convert_to<double>(), a[0].convert_to<double>()) <
                   std::atan2(b[1].convert_to<double>(), b[0].convert_to<double>());
        });
        bool ok = true;
        for (std::size_t i = 0; i < rays.size(); ++i) ok &= cross(rays[i], rays[(i + 1) % rays.size()]) > 0;
        if (ok) return rays;
    }
}

// Complete fan of R^3 over the rays e1, e2, e3, -(e1+e2+e3): every proper
// subset of the four rays spans a cone.
Fan tetra_fan() {
    const std::vector<RationalVector> r{rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1}), rv({-1, -1, -1})};
    std::vector<SimplicialCone> cones;
    for (unsigned mask = 0; mask < 15; ++mask) {
        std::vector<RationalVector> g;
        for (unsigned i = 0; i < 4; ++i)
            if (mask & (1u << i)) g.push_back(r[i]);
        cones.emplace_back(3, g);
    }
    return Fan::with_default_marks(3, cones);
}

RationalVector random_point(std::mt19937& rng, std::size_t n) {
    RationalVector w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(testsupport::small_rational(rng, 4, 3));
    return w;
}

Fan permuted_and_scaled(const Fan& f, std::mt19937& rng) {
    std::vector<std::size_t> order(f.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> factor(1, 7);
    std::vector<SimplicialCone> cones;
    std::map<std::size_t, RationalVector> marks;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& c = f.cone(order[k]);
        std::vector<RationalVector> gens;
        for (auto g : c.generators()) {
            const Rational s(factor(rng), factor(rng));
            for (auto& x : g) x *= s;
            gens.push_back(g);
        }
        cones.emplace_back(f.ambient_dim(), gens);
        if (auto it = f.marks().find(order[k]); it != f.marks().end()) {
            RationalVector v = it->second;
            const Rational s(factor(rng), factor(rng));
            for (auto& x : v) x *= s;
            marks.emplace(k, v);
        }
    }
    return Fan(f.ambient_dim(), cones, marks);
}

}  // namespace

TEST_CASE("cone_locate") {
    const SimplicialCone origin(2, {});
    CHECK(cone_locate(origin, rv({0, 0})) == ConeLocation{Kind::Face, {}});
    CHECK(cone_locate(origin, rv({1, 0})).kind == Kind::Outside);
    CHECK(in_relative_interior(origin, rv({0, 0})));

    const SimplicialCone quadrant(2, {rv({1, 0}), rv({0, 1})});
    CHECK(cone_locate(quadrant, rv({1, 1})).kind == Kind::Interior);
    CHECK(cone_locate(quadrant, rv({0, 3})) == ConeLocation{Kind::Face, {1}});
    CHECK(cone_locate(quadrant, rv({0, 0})) == ConeLocation{Kind::Face, {}});

    const SimplicialCone skew(2, {rv({1, 0}), rv({1, 1})});
    // (2,1) = 1*(1,0) + 1*(1,1); (0,1) = -1*(1,0) + 1*(1,1).
    CHECK(cone_locate(skew, rv({2, 1})).kind == Kind::Interior);
    CHECK(cone_locate(skew, rv({0, 1})).kind == Kind::Outside);

    const SimplicialCone ray3(3, {rv({1, 1, 0})});
    CHECK(cone_locate(ray3, rv({2, 2, 0})).kind == Kind::Interior);
    CHECK(cone_locate(ray3, rv({2, 2, 1})).kind == Kind::Outside);

    CHECK_THROWS_AS(cone_locate(quadrant, rv({1, 1, 1})), DimensionError);
    CHECK_THROWS_AS(SimplicialCone(2, {rv({1, 0}), rv({2, 0})}), ArgumentError);
    CHECK_THROWS_AS(SimplicialCone(2, {rv({1, 0, 0})}), DimensionError);
}

TEST_CASE("validate_fan") {
    SUBCASE("quadrant fan") {
        const Fan f = quadrant_fan();
        CHECK(f.size() == 9);
        CHECK(validate_fan(f).ok);
        CHECK(f.rays().size() == 4);
        // origin below 8 cones, 2 rays below each quadrant
        CHECK(f.face_relation().size() == 8 + 4 * 2);
    }
    SUBCASE("mark placed on the wrong ray") {
        const Fan q = quadrant_fan();
        auto marks = q.marks();
        marks[1] = rv({-1, 0});  // ray 1 is R+ (1,0)
        const auto report = validate_fan(Fan(2, q.cones(), marks));
        CHECK_FALSE(report.ok);
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].rule == "mark-on-ray");
        CHECK(report.violations[0].cones == std::vector<std::size_t>{1});
    }
    SUBCASE("missing mark and mark on a 2-cone") {
        const Fan q = quadrant_fan();
        auto marks = q.marks();
        marks.erase(2);
        marks[5] = rv({1, 1});
        const auto report = validate_fan(Fan(2, q.cones(), marks));
        REQUIRE(report.violations.size() == 2);
        CHECK(report.violations[0].rule == "ray-mark");
        CHECK(report.violations[1].rule == "ray-mark");
    }
    SUBCASE("overlapping 2-cones") {
        std::vector<SimplicialCone> cones{SimplicialCone(2, {}),
                                          SimplicialCone(2, {rv({1, 0})}),
                                          SimplicialCone(2, {rv({0, 1})}),
                                          SimplicialCone(2, {rv({1, -1})}),
                                          SimplicialCone(2, {rv({1, 0}), rv({0, 1})}),
                                          SimplicialCone(2, {rv({1, -1}), rv({0, 1})})};
        const auto report = validate_fan(Fan::with_default_marks(2, cones));
        CHECK_FALSE(report.ok);
        std::size_t hits = 0;
        for (const auto& v : report.violations) {
            if (v.rule != "disjointness") continue;
            ++hits;
            // The witness lies in both relative interiors.
            CHECK(in_relative_interior(cones[v.cones[0]], v.witness));
            CHECK(in_relative_interior(cones[v.cones[1]], v.witness));
        }
        // Ray (1,0) sits inside the second 2-cone, and the two 2-cones overlap.
        CHECK(hits == 2);
        CHECK(in_relative_interior(cones[4], rv({1, 1})));
        CHECK(in_relative_interior(cones[5], rv({1, 1})));
    }
    SUBCASE("missing face") {
        std::vector<SimplicialCone> cones{SimplicialCone(2, {}), SimplicialCone(2, {rv({1, 0})}),
                                          SimplicialCone(2, {rv({1, 0}), rv({0, 1})})};
        const auto report = validate_fan(Fan::with_default_marks(2, cones));
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].rule == "face-closure");
        CHECK(report.violations[0].witness == rv({0, 1}));
    }
    SUBCASE("duplicate cone overlaps itself") {
        std::vector<SimplicialCone> cones{SimplicialCone(1, {}), SimplicialCone(1, {rv({1})}),
                                          SimplicialCone(1, {rv({2})})};
        const auto report = validate_fan(Fan::with_default_marks(1, cones));
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].rule == "disjointness");
    }
}

TEST_CASE("is_complete") {
    CHECK(is_complete(quadrant_fan()));
    CHECK(is_complete(planar_fan({rv({1, 0}), rv({0, 1}), rv({-1, -1})})));
    CHECK(is_complete(orthant_fan(1)));
    CHECK(is_complete(orthant_fan(3)));
    CHECK(orthant_fan(3).size() == 27);
    CHECK(is_complete(tetra_fan()));
    CHECK(is_complete(polygon_fan(7)));

    std::vector<SimplicialCone> single{SimplicialCone(2, {}), SimplicialCone(2, {rv({1, 0})}),
                                       SimplicialCone(2, {rv({0, 1})}),
                                       SimplicialCone(2, {rv({1, 0}), rv({0, 1})})};
    CHECK_FALSE(is_complete(Fan::with_default_marks(2, single)));

    // Drop one 3-cone from the tetrahedral fan.
    const Fan t = tetra_fan();
    std::vector<SimplicialCone> cones = t.cones();
    cones.pop_back();
    CHECK_FALSE(is_complete(Fan::with_default_marks(3, cones)));

    // Origin only.
    CHECK_FALSE(is_complete(Fan(2, {SimplicialCone(2, {})})));

    auto marks = quadrant_fan().marks();
    marks[1] = rv({-1, 0});
    CHECK_THROWS_AS(is_complete(Fan(2, quadrant_fan().cones(), marks)), PreconditionError);
}

TEST_CASE("fan_locate") {
    const Fan q = quadrant_fan();
    CHECK(fan_locate(q, rv({3, -2})) == 8);
    CHECK(q.cone(8).generators() == std::vector<RationalVector>{rv({0, -1}), rv({1, 0})});
    CHECK(fan_locate(q, rv({0, 0})) == 0);
    CHECK(fan_locate(q, rv({0, 5})) == 2);

    const Fan three = planar_fan({rv({1, 0}), rv({0, 1}), rv({-1, -1})});
    const auto i = fan_locate(three, rv({-1, 0}));
    CHECK(three.cone(i).generators() == std::vector<RationalVector>{rv({0, 1}), rv({-1, -1})});

    std::vector<SimplicialCone> single{SimplicialCone(2, {}), SimplicialCone(2, {rv({1, 0})}),
                                       SimplicialCone(2, {rv({0, 1})}),
                                       SimplicialCone(2, {rv({1, 0}), rv({0, 1})})};
    CHECK_THROWS_AS(fan_locate(Fan::with_default_marks(2, single), rv({1, 1})), PreconditionError);
    CHECK_THROWS_AS(fan_locate(q, rv({1, 1, 1})), DimensionError);
}

TEST_CASE("planar fans: unique location agrees with the angular oracle") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const auto rays = random_rays(rng);
        const Fan f = planar_fan(rays);
        REQUIRE(validate_fan(f).ok);
        REQUIRE(is_complete(f));
        CHECK(f.rays().size() == f.cones_of_dim(2).size());
        const FanLocator locator(f);
        for (int k = 0; k < 30; ++k) {
            RationalVector w = k % 5 == 0 ? rays[static_cast<std::size_t>(k) % rays.size()] : random_point(rng, 2);
            if (k % 5 == 0) w = {w[0] * 3, w[1] * 3};
            std::size_t holders = 0;
            for (const auto& c : f.cones()) holders += in_relative_interior(c, w);
            CHECK(holders == 1);
            CHECK(locator.locate(w) == planar_oracle(rays, w));
        }
    }
}

TEST_CASE("three-dimensional fans: every point lies in exactly one cone") {
    std::mt19937 rng(3);
    for (const Fan& f : {orthant_fan(3), tetra_fan()}) {
        for (int k = 0; k < 60; ++k) {
            RationalVector w = random_point(rng, 3);
            if (k % 4 == 0) w[k % 3] = 0;
            std::size_t holders = 0;
            for (const auto& c : f.cones()) holders += in_relative_interior(c, w);
            CHECK(holders == 1);
        }
    }
}

TEST_CASE("validation and completeness are stable under permutation and rescaling") {
    std::mt19937 rng(11);
    const Fan bad_marks = [] {
        auto marks = quadrant_fan().marks();
        marks[3] = rv({0, 1});
        return Fan(2, quadrant_fan().cones(), marks);
    }();
    std::vector<SimplicialCone> single{SimplicialCone(2, {}), SimplicialCone(2, {rv({1, 0})}),
                                       SimplicialCone(2, {rv({0, 1})}),
                                       SimplicialCone(2, {rv({1, 0}), rv({0, 1})})};
    const std::vector<Fan> fans{quadrant_fan(), tetra_fan(), polygon_fan(5), orthant_fan(2), bad_marks,
                                Fan::with_default_marks(2, single)};
    for (const Fan& f : fans) {
        const bool ok = validate_fan(f).ok;
        const bool complete = ok && is_complete(f);
        for (int trial = 0; trial < 4; ++trial) {
            const Fan g = permuted_and_scaled(f, rng);
            const auto report = validate_fan(g);
            CHECK(report.ok == ok);
            CHECK(report.violations.size() == validate_fan(f).violations.size());
            if (ok) CHECK(is_complete(g) == complete);
        }
    }
}

TEST_CASE("planar_fan rejects bad ray sequences") {
    CHECK_THROWS_AS(planar_fan({rv({1, 0}), rv({0, 1})}), ArgumentError);
    CHECK_THROWS_AS(planar_fan({rv({1, 0}), rv({-1, -1}), rv({0, 1})}), ArgumentError);
    CHECK_THROWS_AS(polygon_fan(2), ArgumentError);
}
