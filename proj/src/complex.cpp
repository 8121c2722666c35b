#include "nis/complex.hpp"

#include "nis/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace nis {

namespace {

// Union-find carrying the parity of each element relative to its root.
class ParityUnionFind {
public:
    explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::pair<std::size_t, int> find(std::size_t x) {
        int p = 0;
        std::size_t r = x;
        while (parent_[r] != r) {
            p ^= parity_[r];
            r = parent_[r];
        }
        // Path compression.
        int acc = p;
        while (parent_[x] != x) {
            const std::size_t next = parent_[x];
            const int step = parity_[x];
            parent_[x] = r;
            parity_[x] = acc;
            acc ^= step;
            x = next;
        }
        return {r, p};
    }

    /// Requires parity(a) ^ parity(b) == rel; returns false on a contradiction.
    bool unite(std::size_t a, std::size_t b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        parent_[ra] = rb;
        parity_[ra] = pa ^ pb ^ rel;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> parity_;
};

}  // namespace

CellComplex::CellComplex(std::vector<std::vector<Boundary>> boundaries, std::vector<std::vector<CellLabel>> labels)
    : boundaries_(std::move(boundaries)), labels_(std::move(labels)) {
    for (std::size_t d = 0; d < boundaries_.size(); ++d) {
        for (std::size_t i = 0; i < boundaries_[d].size(); ++i) {
            const auto& b = boundaries_[d][i];
            if (d == 0 && !b.empty()) throw ArgumentError("0-cells have no boundary");
            for (const auto& inc : b) {
                if (inc.sign != 1 && inc.sign != -1) throw ArgumentError("incidence signs must be +1 or -1");
                if (inc.facet >= boundaries_[d - 1].size()) {
                    throw ArgumentError("cell " + std::to_string(i) + " of dimension " + std::to_string(d) +
                                        " has a facet index out of range");
                }
            }
        }
    }
    if (!labels_.empty()) {
        if (labels_.size() != boundaries_.size()) throw ArgumentError("labels must cover every dimension");
        for (std::size_t d = 0; d < labels_.size(); ++d) {
            if (labels_[d].size() != boundaries_[d].size()) throw ArgumentError("labels must cover every cell");
        }
    }
}

CellComplex CellComplex::from_regular_faces(const std::vector<std::vector<std::vector<std::size_t>>>& facets) {
    std::vector<std::vector<Boundary>> b(facets.size());
    for (std::size_t d = 0; d < facets.size(); ++d) {
        b[d].resize(facets[d].size());
        for (std::size_t i = 0; i < facets[d].size(); ++i) {
            const auto& fs = facets[d][i];
            if (d == 0) {
                if (!fs.empty()) throw ArgumentError("0-cells have no boundary");
                continue;
            }
            for (std::size_t f : fs) {
                if (f >= facets[d - 1].size()) throw ArgumentError("facet index out of range");
            }
            if (std::set<std::size_t>(fs.begin(), fs.end()).size() != fs.size()) {
                throw ArgumentError("a regular cell lists each facet once");
            }
            if (d == 1) {
                if (fs.size() == 2) {
                    b[d][i] = {{fs[0], -1}, {fs[1], 1}};
                } else if (fs.size() == 1) {
                    b[d][i] = {{fs[0], 1}};
                } else if (!fs.empty()) {
                    throw ArgumentError("an edge of a regular complex has at most two vertices");
                }
                continue;
            }
            if (fs.empty()) continue;
            // [A:G] = -[A:F][F:C][G:C] for facets F, G of A sharing the ridge C.
            auto sign_in = [&](std::size_t facet, std::size_t ridge) -> int {
                for (const auto& inc : b[d - 1][facet])
                    if (inc.facet == ridge) return inc.sign;
                return 0;
            };
            std::vector<int> sign(fs.size(), 0);
            sign[0] = 1;
            std::vector<std::size_t> queue{0};
            for (std::size_t q = 0; q < queue.size(); ++q) {
                const std::size_t a = queue[q];
                for (const auto& inc : b[d - 1][fs[a]]) {
                    for (std::size_t g = 0; g < fs.size(); ++g) {
                        if (g == a) continue;
                        const int s = sign_in(fs[g], inc.facet);
                        if (s == 0) continue;
                        const int want = -sign[a] * inc.sign * s;
                        if (sign[g] == 0) {
                            sign[g] = want;
                            queue.push_back(g);
                        } else if (sign[g] != want) {
                            throw ArgumentError("cell " + std::to_string(i) + " of dimension " + std::to_string(d) +
                                                " cannot be oriented consistently");
                        }
                    }
                }
            }
            if (queue.size() != fs.size()) {
                throw ArgumentError("facets of cell " + std::to_string(i) + " of dimension " + std::to_string(d) +
                                    " are not connected through shared ridges");
            }
            for (std::size_t g = 0; g < fs.size(); ++g) b[d][i].push_back({fs[g], sign[g]});
        }
    }
    return CellComplex(std::move(b));
}

std::size_t CellComplex::count(int d) const {
    if (d < 0 || d > dim()) return 0;
    return boundaries_[static_cast<std::size_t>(d)].size();
}

std::vector<std::size_t> CellComplex::coboundary_counts(int d) const {
    std::vector<std::size_t> out(count(d - 1), 0);
    if (d <= 0 || d > dim()) return out;
    for (const auto& b : boundaries_[static_cast<std::size_t>(d)])
        for (const auto& inc : b) ++out[inc.facet];
    return out;
}

bool CellComplex::boundary_squared_zero() const {
    for (std::size_t d = 2; d < boundaries_.size(); ++d) {
        for (const auto& b : boundaries_[d]) {
            std::map<std::size_t, long long> acc;
            for (const auto& inc : b)
                for (const auto& inner : boundaries_[d - 1][inc.facet]) acc[inner.facet] += inc.sign * inner.sign;
            for (const auto& [cell, v] : acc)
                if (v != 0) return false;
        }
    }
    return true;
}

std::vector<std::vector<std::size_t>> CellComplex::closure(int d, std::size_t i) const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(std::max(d, 0)));
    std::set<std::size_t> layer{i};
    for (int k = d; k > 0; --k) {
        std::set<std::size_t> next;
        for (std::size_t c : layer)
            for (const auto& inc : boundary(k, c)) next.insert(inc.facet);
        out[static_cast<std::size_t>(k - 1)].assign(next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

ComplexInvariants complex_invariants(const CellComplex& c) {
    ComplexInvariants inv;
    const int n = c.dim();
    for (int d = 0; d <= n; ++d) {
        inv.census.push_back(c.count(d));
        inv.euler += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(c.count(d));
    }
    if (n <= 0) {
        inv.closed = true;
        inv.orientable = true;
        return inv;
    }
    const auto counts = c.coboundary_counts(n);
    inv.closed = std::all_of(counts.begin(), counts.end(), [](std::size_t k) { return k == 2; });

    std::vector<std::vector<std::pair<std::size_t, int>>> cofaces(c.count(n - 1));
    for (std::size_t a = 0; a < c.count(n); ++a)
        for (const auto& inc : c.boundary(n, a)) cofaces[inc.facet].emplace_back(a, inc.sign);
    ParityUnionFind uf(c.count(n));
    inv.orientable = true;
    for (const auto& cf : cofaces) {
        if (cf.size() > 2) {
            inv.orientable = false;
            break;
        }
        if (cf.size() < 2) continue;
        // Orientations o_A, o_B must satisfy o_A s_A + o_B s_B = 0.
        const int rel = cf[0].second * cf[1].second == 1 ? 1 : 0;
        if (!uf.unite(cf[0].first, cf[1].first, rel)) {
            inv.orientable = false;
            break;
        }
    }
    return inv;
}

DomainComplex domain_from_fan(const Fan& f) {
    if (!validate_fan(f).ok) throw PreconditionError("domain construction needs a valid fan");
    if (f.rays().empty()) throw ArgumentError("domain construction needs a fan with at least one ray");
    const std::size_t n = f.ambient_dim();
    DomainComplex out{f, {}, std::vector<std::size_t>(f.size()), std::vector<std::vector<std::size_t>>(n + 1)};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::size_t d = n - f.cone(i).dim();
        out.cell_of_cone[i] = out.cone_of_cell[d].size();
        out.cone_of_cell[d].push_back(i);
    }
    // Facets of the cell of cone K are the cells of cones with K as a facet.
    std::vector<std::vector<std::vector<std::size_t>>> facets(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        facets[d].resize(out.cone_of_cell[d].size());
        if (d == 0) continue;
        for (std::size_t j = 0; j < out.cone_of_cell[d].size(); ++j) {
            const std::size_t cone = out.cone_of_cell[d][j];
            for (std::size_t parent : out.cone_of_cell[d - 1]) {
                if (f.is_face_of(cone, parent)) facets[d][j].push_back(out.cell_of_cone[parent]);
            }
        }
    }
    out.complex = CellComplex::from_regular_faces(facets);
    return out;
}

std::vector<std::vector<std::uint64_t>> stabilizer_masks(const DomainComplex& d, const FacetLabeling& lab) {
    const CellComplex& c = d.complex;
    const int n = c.dim();
    if (lab.k < 0 || lab.k > 20) throw ArgumentError("reflection count must lie in [0, 20]");
    std::vector<std::vector<std::uint64_t>> mask(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) mask[static_cast<std::size_t>(k)].assign(c.count(k), 0);
    for (std::size_t f = 0; f < c.count(n - 1); ++f) {
        const auto it = lab.label.find(f);
        if (it == lab.label.end()) throw ArgumentError("facet " + std::to_string(f) + " has no label");
        if (it->second < 1 || it->second > lab.k) {
            throw ArgumentError("facet " + std::to_string(f) + " has a label outside 1.." + std::to_string(lab.k));
        }
        const std::uint64_t bit = std::uint64_t{1} << (it->second - 1);
        mask[static_cast<std::size_t>(n - 1)][f] |= bit;
        const auto below = c.closure(n - 1, f);
        for (std::size_t k = 0; k < below.size(); ++k)
            for (std::size_t cell : below[k]) mask[k][cell] |= bit;
    }
    for (const auto& [f, l] : lab.label) {
        if (f >= c.count(n - 1)) throw ArgumentError("label given for a cell that is not a facet");
    }
    return mask;
}

CellComplex glue_reflections(const DomainComplex& d, const FacetLabeling& lab) {
    const auto mask = stabilizer_masks(d, lab);
    const CellComplex& c = d.complex;
    const int n = c.dim();
    const std::uint64_t copies = std::uint64_t{1} << lab.k;

    // Cell (c, a) with a & mask(c) == 0 stands for the orbit of copy a's cell c.
    std::vector<std::map<std::pair<std::size_t, std::uint64_t>, std::size_t>> index(static_cast<std::size_t>(n + 1));
    std::vector<std::vector<CellLabel>> labels(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        for (std::size_t cell = 0; cell < c.count(k); ++cell) {
            for (std::uint64_t a = 0; a < copies; ++a) {
                if (a & mask[ku][cell]) continue;
                index[ku].emplace(std::make_pair(cell, a), labels[ku].size());
                labels[ku].push_back({a, cell});
            }
        }
    }
    std::vector<std::vector<CellComplex::Boundary>> b(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        b[ku].resize(labels[ku].size());
        if (k == 0) continue;
        for (std::size_t g = 0; g < labels[ku].size(); ++g) {
            const auto [a, cell] = labels[ku][g];
            for (const auto& inc : c.boundary(k, cell)) {
                const std::uint64_t rep = a & ~mask[ku - 1][inc.facet];
                b[ku][g].push_back({index[ku - 1].at({inc.facet, rep}), inc.sign});
            }
        }
    }
    return CellComplex(std::move(b), std::move(labels));
}

FacetLabeling proper_polygon_labeling(std::size_t m) {
    if (m < 3) throw ArgumentError("a polygon has at least 3 sides");
    FacetLabeling lab{3, {}};
    for (std::size_t i = 0; i + 1 < m; ++i) lab.label[i] = 1 + static_cast<int>(i % 2);
    lab.label[m - 1] = 3;
    return lab;
}

CellComplex standard_surface(SurfaceKind kind, int genus) {
    if (kind == SurfaceKind::Sphere8) {
        const RationalVector e1{Rational(1), Rational(0)}, e2{Rational(0), Rational(1)}, e3{Rational(-1), Rational(-1)};
        return glue_reflections(domain_from_fan(planar_fan({e1, e2, e3})), FacetLabeling{3, {{0, 1}, {1, 2}, {2, 3}}});
    }
    if (genus < 0) throw ArgumentError("genus must be nonnegative");
    const std::size_t m = static_cast<std::size_t>(genus) + 3;
    return glue_reflections(domain_from_fan(polygon_fan(m)), proper_polygon_labeling(m));
}

}  // namespace nis
