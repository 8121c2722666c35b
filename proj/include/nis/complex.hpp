#pragma once

// Oriented cell complexes, the orbit complex of a hyperbolic domain built
// from its fan, and closed complexes glued from reflected copies of a domain.

#include "nis/fan.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace nis {

struct Incidence {
    std::size_t facet = 0;  // index among cells one dimension lower
    int sign = 1;           // +1 or -1
    friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// Where a glued cell came from: a copy of the domain and a domain cell.
struct CellLabel {
    std::uint64_t copy = 0;
    std::size_t source = 0;
    friend bool operator==(const CellLabel&, const CellLabel&) = default;
};

class CellComplex {
public:
    using Boundary = std::vector<Incidence>;

    CellComplex() = default;
    /// boundaries[d][i] lists the facets of d-cell i. 0-cells must have an
    /// empty boundary. Throws ArgumentError on a dangling facet index or a
    /// sign other than +-1. Labels, when given, must match the cell counts.
    explicit CellComplex(std::vector<std::vector<Boundary>> boundaries,
                         std::vector<std::vector<CellLabel>> labels = {});

    /// Orients a regular complex given only its facet lists: edges get -1 on
    /// their first vertex and +1 on the second, higher cells are oriented by
    /// propagation across diamonds. Throws ArgumentError when the facet lists
    /// are not those of a regular complex.
    static CellComplex from_regular_faces(const std::vector<std::vector<std::vector<std::size_t>>>& facets);

    /// Top dimension, or -1 for the empty complex.
    int dim() const { return static_cast<int>(boundaries_.size()) - 1; }
    std::size_t count(int d) const;
    const Boundary& boundary(int d, std::size_t i) const { return boundaries_.at(static_cast<std::size_t>(d)).at(i); }
    const std::vector<std::vector<Boundary>>& boundaries() const { return boundaries_; }
    const std::vector<std::vector<CellLabel>>& labels() const { return labels_; }

    /// Number of times (d-1)-cell f occurs in boundaries of d-cells.
    std::vector<std::size_t> coboundary_counts(int d) const;
    /// True when boundary of boundary vanishes for every cell.
    bool boundary_squared_zero() const;
    /// Cells of dimension below d contained in d-cell i, per dimension.
    std::vector<std::vector<std::size_t>> closure(int d, std::size_t i) const;

private:
    std::vector<std::vector<Boundary>> boundaries_;
    std::vector<std::vector<CellLabel>> labels_;
};

struct ComplexInvariants {
    long long euler = 0;
    bool orientable = false;
    std::vector<std::size_t> census;  // cells per dimension
    bool closed = false;
};

/// Closed: every (n-1)-cell occurs exactly twice in boundaries of n-cells.
/// Orientable: the n-cells admit signs making every such pair cancel.
ComplexInvariants complex_invariants(const CellComplex& c);

struct DomainComplex {
    Fan fan;
    CellComplex complex;
    /// cell_of_cone[i] = index of the cell of cone i in dimension n - dim(cone i).
    std::vector<std::size_t> cell_of_cone;
    /// cone_of_cell[d][j] = cone of d-cell j.
    std::vector<std::vector<std::size_t>> cone_of_cell;

    /// The facet (n-1)-cell of the ray with cone index `ray`.
    std::size_t facet_of_ray(std::size_t ray) const { return cell_of_cone.at(ray); }
};

/// One cell per cone, with dim(cell) = n - dim(cone) and incidence reversed
/// from the face relation. Cells in each dimension follow cone index order.
/// Throws PreconditionError when the fan does not validate and ArgumentError
/// when it has no rays.
DomainComplex domain_from_fan(const Fan& f);

struct FacetLabeling {
    int k = 0;                       // labels run over 1..k
    std::map<std::size_t, int> label;  // (n-1)-cell index -> label
};

/// Glues 2^k copies of the domain, copies indexed by bit vectors, copy a
/// meeting copy a ^ (1 << (i-1)) along every facet labeled i. Throws
/// ArgumentError on an unlabeled facet, a label outside 1..k or k > 20.
CellComplex glue_reflections(const DomainComplex& d, const FacetLabeling& lab);

/// The reflection subgroup fixing each domain cell: bit i-1 is set when some
/// facet labeled i contains the cell. Indexed [dimension][cell].
std::vector<std::vector<std::uint64_t>> stabilizer_masks(const DomainComplex& d, const FacetLabeling& lab);

/// Labels 1, 2, 1, 2, ..., with 3 on the last facet, of an m-gon (m >= 3);
/// adjacent facets always differ.
FacetLabeling proper_polygon_labeling(std::size_t m);

enum class SurfaceKind { Sphere8, OrientableGenus };

/// Sphere8: the trigone glued with labels (1, 2, 3). OrientableGenus(g): the
/// (g+3)-gon glued with proper_polygon_labeling. Throws ArgumentError for g < 0.
CellComplex standard_surface(SurfaceKind kind, int genus = 0);

}  // namespace nis
