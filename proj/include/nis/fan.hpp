#pragma once

// Simplicial cones and fans over rational vectors.

#include "nis/arith.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nis {

class SimplicialCone {
public:
    /// Throws DimensionError when a generator has the wrong length and
    /// ArgumentError when the generators are linearly dependent.
    SimplicialCone(std::size_t ambient_dim, std::vector<RationalVector> generators);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return generators_.size(); }
    const std::vector<RationalVector>& generators() const { return generators_; }
    /// Primitive integer direction of each generator, in generator order.
    const std::vector<IntegerVector>& ray_directions() const { return directions_; }

private:
    std::size_t ambient_dim_;
    std::vector<RationalVector> generators_;
    std::vector<IntegerVector> directions_;
};

struct ConeLocation {
    enum class Kind { Interior, Face, Outside };
    Kind kind = Kind::Outside;
    std::vector<std::size_t> face;  // generator indices with positive coefficient, for Face
    friend bool operator==(const ConeLocation&, const ConeLocation&) = default;
};

/// Throws DimensionError when w has the wrong length.
ConeLocation cone_locate(const SimplicialCone& c, const RationalVector& w);
/// w lies in the relatively open cone (for the zero cone: w = 0).
bool in_relative_interior(const SimplicialCone& c, const RationalVector& w);

class Fan {
public:
    /// Marks are stored exactly as given, keyed by cone index; validate_fan
    /// reports missing or misplaced marks. Throws DimensionError on cones of
    /// the wrong ambient dimension.
    Fan(std::size_t ambient_dim, std::vector<SimplicialCone> cones, std::map<std::size_t, RationalVector> marks = {});
    /// Fills in the generator as the mark of every 1-dimensional cone without one.
    static Fan with_default_marks(std::size_t ambient_dim, std::vector<SimplicialCone> cones,
                                  std::map<std::size_t, RationalVector> marks = {});

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t size() const { return cones_.size(); }
    const std::vector<SimplicialCone>& cones() const { return cones_; }
    const SimplicialCone& cone(std::size_t i) const { return cones_.at(i); }
    const std::map<std::size_t, RationalVector>& marks() const { return marks_; }
    /// Indices of the 1-dimensional cones.
    std::vector<std::size_t> rays() const;
    std::vector<std::size_t> cones_of_dim(std::size_t d) const;
    /// Pairs (child, parent), child != parent, with child a face of parent.
    std::vector<std::pair<std::size_t, std::size_t>> face_relation() const;
    bool is_face_of(std::size_t child, std::size_t parent) const;

private:
    std::size_t ambient_dim_;
    std::vector<SimplicialCone> cones_;
    std::map<std::size_t, RationalVector> marks_;
};

struct FanViolation {
    std::string rule;  // disjointness, face-closure, ray-mark, mark-on-ray
    std::vector<std::size_t> cones;
    RationalVector witness;
};

struct FanValidationReport {
    bool ok = true;
    std::vector<FanViolation> violations;
};

FanValidationReport validate_fan(const Fan& f);

/// Throws PreconditionError if the fan does not validate.
bool is_complete(const Fan& f);

/// Index of the cone whose relative interior holds w. Throws PreconditionError
/// if the fan is not complete, DimensionError on a length mismatch.
std::size_t fan_locate(const Fan& f, const RationalVector& w);

/// Checks completeness once, then answers fan_locate queries.
class FanLocator {
public:
    explicit FanLocator(const Fan& f);
    std::size_t locate(const RationalVector& w) const;

private:
    const Fan* fan_;
};

/// Origin, 4 rays (e1, e2, -e1, -e2 in that order) and the 4 quadrants.
Fan quadrant_fan();
/// Fan of R^2: origin (index 0), rays 1..m in the given order, then 2-cone
/// m+i spanning rays i and i+1 (cyclically). Complete when the rays go once
/// counterclockwise around the origin. Throws ArgumentError for fewer than 3
/// rays or a consecutive pair that is not a strict counterclockwise turn.
Fan planar_fan(const std::vector<RationalVector>& rays);
/// planar_fan over m rays spread evenly around the circle (rounded to 1e-6).
Fan polygon_fan(std::size_t m);
/// Complete fan of R^n by the 2^n coordinate orthants and their faces.
Fan orthant_fan(std::size_t n);

}  // namespace nis
