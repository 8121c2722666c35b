#pragma once

// Classification data for actions of toric degree n-1 (marked graphs), the
// monodromy invariant and its torsion/free split, and feasibility of planar
// arrangements of hyperbolic domains.

#include "nis/arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nis {

struct Mark {
    enum class Kind { Single, Couple };
    Kind kind = Kind::Single;
    RationalVector v;
    IntegerVector w;  // Couple only; defined up to sign

    static Mark single(RationalVector v) { return {Kind::Single, std::move(v), {}}; }
    static Mark couple(RationalVector v, IntegerVector w) { return {Kind::Couple, std::move(v), std::move(w)}; }
};

struct MarkedGraph {
    enum class Topology { Circle, Interval };
    Topology topology = Topology::Circle;
    std::vector<Mark> vertices;  // in cyclic or linear order
    std::size_t ambient_dim = 0;
};

struct GraphViolation {
    std::string condition;  // C_i, C_ii, C_iii, C_iv
    std::optional<std::size_t> vertex;
    std::string message;
};

struct GraphReport {
    bool ok = true;
    std::vector<GraphViolation> violations;
};

/// Checks C_i..C_iv against the isotropy lattice z. Never throws for
/// well-formed data; vectors of the wrong length are reported under C_ii.
GraphReport validate_marked_graph(const MarkedGraph& g, const IntegerLattice& z);

struct Classification {
    char case_letter = 'a';
    std::optional<std::string> manifold;  // for n = 2, n = 3 (cases a, d) and case a in general
    /// Case d with n = 3: p = |det(w1, w2)| in a basis of z (0 for S^2 x S^1)
    /// and q, the class of w2 modulo w1, normalized under q -> -q and q -> q^-1.
    std::optional<Integer> lens_p;
    std::optional<Integer> lens_q;
};

/// Throws PreconditionError when the graph does not validate.
Classification classify_case(const MarkedGraph& g, const IntegerLattice& z);

/// Element of R^n / Z.
struct MonodromyElement {
    RationalVector representative;
    IntegerLattice modulus;

    bool equivalent(const RationalVector& other) const;
};

/// Z^g modulo the row space of relation_matrix, with its Smith form U A V = D.
class AbelianPresentation {
public:
    /// relations: rows over `generators` columns.
    AbelianPresentation(IntegerMatrix relations, std::size_t generators);

    const IntegerMatrix& relation_matrix() const { return relations_; }
    std::size_t generator_count() const { return generators_; }
    const SmithDecomposition& smith() const { return smith_; }
    /// Diagonal entry i of D, 0 past the last relation.
    Integer invariant_factor(std::size_t i) const;
    /// Orders > 1 of the torsion summands, in Smith order.
    std::vector<Integer> torsion_orders() const;
    std::size_t free_rank() const;

private:
    IntegerMatrix relations_;
    std::size_t generators_;
    SmithDecomposition smith_;
};

struct MonodromyPart {
    std::size_t index = 0;  // Smith generator index
    Integer order{0};       // invariant factor (0 for free generators)
    RationalVector value;
};

struct MonodromyDecomposition {
    std::vector<MonodromyPart> torsion;  // invariant factor > 1
    std::vector<MonodromyPart> free;     // invariant factor 0
    std::vector<MonodromyPart> trivial;  // invariant factor 1, value in Z
    IntegerMatrix v;                     // Smith column transform, for reassembly
};

/// mu given on the presentation generators (all with one modulus). Smith
/// generator f_i gets mu(f_i) = sum_j (V^-1)_ij mu_j. Throws DimensionError
/// on a length mismatch and CompatibilityError (with the Smith index) when a
/// generator of order d >= 1 has d * mu(f_i) outside Z.
MonodromyDecomposition monodromy_decompose(const AbelianPresentation& p, const std::vector<MonodromyElement>& mu);

/// Reassembles mu on the presentation generators with new free values,
/// keeping torsion and trivial values verbatim. Throws DimensionError when
/// new_free does not match the free part.
std::vector<RationalVector> monodromy_retwist(const MonodromyDecomposition& d,
                                              const std::vector<RationalVector>& new_free);

struct TwistWitness {
    IntegerVector loop_class;  // coefficients over the presentation generators
    RationalVector w;
};

/// True iff mu([gamma]) = w mod Z for every witness. Throws PreconditionError
/// when some w is outside Z tensor R, DimensionError on length mismatches.
bool twisting_compatibility(const std::vector<TwistWitness>& witnesses, const std::vector<RationalVector>& mu,
                            const IntegerLattice& z);

struct Arrangement2D {
    std::size_t curves = 0;
    std::vector<std::vector<std::size_t>> domains;  // cyclic boundary sequences
    std::vector<bool> reversed;                     // per domain; empty means none reversed
};

struct ArrangementResult {
    bool feasible = false;
    std::vector<Rational> angles;          // turns in [0, 1), one per curve
    std::vector<std::size_t> certificate;  // minimal infeasible set of domains
};

constexpr std::size_t kMaxArrangementCurves = 10;

/// Searches circular orderings of the curves (curve 0 first, the rest in
/// lexicographic permutation order) and, for each ordering compatible with
/// every domain, solves the gap constraints exactly. Throws ArgumentError on
/// malformed input or more than kMaxArrangementCurves curves.
ArrangementResult check_2d_arrangement(const Arrangement2D& a);

}  // namespace nis
