#pragma once

// Semi-local linear models of orbits: (h, e, r, t) invariants, twisting
// groups, exact closed-form flows, limits of orbits in hyperbolic charts and
// enumeration of singularity types.
//
// Coordinates follow the adapted basis: h hyperbolic coordinates, e elbolic
// pairs, t torus angles, r flat coordinates. Angles are measured in turns, so
// the elbolic rotation field and the torus fields all have period 1.

#include "nis/arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nis {

struct HertInvariant {
    int h = 0;
    int e = 0;
    int r = 0;
    int t = 0;
    int n = 0;

    /// Throws ArgumentError on negative entries or h + 2e + r + t != n.
    void validate() const;
    friend bool operator==(const HertInvariant&, const HertInvariant&) = default;
};

/// Returns e + t.
int toric_degree_of_hert(const HertInvariant& q);

/// Rank-k subgroup of (Z_2)^h acting by sign changes on hyperbolic
/// coordinates; generator i also translates torus factor i by half a turn.
struct TwistingGroup {
    /// k rows of h bits; row i is the sign-change pattern of generator i.
    std::vector<std::vector<bool>> hyperbolic_embedding;

    std::size_t rank() const { return hyperbolic_embedding.size(); }
    friend bool operator==(const TwistingGroup&, const TwistingGroup&) = default;
};

class LinearModel {
public:
    /// Throws ArgumentError when the invariant is invalid, k > min(h, t), a
    /// row has the wrong length, or the rows are dependent over Z_2.
    LinearModel(HertInvariant hert, TwistingGroup twist = {});

    const HertInvariant& hert() const { return hert_; }
    const TwistingGroup& twist() const { return twist_; }
    int dim() const { return hert_.n; }
    /// Human-readable generator fields in adapted-basis order.
    std::vector<std::string> generators() const;

private:
    HertInvariant hert_;
    TwistingGroup twist_;
};

struct ElbolicCoords {
    Rational x{0};
    Rational y{0};
    friend bool operator==(const ElbolicCoords&, const ElbolicCoords&) = default;
};

struct ModelPoint {
    std::vector<Rational> hyperbolic;
    std::vector<ElbolicCoords> elbolic;
    std::vector<Rational> torus;  // turns, reduced to [0, 1)
    std::vector<Rational> flat;
    friend bool operator==(const ModelPoint&, const ModelPoint&) = default;
};

/// Throws DimensionError if the point does not fit the model.
void check_point(const LinearModel& model, const ModelPoint& p);

/// x * exp(exponent).
struct ScaledCoordinate {
    Rational mantissa{0};
    Rational exponent{0};
    friend bool operator==(const ScaledCoordinate&, const ScaledCoordinate&) = default;
};

/// exp(log_scale) * rotation(turns) applied to (x, y).
struct ElbolicState {
    Rational x{0};
    Rational y{0};
    Rational log_scale{0};
    Rational turns{0};  // reduced to [0, 1)
    friend bool operator==(const ElbolicState&, const ElbolicState&) = default;
};

/// Exact image of a model point under a flow.
struct FlowState {
    std::vector<ScaledCoordinate> hyperbolic;
    std::vector<ElbolicState> elbolic;
    std::vector<Rational> torus;
    std::vector<Rational> flat;
    friend bool operator==(const FlowState&, const FlowState&) = default;
};

FlowState as_flow_state(const ModelPoint& p);

/// Time-`time` flow of sum_i w_i Y_i. w has length n in the adapted basis;
/// each elbolic pair contributes (radial, rotation). Throws DimensionError.
FlowState flow(const LinearModel& model, const RationalVector& w, const FlowState& z0, const Rational& time);
FlowState flow(const LinearModel& model, const RationalVector& w, const ModelPoint& z0, const Rational& time);

/// Floating-point coordinates in the order hyperbolic, elbolic (x, y pairs),
/// torus (turns in [0, 1)), flat.
std::vector<double> evaluate(const FlowState& s);

/// Action of twisting generator g: sign changes on hyperbolic coordinates and
/// a half-turn on torus factor g. Throws ArgumentError for a bad index.
FlowState apply_twist(const LinearModel& model, std::size_t g, const FlowState& s);

struct OrbitLimit {
    bool divergent = false;
    std::vector<std::size_t> zero_set;  // coordinates that tend to 0, sorted
    friend bool operator==(const OrbitLimit&, const OrbitLimit&) = default;
};

/// Limit of rho(-s w, z0) as s -> +infinity from a generic point of the open
/// orbit. Throws PreconditionError unless h = n.
OrbitLimit limit_orbit(const LinearModel& model, const RationalVector& w);

struct SingularityType {
    std::optional<std::string> label;  // I..X where defined
    std::string name;
    HertInvariant hert;
    TwistingGroup twist;
};

/// Every (hert, twist) with h + 2e + r + t = n, e + t = toric_degree,
/// e + h >= 1 and k <= min(h, t), twisting groups up to permutation of the
/// hyperbolic components. Labels are assigned for n >= 3 and toric degree
/// n - 2. Throws ArgumentError for n < 2, n > 8 or toric_degree outside [0, n].
std::vector<SingularityType> enumerate_singularity_types(int n, int toric_degree);

/// Canonical name of a (e, h, twist) combination, e.g. "(h-h_t)" or "(h-h)_t".
std::string singularity_name(int e, int h, const TwistingGroup& twist);

struct ConstraintReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Elbolic-mode rules: h = 0; a fixed point needs r = t = 0, n even and
/// toric degree n/2; a compact orbit (r = 0) of dimension k = t needs toric
/// degree (n + k)/2. When given, the declared action toric degree must equal e + t.
ConstraintReport check_elbolic_constraints(const HertInvariant& hert, bool has_fixed_point,
                                           std::optional<int> action_toric_degree = std::nullopt);

/// All invariants claimed for one action must share n and e + t.
ConstraintReport check_toric_degree_consistency(const std::vector<HertInvariant>& orbits);

}  // namespace nis
