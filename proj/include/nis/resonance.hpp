#pragma once

// Resonances of an eigenvalue tuple, the lattice of torus weights orthogonal
// to them, and truncated Poincare-Dulac normalization of polynomial fields.

#include "nis/arith.hpp"

#include <map>
#include <optional>
#include <vector>

namespace nis {

struct EigenvalueTuple {
    GaussianVector gammas;
    /// When set, gammas are the frequencies of a quadratic Hamiltonian and
    /// resonances are the full integer relations (no sign restrictions).
    bool hamiltonian = false;

    std::size_t size() const { return gammas.size(); }
    friend bool operator==(const EigenvalueTuple&, const EigenvalueTuple&) = default;
};

struct ResonanceReport {
    std::vector<IntegerVector> relations;
    std::size_t resonance_rank = 0;
    IntegerLattice q_lattice{0};
    std::size_t toric_degree = 0;
    std::vector<IntegerVector> generators;  // Hermite basis of q_lattice
    int degree_bound = 0;
    bool hamiltonian = false;
    /// Rank of {c in Z^m : sum c_j gamma_j = 0}; the relations span a subspace of it.
    std::size_t kernel_rank = 0;
    /// True when a larger bound provably cannot change the span of the relations:
    /// either they already span the whole kernel, or the spectrum lies in an open
    /// half-plane and the bound exceeds the largest possible relation.
    bool stabilized = false;
    /// For spectra in an open half-plane: every relation has sum at most this.
    std::optional<int> complete_bound;
};

/// Throws ArgumentError when degree_bound < 2 or the tuple is empty.
ResonanceReport resonance_report(const EigenvalueTuple& eigs, int degree_bound);

/// Key of a monomial vector field x^exponent d/dx_component.
/// Ordered by total degree, then lexicographically by (exponent, component).
struct TermKey {
    std::vector<int> exponent;
    std::size_t component = 0;

    int degree() const;
    friend bool operator==(const TermKey&, const TermKey&) = default;
    friend bool operator<(const TermKey& a, const TermKey& b);
};

using TermMap = std::map<TermKey, GaussianRational>;

/// X = sum_j gamma_j x_j d/dx_j + (terms of degree >= 2).
class PolyVectorField {
public:
    /// Drops zero coefficients. Throws ArgumentError for terms of degree < 2,
    /// negative exponents, or indices outside the dimension.
    PolyVectorField(EigenvalueTuple linear, TermMap terms);
    /// Field with zero linear part.
    static PolyVectorField nonlinear(std::size_t dim, TermMap terms);

    std::size_t dim() const { return linear_.size(); }
    const EigenvalueTuple& linear() const { return linear_; }
    const TermMap& terms() const { return terms_; }
    bool is_linear() const { return terms_.empty(); }
    bool is_zero() const;
    GaussianRational coefficient(const TermKey& key) const;
    PolyVectorField truncated(int max_degree) const;
    /// The diagonal field sum_j gamma_j x_j d/dx_j.
    PolyVectorField semisimple_part() const;

    friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;

private:
    EigenvalueTuple linear_;
    TermMap terms_;
};

/// sum_j b_j gamma_j - gamma_l; zero exactly for resonant terms.
GaussianRational resonance_divisor(const EigenvalueTuple& eigs, const TermKey& key);

/// [X, Y] truncated to total degree <= max_degree; the result has zero linear part.
/// Throws DimensionError on mismatched dimensions.
PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y, int max_degree);

struct EliminationRecord {
    TermKey term;
    GaussianRational coefficient;
    GaussianRational divisor;
};

struct NormalizationResult {
    PolyVectorField normal_form;
    std::vector<EliminationRecord> jets;
};

/// Removes every nonresonant term up to max_degree, one monomial at a time in
/// TermKey order. Each step pulls the field back along the time-one flow of
/// Y = (C / divisor) x^b d/dx_l, i.e. X <- exp(ad_Y) X, truncated at max_degree.
NormalizationResult pd_normalize(const PolyVectorField& x, int max_degree);

/// [X, X^s] == 0 up to max_degree.
bool is_pb_normal(const PolyVectorField& x, int max_degree);

/// Z_k = sum_j rho^k_j x_j d/dx_j for each Hermite basis vector rho^k of the weight lattice.
std::vector<PolyVectorField> torus_generators(const ResonanceReport& report);

}  // namespace nis
