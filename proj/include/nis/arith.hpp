#pragma once

// Exact scalars, rational linear algebra and integer lattices.

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nis {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntegerVector = std::vector<Integer>;
using IntegerMatrix = std::vector<IntegerVector>;  // row-major
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major

/// Parses "p", "-p" or "p/q". Throws ArgumentError on a zero denominator or junk.
Rational parse_rational(std::string_view text);
/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);

Integer numerator_of(const Rational& q);
Integer denominator_of(const Rational& q);
Integer floor_of(const Rational& q);
/// Representative of q modulo 1 in [0, 1).
Rational frac(const Rational& q);
int sign(const Rational& q);
int sign(const Integer& z);

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit by design of the algebra
    GaussianRational(int re) : re_(re) {}                  // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    /// Throws ArgumentError on division by zero.
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

/// "a", "bi", "a+bi" style rendering for reports.
std::string to_string(const GaussianRational& z);

using GaussianVector = std::vector<GaussianRational>;
using GaussianMatrix = std::vector<GaussianVector>;

// ---------------------------------------------------------------------------
// Rational linear algebra

RationalVector to_rational(const IntegerVector& v);
/// Smallest positive multiple of v with coprime integer entries (sign preserved).
/// The zero vector maps to the zero vector.
IntegerVector primitive_vector(const RationalVector& v);

Rational dot(const RationalVector& a, const RationalVector& b);
bool is_zero(const RationalVector& v);

struct RowEchelon {
    RationalMatrix rows;              // reduced row echelon form, zero rows removed
    std::vector<std::size_t> pivots;  // pivot column of each row
};
RowEchelon reduced_row_echelon(RationalMatrix m);

std::size_t rank(const RationalMatrix& rows);
std::size_t rank(const IntegerMatrix& rows);

/// Basis of {x : M x = 0}; M has `cols` columns (needed when M has no rows).
RationalMatrix nullspace(const RationalMatrix& m, std::size_t cols);

/// Some x with A x = b, or nullopt if inconsistent. A is given by rows.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b, std::size_t cols);

/// Coefficients t with sum_i t_i * vectors[i] = target when the vectors are
/// linearly independent and target lies in their span.
std::optional<RationalVector> express_in(const std::vector<RationalVector>& vectors,
                                         const RationalVector& target);

// ---------------------------------------------------------------------------
// Integer lattices

/// Full-rank-in-its-span sublattice of Z^n, stored by its Hermite normal form.
/// Two generating sets of the same lattice produce identical stored bases.
class IntegerLattice {
public:
    explicit IntegerLattice(std::size_t ambient_dim);
    /// Lattice generated by the rows (dependent rows allowed).
    IntegerLattice(std::size_t ambient_dim, const IntegerMatrix& generators);

    static IntegerLattice full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t rank() const { return basis_.size(); }
    const IntegerMatrix& basis() const { return basis_; }

    bool contains(const IntegerVector& v) const;
    bool contains(const RationalVector& v) const;
    /// Integer coordinates of v in the stored basis, or nullopt if v is not in the lattice.
    std::optional<IntegerVector> coordinates(const RationalVector& v) const;
    /// True iff v lies in the real span of the lattice.
    bool spans(const RationalVector& v) const;

    friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
        return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_dim_;
    IntegerMatrix basis_;
};

/// Row-style Hermite normal form of the lattice spanned by the rows; zero rows dropped.
IntegerMatrix hermite_normal_form(IntegerMatrix rows, std::size_t cols);

/// {c in Z^m : M c = 0}, each Gaussian row split into its real and imaginary rows.
IntegerLattice integer_kernel(const GaussianMatrix& m, std::size_t cols);
IntegerLattice integer_kernel(const RationalMatrix& m, std::size_t cols);

struct SmithDecomposition {
    IntegerMatrix u;  // rows x rows, unimodular
    IntegerMatrix d;  // rows x cols, diagonal with d_i | d_{i+1}, nonnegative
    IntegerMatrix v;  // cols x cols, unimodular
};
/// U * A * V = D.
SmithDecomposition smith_decomposition(const IntegerMatrix& a, std::size_t cols);

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b, std::size_t b_cols);
IntegerMatrix identity_matrix(std::size_t n);
Integer determinant(const IntegerMatrix& a);
/// Inverse of a unimodular matrix.
IntegerMatrix unimodular_inverse(const IntegerMatrix& a);

/// True iff w is non-zero and not k*u for an integer k >= 2 and u in the lattice.
/// Throws MembershipError when w is not in the lattice.
bool is_primitive(const IntegerVector& w, const IntegerLattice& lattice);

}  // namespace nis
