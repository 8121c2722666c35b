#include "nis/arith.hpp"

#include "nis/errors.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace nis {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

struct ExtendedGcd {
    Integer g, x, y;  // x*a + y*b = g >= 0
};

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        return {-old_r, -old_s, -old_t};
    }
    return {old_r, old_s, old_t};
}

bool digits_only(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Unimodular row elimination over the first `pivot_cols` columns. Returns the
// number of pivot rows; rows from that index on vanish on those columns.
std::size_t gcd_echelon(IntegerMatrix& rows, std::size_t pivot_cols, bool reduce_above) {
    std::size_t prow = 0;
    for (std::size_t c = 0; c < pivot_cols && prow < rows.size(); ++c) {
        for (std::size_t r = prow + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) {
                continue;
            }
            const Integer a = rows[prow][c];
            const Integer b = rows[r][c];
            const ExtendedGcd eg = extended_gcd(a, b);
            const Integer ag = a / eg.g;
            const Integer bg = b / eg.g;
            for (std::size_t k = 0; k < rows[r].size(); ++k) {
                const Integer p = rows[prow][k];
                const Integer q = rows[r][k];
                rows[prow][k] = eg.x * p + eg.y * q;
                rows[r][k] = bg * p - ag * q;
            }
        }
        if (rows[prow][c] == 0) {
            continue;
        }
        if (rows[prow][c] < 0) {
            for (auto& e : rows[prow]) {
                e = -e;
            }
        }
        if (reduce_above) {
            const Integer pivot = rows[prow][c];
            for (std::size_t r = 0; r < prow; ++r) {
                const Integer q = floor_div(rows[r][c], pivot);
                if (q != 0) {
                    for (std::size_t k = 0; k < rows[r].size(); ++k) {
                        rows[r][k] -= q * rows[prow][k];
                    }
                }
            }
        }
        ++prow;
    }
    return prow;
}

IntegerVector clear_denominators(const RationalVector& row) {
    Integer l = 1;
    for (const auto& q : row) {
        l = boost::multiprecision::lcm(l, denominator_of(q));
    }
    IntegerVector out;
    out.reserve(row.size());
    for (const auto& q : row) {
        out.push_back(numerator_of(q) * (l / denominator_of(q)));
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalars

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) {
        throw ArgumentError("malformed rational '" + std::string(text) + "'");
    }
    const Integer d{std::string(den)};
    if (d == 0) {
        throw ArgumentError("zero denominator in '" + std::string(text) + "'");
    }
    Integer n{std::string(num)};
    if (negative) {
        n = -n;
    }
    return Rational(n, d);
}

std::string to_string(const Rational& q) {
    if (denominator_of(q) == 1) {
        return numerator_of(q).str();
    }
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }
Integer floor_of(const Rational& q) { return floor_div(numerator_of(q), denominator_of(q)); }
Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }
int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }
int sign(const Integer& z) { return z > 0 ? 1 : (z < 0 ? -1 : 0); }

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) {
        throw ArgumentError("division by zero");
    }
    const Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string to_string(const GaussianRational& z) {
    if (z.is_real()) {
        return to_string(z.re());
    }
    std::string im;
    if (z.im() == 1) {
        im = "i";
    } else if (z.im() == -1) {
        im = "-i";
    } else {
        im = to_string(z.im()) + "i";
    }
    if (z.re() == 0) {
        return im;
    }
    return to_string(z.re()) + (z.im() > 0 ? "+" : "") + im;
}

// ---------------------------------------------------------------------------
// Rational linear algebra

RationalVector to_rational(const IntegerVector& v) {
    RationalVector out;
    out.reserve(v.size());
    for (const auto& z : v) {
        out.emplace_back(z);
    }
    return out;
}

IntegerVector primitive_vector(const RationalVector& v) {
    IntegerVector out = clear_denominators(v);
    Integer g = 0;
    for (const auto& z : out) {
        g = boost::multiprecision::gcd(g, z);
    }
    if (g > 1) {
        for (auto& z : out) {
            z /= g;
        }
    }
    return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("dot: dimension mismatch");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

bool is_zero(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

RowEchelon reduced_row_echelon(RationalMatrix m) {
    RowEchelon out;
    if (m.empty()) {
        return out;
    }
    const std::size_t cols = m.front().size();
    std::size_t prow = 0;
    for (std::size_t c = 0; c < cols && prow < m.size(); ++c) {
        std::size_t sel = prow;
        while (sel < m.size() && m[sel][c] == 0) {
            ++sel;
        }
        if (sel == m.size()) {
            continue;
        }
        std::swap(m[prow], m[sel]);
        const Rational inv = 1 / m[prow][c];
        for (auto& e : m[prow]) {
            e *= inv;
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == prow || m[r][c] == 0) {
                continue;
            }
            const Rational f = m[r][c];
            for (std::size_t k = c; k < cols; ++k) {
                m[r][k] -= f * m[prow][k];
            }
        }
        out.pivots.push_back(c);
        ++prow;
    }
    m.resize(prow);
    out.rows = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& rows) { return reduced_row_echelon(rows).rows.size(); }

std::size_t rank(const IntegerMatrix& rows) {
    RationalMatrix m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        m.push_back(to_rational(r));
    }
    return rank(m);
}

RationalMatrix nullspace(const RationalMatrix& m, std::size_t cols) {
    const RowEchelon e = reduced_row_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) {
        is_pivot[p] = true;
    }
    RationalMatrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        RationalVector x(cols, Rational(0));
        x[free] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) {
            x[e.pivots[r]] = -e.rows[r][free];
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b, std::size_t cols) {
    if (a.size() != b.size()) {
        throw DimensionError("solve: row count mismatch");
    }
    RationalMatrix aug;
    aug.reserve(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].size() != cols) {
            throw DimensionError("solve: column count mismatch");
        }
        RationalVector row = a[r];
        row.push_back(b[r]);
        aug.push_back(std::move(row));
    }
    const RowEchelon e = reduced_row_echelon(std::move(aug));
    RationalVector x(cols, Rational(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == cols) {
            return std::nullopt;
        }
        x[e.pivots[r]] = e.rows[r][cols];
    }
    return x;
}

std::optional<RationalVector> express_in(const std::vector<RationalVector>& vectors,
                                         const RationalVector& target) {
    const std::size_t k = vectors.size();
    RationalMatrix a(target.size(), RationalVector(k));
    for (std::size_t i = 0; i < k; ++i) {
        if (vectors[i].size() != target.size()) {
            throw DimensionError("express_in: dimension mismatch");
        }
        for (std::size_t r = 0; r < target.size(); ++r) {
            a[r][i] = vectors[i][r];
        }
    }
    return solve(a, target, k);
}

// ---------------------------------------------------------------------------
// Lattices

IntegerMatrix hermite_normal_form(IntegerMatrix rows, std::size_t cols) {
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw DimensionError("hermite_normal_form: ragged matrix");
        }
    }
    const std::size_t r = gcd_echelon(rows, cols, true);
    rows.resize(r);
    return rows;
}

IntegerLattice::IntegerLattice(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

IntegerLattice::IntegerLattice(std::size_t ambient_dim, const IntegerMatrix& generators)
    : ambient_dim_(ambient_dim), basis_(hermite_normal_form(generators, ambient_dim)) {}

IntegerLattice IntegerLattice::full(std::size_t ambient_dim) {
    return IntegerLattice(ambient_dim, identity_matrix(ambient_dim));
}

std::optional<IntegerVector> IntegerLattice::coordinates(const RationalVector& v) const {
    if (v.size() != ambient_dim_) {
        throw DimensionError("lattice coordinates: dimension mismatch");
    }
    std::vector<RationalVector> b;
    b.reserve(basis_.size());
    for (const auto& row : basis_) {
        b.push_back(to_rational(row));
    }
    const auto c = express_in(b, v);
    if (!c) {
        return std::nullopt;
    }
    IntegerVector out;
    out.reserve(c->size());
    for (const auto& q : *c) {
        if (denominator_of(q) != 1) {
            return std::nullopt;
        }
        out.push_back(numerator_of(q));
    }
    return out;
}

bool IntegerLattice::contains(const RationalVector& v) const { return coordinates(v).has_value(); }

bool IntegerLattice::contains(const IntegerVector& v) const { return contains(to_rational(v)); }

bool IntegerLattice::spans(const RationalVector& v) const {
    if (v.size() != ambient_dim_) {
        throw DimensionError("lattice span test: dimension mismatch");
    }
    std::vector<RationalVector> b;
    for (const auto& row : basis_) {
        b.push_back(to_rational(row));
    }
    return express_in(b, v).has_value();
}

IntegerLattice integer_kernel(const RationalMatrix& m, std::size_t cols) {
    // Echelonize [M^T | I]; rows whose left block vanishes span the kernel.
    const std::size_t rows = m.size();
    IntegerMatrix int_rows;
    int_rows.reserve(rows);
    for (const auto& r : m) {
        if (r.size() != cols) {
            throw DimensionError("integer_kernel: ragged matrix");
        }
        int_rows.push_back(clear_denominators(r));
    }
    IntegerMatrix aug(cols, IntegerVector(rows + cols, Integer(0)));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            aug[j][i] = int_rows[i][j];
        }
        aug[j][rows + j] = 1;
    }
    const std::size_t r = gcd_echelon(aug, rows, false);
    IntegerMatrix kernel;
    for (std::size_t j = r; j < cols; ++j) {
        kernel.emplace_back(aug[j].begin() + static_cast<std::ptrdiff_t>(rows), aug[j].end());
    }
    return IntegerLattice(cols, kernel);
}

IntegerLattice integer_kernel(const GaussianMatrix& m, std::size_t cols) {
    RationalMatrix split;
    for (const auto& row : m) {
        if (row.size() != cols) {
            throw DimensionError("integer_kernel: ragged matrix");
        }
        RationalVector re, im;
        for (const auto& z : row) {
            re.push_back(z.re());
            im.push_back(z.im());
        }
        split.push_back(std::move(re));
        split.push_back(std::move(im));
    }
    return integer_kernel(split, cols);
}

IntegerMatrix identity_matrix(std::size_t n) {
    IntegerMatrix id(n, IntegerVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        id[i][i] = 1;
    }
    return id;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b, std::size_t b_cols) {
    IntegerMatrix out(a.size(), IntegerVector(b_cols, Integer(0)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b.size()) {
            throw DimensionError("multiply: dimension mismatch");
        }
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b_cols; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

SmithDecomposition smith_decomposition(const IntegerMatrix& a, std::size_t cols) {
    const std::size_t rows = a.size();
    for (const auto& r : a) {
        if (r.size() != cols) {
            throw DimensionError("smith_decomposition: ragged matrix");
        }
    }
    SmithDecomposition s{identity_matrix(rows), a, identity_matrix(cols)};
    auto& d = s.d;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(d[i], d[j]);
        std::swap(s.u[i], s.u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : d) std::swap(row[i], row[j]);
        for (auto& row : s.v) std::swap(row[i], row[j]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Integer& f) {  // row_dst += f*row_src
        for (std::size_t k = 0; k < cols; ++k) d[dst][k] += f * d[src][k];
        for (std::size_t k = 0; k < rows; ++k) s.u[dst][k] += f * s.u[src][k];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Integer& f) {  // col_dst += f*col_src
        for (auto& row : d) row[dst] += f * row[src];
        for (auto& row : s.v) row[dst] += f * row[src];
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < rows; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                if (d[i][j] != 0 && (!best || abs(d[i][j]) < abs(d[best->first][best->second]))) {
                    best = std::make_pair(i, j);
                }
            }
        }
        if (!best) {
            break;
        }
        swap_rows(t, best->first);
        swap_cols(t, best->second);

        for (;;) {
            bool swapped = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0) continue;
                add_row(i, t, -(d[i][t] / d[t][t]));
                if (d[i][t] != 0) {
                    swap_rows(i, t);
                    swapped = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0) continue;
                add_col(j, t, -(d[t][j] / d[t][t]));
                if (d[t][j] != 0) {
                    swap_cols(j, t);
                    swapped = true;
                }
            }
            if (swapped) {
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (d[i][j] % d[t][t] != 0) {
                        add_row(t, i, 1);
                        fixed = true;
                        break;
                    }
                }
            }
            if (!fixed) {
                break;
            }
        }
        if (d[t][t] < 0) {
            for (auto& e : d[t]) e = -e;
            for (auto& e : s.u[t]) e = -e;
        }
    }
    return s;
}

Integer determinant(const IntegerMatrix& a) {
    const std::size_t n = a.size();
    RationalMatrix m;
    for (const auto& r : a) {
        if (r.size() != n) {
            throw DimensionError("determinant: matrix not square");
        }
        m.push_back(to_rational(r));
    }
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m[sel][c] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            std::swap(m[sel], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return numerator_of(det);
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& a) {
    const std::size_t n = a.size();
    RationalMatrix aug;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw DimensionError("unimodular_inverse: matrix not square");
        }
        RationalVector row = to_rational(a[i]);
        for (std::size_t j = 0; j < n; ++j) row.emplace_back(i == j ? 1 : 0);
        aug.push_back(std::move(row));
    }
    const RowEchelon e = reduced_row_echelon(std::move(aug));
    if (e.rows.size() != n || (n > 0 && e.pivots.back() != n - 1)) {
        throw ArgumentError("unimodular_inverse: singular matrix");
    }
    IntegerMatrix inv(n, IntegerVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& q = e.rows[i][n + j];
            if (denominator_of(q) != 1) {
                throw ArgumentError("unimodular_inverse: matrix is not unimodular");
            }
            inv[i][j] = numerator_of(q);
        }
    }
    return inv;
}

bool is_primitive(const IntegerVector& w, const IntegerLattice& lattice) {
    const auto c = lattice.coordinates(to_rational(w));
    if (!c) {
        throw MembershipError("is_primitive: vector is not in the lattice");
    }
    Integer g = 0;
    for (const auto& z : *c) {
        g = boost::multiprecision::gcd(g, z);
    }
    return g == 1;
}

}  // namespace nis
