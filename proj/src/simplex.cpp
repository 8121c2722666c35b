#include "nis/simplex.hpp"

#include "nis/errors.hpp"

namespace nis {

std::optional<RationalVector> find_nonnegative_solution(const RationalMatrix& a, const RationalVector& b,
                                                        std::size_t cols) {
    const std::size_t m = a.size();
    if (b.size() != m) {
        throw DimensionError("simplex: row count mismatch");
    }
    const std::size_t n = cols;
    const std::size_t width = n + m;  // structural + artificial columns

    // Tableau rows [coefficients | rhs], rhs kept nonnegative.
    RationalMatrix t(m, RationalVector(width + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].size() != n) {
            throw DimensionError("simplex: column count mismatch");
        }
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) {
            t[i][j] = flip ? -a[i][j] : a[i][j];
        }
        t[i][n + i] = 1;
        t[i][width] = flip ? -b[i] : b[i];
        basis[i] = n + i;
    }

    // Reduced costs of the phase-I objective (sum of artificials).
    RationalVector cost(width + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cost[j] -= t[i][j];
        }
        cost[width] -= t[i][width];
    }

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < width; ++j) {
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) {
            break;
        }
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) {
                continue;
            }
            const Rational ratio = t[i][width] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) {
            break;  // unbounded direction; cannot occur for a bounded-below phase-I objective
        }
        const Rational inv = 1 / t[leave][enter];
        for (auto& e : t[leave]) {
            e *= inv;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) {
                continue;
            }
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j <= width; ++j) {
                t[i][j] -= f * t[leave][j];
            }
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j <= width; ++j) {
                cost[j] -= f * t[leave][j];
            }
        }
        basis[leave] = enter;
    }

    if (cost[width] != 0) {
        return std::nullopt;
    }
    RationalVector x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) {
            x[basis[i]] = t[i][width];
        }
    }
    return x;
}

}  // namespace nis
