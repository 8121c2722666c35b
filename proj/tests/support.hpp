#pragma once

// Shared generators for randomized tests.

#include "nis/arith.hpp"
#include "nis/resonance.hpp"

#include <random>

namespace testsupport {

inline nis::Rational small_rational(std::mt19937& rng, int span = 3, int max_den = 3) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, max_den);
    return nis::Rational(num(rng), den(rng));
}

inline nis::IntegerVector iv(std::initializer_list<long> xs) {
    nis::IntegerVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline nis::RationalVector rv(std::initializer_list<long> xs) {
    nis::RationalVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

/// Two-variable field with rational eigenvalues drawn from a small set (so
/// resonances are common) and random terms of degree 2..max_degree.
inline nis::PolyVectorField random_planar_field(std::mt19937& rng, int max_degree) {
    static const nis::Rational pool[] = {nis::Rational(1),  nis::Rational(2),  nis::Rational(3),
                                         nis::Rational(-1), nis::Rational(-2), nis::Rational(1, 2),
                                         nis::Rational(0)};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
    nis::EigenvalueTuple eigs{{nis::GaussianRational(pool[pick(rng)]), nis::GaussianRational(pool[pick(rng)])}, false};
    std::bernoulli_distribution present(0.35);
    nis::TermMap terms;
    for (int deg = 2; deg <= max_degree; ++deg) {
        for (int a = 0; a <= deg; ++a) {
            for (std::size_t l = 0; l < 2; ++l) {
                if (!present(rng)) continue;
                const nis::Rational c = small_rational(rng);
                if (c != 0) terms.emplace(nis::TermKey{{a, deg - a}, l}, nis::GaussianRational(c));
            }
        }
    }
    return nis::PolyVectorField(std::move(eigs), std::move(terms));
}

}  // namespace testsupport
