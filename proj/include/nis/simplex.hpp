#pragma once

#include "nis/arith.hpp"

#include <optional>

namespace nis {

/// Exact phase-I simplex (Bland's rule): some x >= 0 with A x = b, or nullopt.
std::optional<RationalVector> find_nonnegative_solution(const RationalMatrix& a, const RationalVector& b,
                                                        std::size_t cols);

}  // namespace nis
