#pragma once

#include "semidec/int_matrix.hpp"

#include <optional>
#include <vector>

namespace semidec {

/// Exact rational feasibility of {x >= 0 : A x = b}, by phase-1 simplex
/// with Bland's rule. Returns a feasible point or nullopt.
std::optional<std::vector<Rat>> feasible_point(
    const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b);

} // namespace semidec
