#pragma once

#include <cstddef>
#include <vector>

#include "ivtest/rational.hpp"

namespace ivtest::lp {

/// Outcome of deciding whether { x >= 0 : A x = b } is nonempty.
struct FeasibilityOutcome {
  bool feasible = false;
  RationalVector x;  // a solution when feasible (length = columns)
  RationalVector y;  // when infeasible: y'A_j <= 0 for every column j and y'b > 0
  std::size_t pivots = 0;
};

/// Phase-1 simplex over exact rationals with Bland's rule. `columns` holds A column by
/// column (each of length b.size()). The returned x or y is exact but not re-verified here.
FeasibilityOutcome solve_feasibility(const std::vector<RationalVector>& columns,
                                     const RationalVector& b);

}  // namespace ivtest::lp
