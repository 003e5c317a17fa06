#pragma once

// Exact dense simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0.

#include "toric/lattice.hpp"

#include <optional>

namespace toric::detail {

struct LpSolution {
  Rat value;
  RatVector x;
};

/// Nullopt when unbounded. The origin is feasible by the b >= 0 requirement.
std::optional<LpSolution> maximize(const RatVector& c, const std::vector<RatVector>& a, const RatVector& b);

}  // namespace toric::detail
