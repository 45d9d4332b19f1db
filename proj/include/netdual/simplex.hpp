#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "netdual/logscalar.hpp"

namespace netdual {

/// sum_j coeffs[j].second * x[coeffs[j].first] <= bound.
struct LinearConstraint {
  std::vector<std::pair<int, Rational>> coeffs;
  LogScalar bound;
};

struct SimplexResult {
  bool feasible = false;
  /// A point satisfying every constraint, when feasible.
  std::vector<LogScalar> point;
  /// Farkas multipliers y >= 0 with y^T A >= 0 (= 0 on free columns) and y^T b < 0,
  /// when infeasible. One per constraint.
  std::vector<Rational> multipliers;
  std::size_t pivots = 0;
};

/// Decides whether {A x <= b, x_j >= 0 unless free[j]} is non-empty. Coefficients are
/// rational and bounds are LogScalars, so every step is exact; Bland's rule guarantees
/// termination. Both outcomes are checked against the input before returning.
SimplexResult find_feasible_point(int num_vars, const std::vector<LinearConstraint>& rows,
                                  const std::vector<bool>& free = {});

bool satisfies(const std::vector<LinearConstraint>& rows, const std::vector<LogScalar>& point,
               const std::vector<bool>& free = {});
bool verify_farkas(int num_vars, const std::vector<LinearConstraint>& rows, const std::vector<Rational>& y,
                   const std::vector<bool>& free = {});

}  // namespace netdual
