#pragma once

#include <variant>
#include <vector>

#include "resurgence/polyhedron.hpp"

namespace resurgence {

/// minimize <objective, y> subject to every constraint, and y >= 0 when `nonneg`.
struct LinearProgram {
  RationalVector objective;
  std::vector<HalfSpace> constraints;
  bool nonneg = true;
};

struct LpOptimum {
  Rational value;
  RationalVector argmin;
  /// One multiplier per constraint: u >= 0, A^T u <= c (== c for free variables), <b, u> = value.
  RationalVector dual;
};

struct LpUnbounded {};
struct LpInfeasible {};

using LpResult = std::variant<LpOptimum, LpUnbounded, LpInfeasible>;

/// Two-phase exact simplex with Bland's rule.
LpResult lp_minimize(const LinearProgram& lp);

/// Exact check of primal feasibility, dual feasibility and equal objective values.
bool verify_certificate(const LinearProgram& lp, const LpOptimum& optimum);

}  // namespace resurgence
