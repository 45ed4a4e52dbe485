#pragma once

#include "deltahull/exact.hpp"

namespace deltahull {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;        // primal solution when Optimal
  Rational value;  // objective value when Optimal
  std::uint64_t pivots = 0;
};

/// maximize c.y  s.t.  E y = f, y >= 0. Dense two-phase tableau simplex in
/// exact arithmetic with Bland's rule, so it terminates on degenerate input.
LpResult solve_standard_form(const Matrix& E, const Vector& f, const Vector& c);

/// maximize c.x  s.t.  A x <= b with x free.
LpResult maximize(const Matrix& A, const Vector& b, const Vector& c);

/// Whether p lies in the convex hull of the rows of points (exact LP feasibility).
bool in_convex_hull(const Matrix& points, std::span<const Rational> p);

}  // namespace deltahull
