#pragma once

#include <functional>
#include <vector>

#include "deltahull/delta_stats.hpp"

namespace deltahull {

struct CountReport {
  Integer count;
  std::vector<std::pair<Integer, Integer>> box;  // inclusive [lo, hi] per coordinate
  Integer cells_scanned;
};

/// Scans the integer bounding box of the vertex set and tests A x <= b
/// exactly at every cell. Throws Unbounded when the enumeration found rays
/// and BudgetExceeded when the box has more cells than the budget.
CountReport count_integer_points_bruteforce(const HPolyhedron& P, const EnumerationResult& result,
                                            std::uint64_t budget);

struct CountingCost {
  Rational general;   // n^4 Delta |T| sum |det A_B|^2
  Rational refined;   // n^3 Delta |T| sum |det A_B|^2
  double envelope = 0;  // n^n Delta^4 / Delta_avg
};

CountingCost estimate_counting_cost(const FanStats& stats, Index n);

/// sum f(x_i) <= floor(beta/alpha + 1) f(alpha) for x in [0, alpha]^n with
/// sum x_i <= beta and f convex, nondecreasing, f(0) = 0. Throws
/// PreconditionViolated when x, alpha, beta or f(0) violate the hypotheses.
bool knapsack_bound_check(std::span<const Rational> x, const Rational& alpha, const Rational& beta,
                          const std::function<Rational(const Rational&)>& f);

}  // namespace deltahull
