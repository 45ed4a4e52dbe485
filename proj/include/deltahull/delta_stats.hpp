#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltahull/hull.hpp"

namespace deltahull {

struct DeltaResult {
  Rational value;
  Basis witness;
  std::uint64_t minors_evaluated = 0;
};

/// Lexicographic scan of all C(m, n) row subsets; ties keep the
/// lexicographically smallest witness. Throws BudgetExceeded when C(m, n)
/// exceeds the budget.
DeltaResult delta_max_exhaustive(const Matrix& A, std::uint64_t budget);

/// Same answer and witness as the exhaustive scan, pruning partial row
/// selections whose Hadamard-style bound cannot beat the incumbent.
DeltaResult delta_max_branch_and_bound(const Matrix& A);

/// Rows of A that are vertices of conv(+-A_i), first occurrence of each.
IndexSet extreme_rows(const Matrix& A);

/// Maximum over extreme rows only (|det| is convex in each row, so the
/// maximum is attained there). Witness is reported in A's row indices.
DeltaResult delta_max_extreme(const Matrix& A);

/// Exhaustive when C(m, n) fits the budget, otherwise the extreme-row
/// reduction followed by branch and bound.
DeltaResult compute_delta(const Matrix& A, std::uint64_t budget);

struct FanStats {
  Rational delta;
  Basis witness;
  Rational delta_avg;
  Rational delta_min;
  Index cone_count = 0;
  Rational det_sum;          // sum of |det A_B|
  Rational det_square_sum;   // sum of |det A_B|^2
  Rational fan_volume;       // det_sum / n!
};

FanStats triangulation_stats(const Matrix& A, std::span<const Basis> cones, const DeltaResult& delta);
FanStats triangulation_stats(const Matrix& A, std::span<const Basis> cones, std::uint64_t budget);

Rational factorial(Index n);

/// pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(Index n);

/// A named inequality lhs <= rhs with both sides kept.
struct BoundCheck {
  std::string name;
  std::optional<Rational> lhs_exact;
  std::optional<Rational> rhs_exact;
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
};

/// Throws BoundViolated for a failed check.
void require(const BoundCheck& check);

inline constexpr double kRelativeSlack = 1e-9;

/// |vertex(P)| <= |T| and |T| <= n! (Delta / Delta_avg) vol(B_2^n).
std::vector<BoundCheck> check_vertex_bound(Index vertex_count, const FanStats& stats, Index n);
/// vol ||T||_A <= Delta vol(B_2^n) and |T| <= n! (Delta / Delta_avg) vol(B_2^n).
std::vector<BoundCheck> check_fan_bound(const FanStats& stats, Index n);

/// A (A_B)^{-1}. Throws SingularBasis.
Matrix totally_unimodular_transform(const Matrix& A, const Basis& B);

/// Largest |det| over all k x k minors, 1 <= k <= min(m, n). Throws
/// BudgetExceeded when the number of minors exceeds the budget.
Rational max_abs_minor(const Matrix& A, std::uint64_t budget);
/// max_abs_minor(A) <= 1.
bool verify_total_unimodularity(const Matrix& A, std::uint64_t budget);

struct DeltaDistance {
  Rational sin_squared;  // minimum of sin^2 over all (basis, row) pairs
  Basis basis;
  Index row = 0;         // row of A attaining the minimum
  double delta = 0;      // sqrt(sin_squared)
};

/// delta = min over B, i in B of dist(A_i, span(A_j : j in B - i)) / |A_i|,
/// from sin^2 = det(A_B)^2 / (|A_i|^2 |u|^2) with u the adjugate column.
DeltaDistance local_delta_distance(const Matrix& A, std::span<const Basis> bases);

struct WidenessReport {
  Basis transform_basis;
  DeltaDistance distance;
  Rational distance_floor;  // Delta_min / (n Delta)
  bool floor_holds = false;
  double tau = 0;
  double diameter_bound = 0;  // 8n/tau (1 + ln(1/tau))
};

WidenessReport wideness_and_diameter_bound(const Matrix& A, const FanStats& stats,
                                           std::span<const Basis> cones);

double tau_diameter_bound(Index n, double tau);

}  // namespace deltahull
