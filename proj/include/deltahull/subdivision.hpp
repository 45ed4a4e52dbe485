#pragma once

#include <vector>

#include "deltahull/delta_stats.hpp"

namespace deltahull {

/// Rays of the sum-zero simplex, one per row: (n+1) e_i - 1 for i < n and the
/// all-minus-ones vector last.
Matrix base_simplex(Index n);

/// Depth-k barycentric subdivision fan. `rays` holds one ray per row (the
/// transpose of the column matrix M_k); each cone lists n ray indices in
/// construction order, and parent[c] is its cone at depth k - 1.
struct SubdivisionFan {
  Index n = 0;
  Index k = 0;
  Matrix rays;
  std::vector<IndexSet> cones;
  std::vector<Index> parent;  // empty at depth 0

  /// Cones as sorted row sets into `rays`.
  std::vector<Basis> bases() const;
};

SubdivisionFan base_fan(Index n);

/// Appends the barycenter of every cone's facet simplex as a new ray and
/// replaces each cone by n children, child j having ray j swapped for the
/// barycenter.
SubdivisionFan subdivide_fan(const SubdivisionFan& fan);

/// Depths 0..k.
std::vector<SubdivisionFan> subdivision_family(Index n, Index k);

/// Polytope whose face fan is the depth-k fan: vertex i is scaling[i] * ray i,
/// and the polar is {x : rays x <= dual_rhs} with dual_rhs[i] = 1 / scaling[i].
struct LiftedPolytope {
  Matrix vertices;
  Vector scaling;
  Vector dual_rhs;
};

/// Beneath-beyond lifting, one facet at a time: the new ray over facet T is
/// scaled to the midpoint of the open interval in which it lies beyond T and
/// strictly beneath every other current facet. Throws EmptyAlphaInterval.
LiftedPolytope lift_polytope(const std::vector<SubdivisionFan>& family);

/// {x : rays x <= dual_rhs}, the polar of the lifted polytope.
HPolyhedron dual_instance(const SubdivisionFan& fan, const LiftedPolytope& lifted);

/// Each row scaled to unit length and rounded to the nearest multiple of
/// 10^-digits (ties away from zero), computed exactly.
Matrix normalize_rays(const Matrix& rays, Index digits);

struct ExpectedCounts {
  Integer cones;        // (n+1) n^k
  Integer diameter;     // 2^{k+1} - 1
  Integer delta_ratio;  // n^k
};
ExpectedCounts expected_counts(Index n, Index k);

/// Largest distance from a barycentric grid point on a base facet to the
/// nearest ray of the fan. The grid has `samples` steps per facet; a single
/// sample is the facet barycenter.
double density_profile(const SubdivisionFan& fan, Index samples);

struct TightnessRow {
  Index k = 0;
  Index cones = 0;
  Rational delta;
  Rational delta_avg;
  double delta_ratio = 0;  // Delta / Delta_avg
  double rhs = 0;          // n! (Delta / Delta_avg) vol(B_2^n)
  double ratio = 0;        // cones / rhs
};

/// Runs on the normalized rays R_k for k = 0..k_max.
std::vector<TightnessRow> tightness_experiment(Index n, Index k_max, Index digits, std::uint64_t budget);

}  // namespace deltahull
