#pragma once

#include <map>
#include <optional>
#include <vector>

#include "deltahull/polyhedron.hpp"

namespace deltahull {

/// One pivot out of a feasible basis: `leaving` is dropped, the vertex moves
/// along `direction` by `step`, and `entering` becomes tight. No entering row
/// means the edge is unbounded.
struct PivotEdge {
  Basis from;
  Index leaving = 0;
  std::optional<Index> entering;
  Rational step;
  Vector direction;

  bool ray() const { return !entering.has_value(); }
  bool degenerate() const { return !ray() && step == 0; }
  Basis to() const { return from.replace(leaving, *entering); }
};

/// Simplicial cones grouped by owning vertex: cones of vertex v occupy
/// [offsets[v], offsets[v + 1]).
struct Triangulation {
  std::vector<Basis> cones;
  std::vector<Index> offsets{0};

  Index size() const { return cones.size(); }
  Index vertex_count() const { return offsets.size() - 1; }
  std::span<const Basis> cones_of(Index vertex) const {
    return {cones.data() + offsets[vertex], offsets[vertex + 1] - offsets[vertex]};
  }
};

struct UnboundedEdge {
  Index vertex = 0;
  Vector direction;  // scaled so the first nonzero entry is +-1
};

/// Instrumentation. A "row product" is one length-n inner product.
struct EnumerationWork {
  std::uint64_t bases_expanded = 0;
  std::uint64_t pivots = 0;
  std::uint64_t row_products = 0;
  std::uint64_t max_row_products_per_basis = 0;
  std::uint64_t inverse_updates = 0;
  std::uint64_t inverse_recomputations = 0;
};

struct EnumerationResult {
  std::vector<VertexRecord> vertices;
  Triangulation triangulation;
  std::vector<PivotEdge> pivot_edges;
  std::vector<UnboundedEdge> rays;
  /// Every feasible basis met during the traversal, mapped to its vertex.
  std::map<Basis, Index> basis_owner;
  EnumerationWork work;

  bool bounded() const { return rays.empty(); }
  /// Undirected basis adjacency from the bounded pivot edges.
  std::map<Basis, std::vector<Basis>> pivot_adjacency() const;
};

/// All pivots out of the feasible basis B, given inv = (A_B)^{-1}. Ties in the
/// ratio test yield one edge per minimizing row.
std::vector<PivotEdge> pivot_neighbors(const HPolyhedron& P, const Basis& B, const Matrix& inv,
                                       EnumerationWork* work = nullptr);

/// Placing triangulation of cone(A_i : i in tight). The first independent
/// rows in ascending order form the starting simplex; the remaining rows are
/// then placed in ascending order, each coned to the boundary facets it sees.
std::vector<Basis> triangulate_normal_cone(const HPolyhedron& P, std::span<const Index> tight);

/// BFS over the simplicial cones of the normal fan starting at v0.
EnumerationResult enumerate_vertices(const HPolyhedron& P, const VertexRecord& v0);

/// Ground truth from all C(m, n) row subsets.
struct OracleResult {
  std::vector<VertexRecord> vertices;  // sorted by point
  std::vector<Basis> feasible_bases;
};
OracleResult enumerate_all_bases_oracle(const HPolyhedron& P, std::uint64_t budget);

}  // namespace deltahull
