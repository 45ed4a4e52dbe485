#pragma once

#include <vector>

#include "deltahull/hull.hpp"

namespace deltahull {

struct SkeletonGraph {
  enum class Kind { Polytope, Fan };
  Kind kind = Kind::Polytope;
  std::vector<std::vector<Index>> adjacency;  // sorted, symmetric, loop-free

  Index node_count() const { return adjacency.size(); }
  Index edge_count() const;
};

/// Builds a simple graph from an undirected edge list.
SkeletonGraph make_graph(SkeletonGraph::Kind kind, Index nodes,
                         const std::vector<std::pair<Index, Index>>& edges);

/// Vertices joined by a positive-step pivot. On non-simple polyhedra each edge
/// is re-validated by the tight-set rank test; a failure throws Error.
SkeletonGraph build_polytope_graph(const HPolyhedron& P, const EnumerationResult& result);

/// Exact edge test between two vertices: rank(A_{tight(u) cap tight(v)}) = n - 1.
bool tight_sets_share_edge(const HPolyhedron& P, const VertexRecord& u, const VertexRecord& v);

/// Cones (row sets into `rays`, one ray per row) are adjacent when they share
/// n - 1 rays and the two remaining rays lie strictly on opposite sides of
/// the shared hyperplane.
SkeletonGraph build_fan_graph(const Matrix& rays, std::span<const Basis> cones);

/// Exact diameter by BFS from every node. Throws DisconnectedGraph.
Index graph_diameter(const SkeletonGraph& graph);

}  // namespace deltahull
