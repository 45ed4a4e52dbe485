#include "deltahull/fan_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "deltahull/errors.hpp"

namespace deltahull {

Index SkeletonGraph::edge_count() const {
  Index twice = 0;
  for (const auto& nbrs : adjacency) twice += nbrs.size();
  return twice / 2;
}

SkeletonGraph make_graph(SkeletonGraph::Kind kind, Index nodes,
                         const std::vector<std::pair<Index, Index>>& edges) {
  SkeletonGraph g;
  g.kind = kind;
  g.adjacency.resize(nodes);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& nbrs : g.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

bool tight_sets_share_edge(const HPolyhedron& P, const VertexRecord& u, const VertexRecord& v) {
  IndexSet common;
  std::set_intersection(u.tight.begin(), u.tight.end(), v.tight.begin(), v.tight.end(),
                        std::back_inserter(common));
  if (common.empty()) return P.dim() == 1;
  return rank(P.A().select_rows(common)) + 1 == P.dim();
}

SkeletonGraph build_polytope_graph(const HPolyhedron& P, const EnumerationResult& result) {
  const bool simple = std::all_of(result.vertices.begin(), result.vertices.end(),
                                  [](const VertexRecord& v) { return v.simple; });
  std::vector<std::pair<Index, Index>> edges;
  for (const auto& e : result.pivot_edges) {
    if (e.ray() || e.step == 0) continue;
    const Index a = result.basis_owner.at(e.from);
    const Index b = result.basis_owner.at(e.to());
    if (!simple && !tight_sets_share_edge(P, result.vertices[a], result.vertices[b]))
      throw Error(ErrorKind::PreconditionViolated,
                  "pivot edge between vertices " + std::to_string(a) + " and " + std::to_string(b) +
                      " fails the tight-set rank test");
    edges.emplace_back(a, b);
  }
  return make_graph(SkeletonGraph::Kind::Polytope, result.vertices.size(), edges);
}

SkeletonGraph build_fan_graph(const Matrix& rays, std::span<const Basis> cones) {
  const Index n = rays.cols();
  struct Side {
    Index cone;
    int sign;  // side of the opposite ray relative to the facet normal
  };
  std::map<IndexSet, std::vector<Side>> by_facet;
  for (Index c = 0; c < cones.size(); ++c) {
    const Matrix M = rays.select_rows(cones[c].rows);
    for (Index k = 0; k < n; ++k) {
      IndexSet facet;
      for (Index j = 0; j < n; ++j)
        if (j != k) facet.push_back(cones[c].rows[j]);
      // Sign relative to a normal fixed by the facet alone, so the two cones
      // of a shared facet are comparable.
      const Matrix F = rays.select_rows(facet);
      Matrix probe(n, n);
      for (Index j = 0; j + 1 < n; ++j)
        for (Index t = 0; t < n; ++t) probe(j, t) = F(j, t);
      for (Index t = 0; t < n; ++t) probe(n - 1, t) = M(k, t);
      by_facet[facet].push_back(Side{c, sgn(det(probe))});
    }
  }
  std::vector<std::pair<Index, Index>> edges;
  for (const auto& [facet, sides] : by_facet)
    for (Index a = 0; a < sides.size(); ++a)
      for (Index b = a + 1; b < sides.size(); ++b)
        if (sides[a].sign != 0 && sides[a].sign == -sides[b].sign)
          edges.emplace_back(sides[a].cone, sides[b].cone);
  return make_graph(SkeletonGraph::Kind::Fan, cones.size(), edges);
}

Index graph_diameter(const SkeletonGraph& graph) {
  const Index count = graph.node_count();
  Index diameter = 0;
  std::vector<Index> dist(count);
  constexpr Index unseen = static_cast<Index>(-1);
  for (Index s = 0; s < count; ++s) {
    std::fill(dist.begin(), dist.end(), unseen);
    dist[s] = 0;
    std::deque<Index> queue{s};
    Index reached = 1;
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      for (Index w : graph.adjacency[u]) {
        if (dist[w] != unseen) continue;
        dist[w] = dist[u] + 1;
        diameter = std::max(diameter, dist[w]);
        ++reached;
        queue.push_back(w);
      }
    }
    if (reached != count)
      throw DisconnectedGraph("graph is disconnected (" + std::to_string(reached) + " of " +
                              std::to_string(count) + " nodes reachable)");
  }
  return diameter;
}

}  // namespace deltahull
