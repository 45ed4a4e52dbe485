#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "deltahull/errors.hpp"
#include "deltahull/pipeline.hpp"
#include "oracles.hpp"

using namespace deltahull;

namespace {

HPolyhedron make(const InstanceDocument& d) { return HPolyhedron(d.A, d.b); }

EnumerationResult enumerate(const HPolyhedron& P) {
  auto x0 = phase_one(P);
  REQUIRE(x0);
  return enumerate_vertices(P, find_initial_vertex(P, *x0));
}

SkeletonGraph cycle(Index n) {
  std::vector<std::pair<Index, Index>> edges;
  for (Index i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return make_graph(SkeletonGraph::Kind::Polytope, n, edges);
}

}  // namespace

TEST_CASE("make_graph dedups, sorts and drops loops") {
  SkeletonGraph g = make_graph(SkeletonGraph::Kind::Fan, 3, {{0, 1}, {1, 0}, {2, 2}, {2, 0}});
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacency[0] == std::vector<Index>{1, 2});
  CHECK(g.adjacency[2] == std::vector<Index>{0});
}

TEST_CASE("diameter examples") {
  CHECK(graph_diameter(cycle(4)) == 2);
  CHECK(graph_diameter(cycle(7)) == 3);
  CHECK(graph_diameter(make_graph(SkeletonGraph::Kind::Polytope, 1, {})) == 0);
  CHECK_THROWS_AS(graph_diameter(make_graph(SkeletonGraph::Kind::Polytope, 3, {{0, 1}})), DisconnectedGraph);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + rng() % 12;
    std::vector<std::pair<Index, Index>> edges;
    for (Index i = 1; i < n; ++i) edges.emplace_back(i, rng() % i);  // spanning tree
    for (int extra = 0; extra < 4; ++extra) edges.emplace_back(rng() % n, rng() % n);
    SkeletonGraph g = make_graph(SkeletonGraph::Kind::Polytope, n, edges);
    CHECK(graph_diameter(g) == oracle::diameter_of(g.adjacency));
  }
}

TEST_CASE("polytope graphs") {
  {
    HPolyhedron P = make(corpus::unit_square());
    SkeletonGraph g = build_polytope_graph(P, enumerate(P));
    CHECK(g.edge_count() == 4);
    CHECK(graph_diameter(g) == 2);
  }
  {
    HPolyhedron P = make(corpus::box(3, 0, 1));
    SkeletonGraph g = build_polytope_graph(P, enumerate(P));
    CHECK(g.edge_count() == 12);
    for (const auto& nbrs : g.adjacency) CHECK(nbrs.size() == 3);
    CHECK(graph_diameter(g) == 3);
  }
  {
    HPolyhedron P = make(corpus::box(4, 0, 1));
    CHECK(graph_diameter(build_polytope_graph(P, enumerate(P))) == 4);
  }
  {
    // Square pyramid: 8 edges, apex adjacent to every base corner.
    HPolyhedron P = make(corpus::square_pyramid(1, 1));
    auto r = enumerate(P);
    SkeletonGraph g = build_polytope_graph(P, r);
    CHECK(g.edge_count() == 8);
    CHECK(graph_diameter(g) == 2);
  }
  {
    // Octahedron: 12 edges, opposite vertices at distance 2.
    HPolyhedron P = make(corpus::cross_polytope(3));
    SkeletonGraph g = build_polytope_graph(P, enumerate(P));
    CHECK(g.edge_count() == 12);
    CHECK(graph_diameter(g) == 2);
  }
}

TEST_CASE("polytope graph matches the tight-set edge test on random instances") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    HPolyhedron P = make(random_instance(rng, 3, 9));
    auto r = enumerate(P);
    SkeletonGraph g = build_polytope_graph(P, r);
    for (Index u = 0; u < r.vertices.size(); ++u)
      for (Index v = u + 1; v < r.vertices.size(); ++v) {
        // Rank test, independent of pivoting.
        IndexSet common;
        std::set_intersection(r.vertices[u].tight.begin(), r.vertices[u].tight.end(),
                              r.vertices[v].tight.begin(), r.vertices[v].tight.end(),
                              std::back_inserter(common));
        const bool edge = rank(P.A().select_rows(common)) == P.dim() - 1;
        CHECK(edge == tight_sets_share_edge(P, r.vertices[u], r.vertices[v]));
        CHECK(edge == std::binary_search(g.adjacency[u].begin(), g.adjacency[u].end(), v));
      }
  }
}

TEST_CASE("fan graphs") {
  // Normal fan of the square: 4 quadrants in a cycle.
  HPolyhedron P = make(corpus::unit_square());
  auto r = enumerate(P);
  SkeletonGraph f = build_fan_graph(P.A(), r.triangulation.cones);
  CHECK(f.kind == SkeletonGraph::Kind::Fan);
  CHECK(f.edge_count() == 4);
  CHECK(graph_diameter(f) == 2);

  // Two cones sharing a facet but lying on the same side are not adjacent.
  Matrix rays{{1, 0}, {1, 1}, {1, 2}};
  SkeletonGraph same_side = build_fan_graph(rays, std::vector<Basis>{Basis({0, 1}), Basis({0, 2})});
  CHECK(same_side.edge_count() == 0);
  SkeletonGraph opposite = build_fan_graph(rays, std::vector<Basis>{Basis({0, 1}), Basis({1, 2})});
  CHECK(opposite.edge_count() == 1);
}

TEST_CASE("fan graph equals the combinatorial oracle on complete fans") {
  for (Index n = 2; n <= 4; ++n)
    for (Index k = 0; k <= 2; ++k) {
      SubdivisionFan fan = subdivision_family(n, k).back();
      SkeletonGraph g = build_fan_graph(fan.rays, fan.bases());
      std::vector<IndexSet> sorted;
      for (const auto& B : fan.bases()) sorted.push_back(B.rows);
      CHECK(g.adjacency == oracle::combinatorial_fan_graph(sorted));
    }
}

TEST_CASE("polytope graph and normal fan graph coincide on simple polytopes") {
  for (const auto& doc : {corpus::box(3, 0, 2), corpus::standard_simplex(3, 2)}) {
    HPolyhedron P = make(doc);
    auto r = enumerate(P);
    SkeletonGraph pg = build_polytope_graph(P, r);
    SkeletonGraph fg = build_fan_graph(P.A(), r.triangulation.cones);
    CHECK(pg.edge_count() == fg.edge_count());
    CHECK(graph_diameter(pg) == graph_diameter(fg));
  }
}
