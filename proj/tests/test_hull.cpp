#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

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

std::set<Vector, VectorLess> point_set(const std::vector<VertexRecord>& vs) {
  std::set<Vector, VectorLess> out;
  for (const auto& v : vs) out.insert(v.point);
  return out;
}

Rational abs_det_sum(const HPolyhedron& P, std::span<const Basis> cones) {
  Rational s = 0;
  for (const auto& B : cones) s += abs(oracle::cofactor_det(P.A().select_rows(B.rows)));
  return s;
}

Index bounded_edge_count(const EnumerationResult& r) {
  std::set<std::pair<Index, Index>> edges;
  for (const auto& e : r.pivot_edges) {
    if (e.ray() || e.step == 0) continue;
    Index a = r.basis_owner.at(e.from), b = r.basis_owner.at(e.to());
    edges.emplace(std::min(a, b), std::max(a, b));
  }
  return edges.size();
}

}  // namespace

TEST_CASE("unit square") {
  HPolyhedron P = make(corpus::unit_square());
  auto r = enumerate(P);
  CHECK(r.vertices.size() == 4);
  CHECK(r.triangulation.size() == 4);
  CHECK(bounded_edge_count(r) == 4);
  CHECK(r.bounded());
  CHECK(r.work.bases_expanded == 4);
}

TEST_CASE("3-cube") {
  HPolyhedron P = make(corpus::box(3, 0, 1));
  auto r = enumerate(P);
  CHECK(r.vertices.size() == 8);
  CHECK(r.triangulation.size() == 8);
  CHECK(bounded_edge_count(r) == 12);
  for (const auto& v : r.vertices) CHECK(v.simple);
}

TEST_CASE("square pyramid with a degenerate apex") {
  HPolyhedron P = make(corpus::square_pyramid(1, 1));
  auto r = enumerate(P);
  CHECK(r.vertices.size() == 5);
  const auto brute = oracle::brute_force_vertices(P.A(), P.b());
  REQUIRE(brute.size() == 5);
  for (Index v = 0; v < r.vertices.size(); ++v) {
    const auto& rec = r.vertices[v];
    if (rec.point == Vector{0, 0, 1}) {
      CHECK_FALSE(rec.simple);
      CHECK(rec.tight.size() == 4);
      CHECK(r.triangulation.cones_of(v).size() == 2);
    } else {
      CHECK(r.triangulation.cones_of(v).size() == 1);
    }
  }
  CHECK(r.triangulation.size() == 6);
  // Oracle: feasible bases from all C(5, 3) subsets.
  const auto oracle_result = enumerate_all_bases_oracle(P, 1000);
  CHECK(point_set(oracle_result.vertices) == point_set(r.vertices));
}

TEST_CASE("pivot neighbors") {
  HPolyhedron P = make(corpus::unit_square());
  Basis B({0, 2});  // x <= 1, y <= 1 at (1, 1)
  auto edges = pivot_neighbors(P, B, inverse(P.A().select_rows(B.rows)));
  REQUIRE(edges.size() == 2);
  const auto& leave_x = edges[0].leaving == 0 ? edges[0] : edges[1];
  CHECK(leave_x.entering == Index{1});
  CHECK(leave_x.step == 1);
  Vector target(2);
  for (Index j = 0; j < 2; ++j) target[j] = Rational(1) + leave_x.step * leave_x.direction[j];
  CHECK(target == Vector{0, 1});

  HPolyhedron Q = make(corpus::quadrant());
  Basis origin({0, 1});
  auto rays = pivot_neighbors(Q, origin, inverse(Q.A().select_rows(origin.rows)));
  REQUIRE(rays.size() == 2);
  CHECK(rays[0].ray());
  CHECK(rays[1].ray());
}

TEST_CASE("degenerate pivots at the pyramid apex") {
  HPolyhedron P = make(corpus::square_pyramid(1, 1));
  Basis apex({1, 2, 3});
  REQUIRE(basis_vertex(P, apex) == Vector{0, 0, 1});
  auto edges = pivot_neighbors(P, apex, inverse(P.A().select_rows(apex.rows)));
  bool degenerate = false;
  for (const auto& e : edges)
    if (e.degenerate()) {
      degenerate = true;
      CHECK(basis_vertex(P, e.to()) == Vector{0, 0, 1});
    }
  CHECK(degenerate);
}

TEST_CASE("placing triangulation") {
  HPolyhedron simple = make(corpus::box(3, 0, 1));
  CHECK(triangulate_normal_cone(simple, IndexSet{0, 2, 4}) == std::vector<Basis>{Basis({0, 2, 4})});

  // Apex rows of the pyramid in cyclic order: (1,0,1), (0,1,1), (-1,0,1), (0,-1,1).
  HPolyhedron apex(Matrix{{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}, Vector{1, 1, 1, 1});
  auto cones = triangulate_normal_cone(apex, IndexSet{0, 1, 2, 3});
  CHECK(cones == std::vector<Basis>{Basis({0, 1, 2}), Basis({0, 2, 3})});
  // Volume additivity against the other diagonal split.
  CHECK(abs_det_sum(apex, cones) == abs_det_sum(apex, std::vector<Basis>{Basis({0, 1, 3}), Basis({1, 2, 3})}));

  // 2D cone with the middle generator on the segment between the outer two.
  HPolyhedron fan(Matrix{{2, 0}, {1, 1}, {0, 2}, {-1, -1}}, Vector{2, 2, 2, 2});
  auto two = triangulate_normal_cone(fan, IndexSet{0, 1, 2});
  CHECK(two.size() == 2);
  CHECK(abs_det_sum(fan, two) == abs(det(Matrix{{2, 0}, {0, 2}})));

  CHECK_THROWS_AS(triangulate_normal_cone(fan, IndexSet{0}), RankDeficient);
}

TEST_CASE("rays of unbounded polyhedra") {
  HPolyhedron Q = make(corpus::quadrant());
  auto r = enumerate_vertices(Q, find_initial_vertex(Q, Vector{1, 1}));
  CHECK(r.vertices.size() == 1);
  CHECK(r.rays.size() == 2);
  CHECK_FALSE(r.bounded());
  CHECK_THROWS_AS(enumerate_vertices(Q, VertexRecord{Vector{1, 1}, {}, false}), NotAVertex);
}

TEST_CASE("oracle equivalence and invariants on random instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    HPolyhedron P = make(random_instance(rng, 3, 10));
    auto r = enumerate(P);
    auto o = enumerate_all_bases_oracle(P, 100000);
    CHECK(point_set(r.vertices) == point_set(o.vertices));
    // Independent brute force with Cramer's rule and tight sets.
    auto brute = oracle::brute_force_vertices(P.A(), P.b());
    REQUIRE(brute.size() == r.vertices.size());
    for (const auto& v : r.vertices) {
      auto it = std::find_if(brute.begin(), brute.end(), [&](const auto& b) { return b.point == v.point; });
      REQUIRE(it != brute.end());
      CHECK(it->tight == v.tight);
    }
    // Every triangulation basis is feasible and owned by its vertex.
    for (Index v = 0; v < r.vertices.size(); ++v)
      for (const auto& B : r.triangulation.cones_of(v)) {
        CHECK(basis_vertex(P, B) == r.vertices[v].point);
        for (Index i : B.rows) CHECK(std::binary_search(r.vertices[v].tight.begin(), r.vertices[v].tight.end(), i));
      }
    // Step semantics.
    for (const auto& e : r.pivot_edges) {
      if (e.ray()) continue;
      const bool same = basis_vertex(P, e.from) == basis_vertex(P, e.to());
      CHECK(same == (e.step == 0));
    }
    CHECK(r.work.bases_expanded == r.triangulation.size());
  }
}

TEST_CASE("degenerate cube corners triangulate with exact volume") {
  // Octahedron: every vertex has 4 tight rows.
  HPolyhedron P = make(corpus::cross_polytope(3));
  auto r = enumerate(P);
  CHECK(r.vertices.size() == 6);
  for (Index v = 0; v < r.vertices.size(); ++v) {
    CHECK(r.vertices[v].tight.size() == 4);
    auto cones = r.triangulation.cones_of(v);
    CHECK(cones.size() == 2);
    // Normal cone over a square: both diagonal splits have equal volume.
    const auto& t = r.vertices[v].tight;
    Rational a = abs_det_sum(P, cones);
    Rational d1 = abs(det(P.A().select_rows(IndexSet{t[0], t[1], t[2]}))) +
                  abs(det(P.A().select_rows(IndexSet{t[1], t[2], t[3]})));
    Rational d2 = abs(det(P.A().select_rows(IndexSet{t[0], t[1], t[3]}))) +
                  abs(det(P.A().select_rows(IndexSet{t[0], t[2], t[3]})));
    CHECK(a == std::max(d1, d2));
  }
}

TEST_CASE("oracle budget") {
  HPolyhedron P = make(corpus::box(4, 0, 1));
  CHECK_THROWS_AS(enumerate_all_bases_oracle(P, 10), BudgetExceeded);
}
