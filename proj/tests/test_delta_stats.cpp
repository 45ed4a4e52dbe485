#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
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

const BoundCheck& named(const std::vector<BoundCheck>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  return checks.front();
}

}  // namespace

TEST_CASE("delta examples") {
  CHECK(delta_max_exhaustive(Matrix::identity(3), 10).value == 1);
  auto square = corpus::unit_square();
  CHECK(delta_max_exhaustive(square.A, 100).value == 1);
  DeltaResult r = delta_max_exhaustive(Matrix{{2, 1}, {1, 2}, {1, 0}}, 100);
  CHECK(r.value == 3);
  CHECK(r.witness == Basis({0, 1}));
  CHECK(r.minors_evaluated == 3);
  CHECK_THROWS_AS(delta_max_exhaustive(Matrix{{1, 0}, {0, 1}, {1, 1}, {2, 3}}, 3), BudgetExceeded);
  CHECK(delta_max_exhaustive(base_simplex(2), 100).value == 3);
  CHECK(delta_max_exhaustive(base_simplex(3), 100).value == 16);
}

TEST_CASE("ties keep the lexicographically smallest witness") {
  // Every pair of the cross-polytope rows in 2D has |det| 0 or 2.
  auto diamond = corpus::cross_polytope(2);
  DeltaResult r = delta_max_exhaustive(diamond.A, 100);
  CHECK(r.value == 2);
  CHECK(r.witness == Basis({0, 1}));
  CHECK(delta_max_branch_and_bound(diamond.A).witness == r.witness);
}

TEST_CASE("all delta strategies agree with the all-minor oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 + trial % 3;
    const Index m = n + 1 + rng() % 7;
    Matrix A = oracle::random_integer_matrix(rng, m, n, -6, 6);
    if (rank(A) < n) continue;
    const Rational expected = oracle::all_minor_delta(A);
    DeltaResult ex = delta_max_exhaustive(A, 1'000'000);
    DeltaResult bb = delta_max_branch_and_bound(A);
    DeltaResult er = delta_max_extreme(A);
    CHECK(ex.value == expected);
    CHECK(bb.value == expected);
    CHECK(er.value == expected);
    CHECK(bb.witness == ex.witness);
    CHECK(abs(det(A.select_rows(er.witness.rows))) == expected);
    CHECK(compute_delta(A, 5).value == expected);
  }
}

TEST_CASE("extreme rows") {
  // (1,1) = ((2,0) + (0,2)) / 2 is not extreme; the duplicate -(2,0) is dropped.
  Matrix A{{2, 0}, {1, 1}, {0, 2}, {-2, 0}};
  CHECK(extreme_rows(A) == IndexSet{0, 2});
  // Subdivision rays beyond the base simplex are interior to conv(+-rays).
  const auto fan = subdivision_family(2, 2).back();
  CHECK(extreme_rows(fan.rays) == IndexSet{0, 1, 2});
}

TEST_CASE("fan statistics of the unit square") {
  HPolyhedron P = make(corpus::unit_square());
  auto r = enumerate(P);
  FanStats s = triangulation_stats(P.A(), r.triangulation.cones, 1000);
  CHECK(s.delta == 1);
  CHECK(s.delta_avg == 1);
  CHECK(s.delta_min == 1);
  CHECK(s.cone_count == 4);
  CHECK(s.det_sum == 4);
  CHECK(s.det_square_sum == 4);
  CHECK(s.fan_volume == 2);
}

TEST_CASE("factorial and unit-ball volumes") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
  CHECK(unit_ball_volume(4) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0));
  for (Index n = 1; n <= 12; ++n) {
    const double gamma = std::tgamma(n / 2.0 + 1.0);
    CHECK(unit_ball_volume(n) == doctest::Approx(std::pow(std::numbers::pi, n / 2.0) / gamma).epsilon(1e-12));
  }
}

TEST_CASE("bound checks on the square and the cube") {
  HPolyhedron P = make(corpus::unit_square());
  auto r = enumerate(P);
  FanStats s = triangulation_stats(P.A(), r.triangulation.cones, 1000);
  auto v = check_vertex_bound(r.vertices.size(), s, 2);
  const auto& t1 = named(v, "theorem-1");
  CHECK(t1.pass);
  CHECK(t1.lhs == 4);
  CHECK(t1.rhs == doctest::Approx(2 * std::numbers::pi));
  CHECK(named(v, "vertices-at-most-cones").pass);
  auto f = check_fan_bound(s, 2);
  const auto& vol = named(f, "fan-volume");
  CHECK(vol.pass);
  REQUIRE(vol.lhs_exact);
  CHECK(*vol.lhs_exact == 2);
  CHECK(vol.rhs == doctest::Approx(std::numbers::pi));
  CHECK_NOTHROW(require(t1));

  HPolyhedron cube = make(corpus::box(3, 0, 1));
  auto rc = enumerate(cube);
  FanStats sc = triangulation_stats(cube.A(), rc.triangulation.cones, 1000);
  for (const auto& c : check_vertex_bound(rc.vertices.size(), sc, 3)) CHECK(c.pass);
  for (const auto& c : check_fan_bound(sc, 3)) CHECK(c.pass);
}

TEST_CASE("a failing check throws BoundViolated") {
  BoundCheck bad{"theorem-1", Rational(5), std::nullopt, 5.0, 4.0, false};
  CHECK_THROWS_AS(require(bad), BoundViolated);
  // A right side that is too small by construction fails the check.
  FanStats fake;
  fake.delta = 1;
  fake.delta_avg = 1;
  fake.delta_min = 1;
  fake.cone_count = 100;
  fake.det_sum = 100;
  fake.det_square_sum = 100;
  fake.fan_volume = 50;
  auto checks = check_fan_bound(fake, 2);
  CHECK_FALSE(named(checks, "fan-volume").pass);
  CHECK_FALSE(named(checks, "fan-size").pass);
}

TEST_CASE("total unimodularity after the basis transform") {
  CHECK(verify_total_unimodularity(Matrix{{1, 0}, {0, 1}, {1, 1}}, 1000));
  CHECK_FALSE(verify_total_unimodularity(Matrix{{1, 1}, {1, -1}}, 1000));
  CHECK(max_abs_minor(Matrix{{2, 1}, {1, 2}}, 1000) == 3);
  std::mt19937_64 rng(41);
  CHECK_THROWS_AS(max_abs_minor(oracle::random_integer_matrix(rng, 12, 4, -3, 3), 5), BudgetExceeded);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + trial % 3;
    Matrix A = oracle::random_integer_matrix(rng, n + 3, n, -5, 5);
    if (rank(A) < n) continue;
    DeltaResult d = delta_max_exhaustive(A, 100000);
    Matrix T = totally_unimodular_transform(A, d.witness);
    // Rows of the witness map to unit vectors.
    for (Index k = 0; k < n; ++k) {
      Vector e(n, Rational(0));
      e[k] = 1;
      CHECK(T.row_vector(d.witness.rows[k]) == e);
    }
    CHECK(oracle::all_minor_max(T) <= 1);
    CHECK(max_abs_minor(T, 1'000'000) == oracle::all_minor_max(T));
  }
  CHECK_THROWS_AS(totally_unimodular_transform(Matrix{{1, 0}, {2, 0}, {0, 1}}, Basis({0, 1})), SingularBasis);
}

TEST_CASE("delta distance") {
  // Orthogonal rows: each row is at full distance from the other's span.
  HPolyhedron P = make(corpus::unit_square());
  auto r = enumerate(P);
  DeltaDistance d = local_delta_distance(P.A(), r.triangulation.cones);
  CHECK(d.sin_squared == 1);
  CHECK(d.delta == doctest::Approx(1.0));
  // 45 degrees: sin^2 = 1/2.
  Matrix A{{1, 0}, {1, 1}};
  d = local_delta_distance(A, std::vector<Basis>{Basis({0, 1})});
  CHECK(d.sin_squared == Rational(1, 2));
  // Against a direct projection computation.
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix M = oracle::random_integer_matrix(rng, 3, 3, -4, 4);
    if (det(M) == 0) continue;
    d = local_delta_distance(M, std::vector<Basis>{Basis({0, 1, 2})});
    Rational best = -1;
    for (Index i = 0; i < 3; ++i) {
      Matrix others(0, 3);
      for (Index j = 0; j < 3; ++j)
        if (j != i) others.append_row(M.row_vector(j));
      Vector res = orthogonal_residual(M.row_vector(i), orthogonal_row_basis(others));
      Rational s = dot(res, res) / dot(M.row_vector(i), M.row_vector(i));
      if (best < 0 || s < best) best = s;
    }
    CHECK(d.sin_squared == best);
  }
}

TEST_CASE("wideness floor and the tau diameter bound") {
  CHECK(tau_diameter_bound(2, 0.5) == doctest::Approx(8.0 * 2 / 0.5 * (1 + std::log(2.0))));
  for (const auto& doc : {corpus::unit_square(), corpus::box(3, -1, 1), corpus::square_pyramid(2, 3)}) {
    HPolyhedron P = make(doc);
    auto r = enumerate(P);
    FanStats s = triangulation_stats(P.A(), r.triangulation.cones, 1'000'000);
    WidenessReport w = wideness_and_diameter_bound(P.A(), s, r.triangulation.cones);
    CHECK(w.floor_holds);
    CHECK(w.distance_floor == s.delta_min / (P.dim() * s.delta));
    CHECK(w.distance.sin_squared >= w.distance_floor * w.distance_floor);
    CHECK(w.tau == doctest::Approx(w.distance.delta / P.dim()));
    CHECK(w.diameter_bound == doctest::Approx(tau_diameter_bound(P.dim(), w.tau)));
  }
}

TEST_CASE("fan statistics of generated duals") {
  for (Index k = 0; k <= 2; ++k) {
    auto g = generate_subdivision(2, k);
    HPolyhedron P = make(g.instance);
    auto r = enumerate(P);
    FanStats s = triangulation_stats(P.A(), r.triangulation.cones, 1'000'000);
    CHECK(s.cone_count == 3 * (1 << k));
    CHECK(s.delta == 3);
    CHECK(s.delta / s.delta_min == Rational(1 << k));
    // Sum of |det| is the same fan volume at every depth.
    CHECK(s.det_sum == 9);
  }
}
