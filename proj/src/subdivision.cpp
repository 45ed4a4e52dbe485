#include "deltahull/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "deltahull/errors.hpp"

namespace deltahull {

namespace {

Rational rational_of(Index value) { return Rational(static_cast<unsigned long>(value)); }

Integer power(Index base, Index exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

}  // namespace

Matrix base_simplex(Index n) {
  if (n < 2) throw PreconditionViolated("base simplex needs n >= 2");
  Matrix rays(n + 1, n);
  for (Index i = 0; i <= n; ++i)
    for (Index j = 0; j < n; ++j) rays(i, j) = (i == j) ? rational_of(n) : Rational(-1);
  return rays;
}

std::vector<Basis> SubdivisionFan::bases() const {
  std::vector<Basis> out;
  out.reserve(cones.size());
  for (const auto& c : cones) out.emplace_back(c);
  return out;
}

SubdivisionFan base_fan(Index n) {
  SubdivisionFan fan;
  fan.n = n;
  fan.rays = base_simplex(n);
  for (Index skip = 0; skip <= n; ++skip) {
    IndexSet cone;
    for (Index i = 0; i <= n; ++i)
      if (i != skip) cone.push_back(i);
    fan.cones.push_back(std::move(cone));
  }
  return fan;
}

SubdivisionFan subdivide_fan(const SubdivisionFan& fan) {
  const Index n = fan.n;
  SubdivisionFan next;
  next.n = n;
  next.k = fan.k + 1;
  next.rays = fan.rays;
  const Rational share = Rational(1) / rational_of(n);
  for (Index c = 0; c < fan.cones.size(); ++c) {
    const IndexSet& cone = fan.cones[c];
    Vector center(n, Rational(0));
    for (Index r : cone)
      for (Index j = 0; j < n; ++j) center[j] += fan.rays(r, j);
    for (auto& q : center) q *= share;
    const Index id = next.rays.rows();
    next.rays.append_row(center);
    for (Index pos = 0; pos < n; ++pos) {
      IndexSet child = cone;
      child[pos] = id;
      next.cones.push_back(std::move(child));
      next.parent.push_back(c);
    }
  }
  return next;
}

std::vector<SubdivisionFan> subdivision_family(Index n, Index k) {
  std::vector<SubdivisionFan> family{base_fan(n)};
  for (Index d = 1; d <= k; ++d) family.push_back(subdivide_fan(family.back()));
  return family;
}

namespace {

struct Facet {
  IndexSet vertices;
  Vector normal;  // normal . p = 1 on the facet
  bool alive = true;
};

Vector facet_normal(const std::vector<Vector>& points, const IndexSet& vertices) {
  const Index n = points.front().size();
  Matrix M(0, n);
  for (Index v : vertices) M.append_row(points[v]);
  return solve(M, Vector(n, Rational(1)));
}

}  // namespace

LiftedPolytope lift_polytope(const std::vector<SubdivisionFan>& family) {
  if (family.empty()) throw PreconditionViolated("empty fan family");
  const Index n = family.front().n;
  for (Index d = 0; d < family.size(); ++d)
    if (family[d].k != d || family[d].n != n) throw PreconditionViolated("fan depths must be 0, 1, 2, ...");

  std::vector<Vector> points;
  Vector scaling;
  for (Index i = 0; i < family.front().rays.rows(); ++i) {
    points.push_back(family.front().rays.row_vector(i));
    scaling.push_back(1);
  }
  std::vector<Facet> facets;
  std::vector<Index> facet_of_cone;  // cone index at the current depth -> facet
  for (const auto& cone : family.front().cones) {
    facet_of_cone.push_back(facets.size());
    facets.push_back(Facet{cone, facet_normal(points, cone), true});
  }

  for (Index d = 1; d < family.size(); ++d) {
    const SubdivisionFan& prev = family[d - 1];
    const SubdivisionFan& fan = family[d];
    std::vector<Index> next_facet_of_cone(fan.cones.size());
    for (Index c = 0; c < prev.cones.size(); ++c) {
      const Index ray = prev.rays.rows() + c;
      const Vector v = fan.rays.row_vector(ray);
      Facet& target = facets[facet_of_cone[c]];
      const Rational lower = Rational(1) / dot(target.normal, v);
      std::optional<Rational> upper;
      for (const Facet& f : facets) {
        if (!f.alive || &f == &target) continue;
        const Rational rate = dot(f.normal, v);
        if (rate <= 0) continue;
        const Rational alpha = Rational(1) / rate;
        if (!upper || alpha < *upper) upper = alpha;
      }
      if (upper && lower >= *upper)
        throw EmptyAlphaInterval("no admissible scaling for ray " + std::to_string(ray));
      const Rational alpha = upper ? Rational((lower + *upper) / 2) : Rational(2 * lower);
      Vector p = v;
      for (auto& q : p) q *= alpha;
      points.push_back(std::move(p));
      scaling.push_back(alpha);
      target.alive = false;
      for (Index pos = 0; pos < n; ++pos) {
        const Index child = c * n + pos;
        next_facet_of_cone[child] = facets.size();
        facets.push_back(Facet{fan.cones[child], facet_normal(points, fan.cones[child]), true});
      }
    }
    facet_of_cone = std::move(next_facet_of_cone);
  }

  // Every lifted point must be a vertex: strictly beneath each facet it is not on.
  for (const Facet& f : facets) {
    if (!f.alive) continue;
    for (Index i = 0; i < points.size(); ++i) {
      if (std::find(f.vertices.begin(), f.vertices.end(), i) != f.vertices.end()) continue;
      if (dot(f.normal, points[i]) >= 1)
        throw EmptyAlphaInterval("lifted point " + std::to_string(i) + " is not strictly beneath a facet");
    }
  }

  LiftedPolytope out;
  out.vertices = Matrix::from_rows(points, n);
  out.scaling = scaling;
  for (const auto& s : scaling) out.dual_rhs.push_back(Rational(1) / s);
  return out;
}

HPolyhedron dual_instance(const SubdivisionFan& fan, const LiftedPolytope& lifted) {
  if (lifted.dual_rhs.size() != fan.rays.rows())
    throw DimensionMismatch("lifting and fan have different ray counts");
  return HPolyhedron(fan.rays, lifted.dual_rhs);
}

Matrix normalize_rays(const Matrix& rays, Index digits) {
  const Integer scale = power(10, digits);
  const Rational scale_sq = Rational(scale * scale);
  Matrix out(rays.rows(), rays.cols());
  for (Index i = 0; i < rays.rows(); ++i) {
    const Rational norm_sq = squared_norm(rays.row(i));
    if (norm_sq == 0) throw PreconditionViolated("zero ray cannot be normalized");
    for (Index j = 0; j < rays.cols(); ++j) {
      const Rational& y = rays(i, j);
      const Rational t_sq = y * y * scale_sq / norm_sq;
      Integer floor_sq;
      mpz_fdiv_q(floor_sq.get_mpz_t(), t_sq.get_num_mpz_t(), t_sq.get_den_mpz_t());
      Integer f;
      mpz_sqrt(f.get_mpz_t(), floor_sq.get_mpz_t());
      const Rational half_up = Rational(f) + Rational(1, 2);
      if (t_sq >= half_up * half_up) f += 1;
      Rational value(f, scale);
      value.canonicalize();
      out(i, j) = y < 0 ? Rational(-value) : value;
    }
  }
  return out;
}

ExpectedCounts expected_counts(Index n, Index k) {
  if (n < 2) throw PreconditionViolated("expected counts need n >= 2");
  ExpectedCounts e;
  e.delta_ratio = power(n, k);
  e.cones = e.delta_ratio * static_cast<unsigned long>(n + 1);
  e.diameter = power(2, k + 1) - 1;
  return e;
}

double density_profile(const SubdivisionFan& fan, Index samples) {
  if (samples == 0) throw PreconditionViolated("density profile needs at least one sample");
  const Index n = fan.n;
  std::vector<std::vector<double>> rays;
  for (Index i = 0; i < fan.rays.rows(); ++i) {
    std::vector<double> r;
    for (Index j = 0; j < n; ++j) r.push_back(fan.rays(i, j).get_d());
    rays.push_back(std::move(r));
  }
  const double s = static_cast<double>(samples);
  double worst = 0;
  for (Index skip = 0; skip <= n; ++skip) {
    IndexSet corners;
    for (Index i = 0; i <= n; ++i)
      if (i != skip) corners.push_back(i);
    // Compositions c of samples - 1 into n parts; lambda_j = (c_j + 1/n) / s.
    std::vector<Index> c(n, 0);
    c[0] = samples - 1;
    for (;;) {
      std::vector<double> point(n, 0.0);
      for (Index t = 0; t < n; ++t) {
        const double lambda = (static_cast<double>(c[t]) + 1.0 / static_cast<double>(n)) / s;
        for (Index j = 0; j < n; ++j) point[j] += lambda * rays[corners[t]][j];
      }
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& r : rays) {
        double d2 = 0;
        for (Index j = 0; j < n; ++j) d2 += (point[j] - r[j]) * (point[j] - r[j]);
        nearest = std::min(nearest, d2);
      }
      worst = std::max(worst, std::sqrt(nearest));
      // Next composition in reverse-lexicographic order.
      Index t = n - 1;
      while (t > 0 && c[t - 1] == 0) --t;
      if (t == 0) break;
      const Index tail = c[n - 1];
      c[n - 1] = 0;
      c[t - 1] -= 1;
      c[t] = tail + 1;
    }
  }
  return worst;
}

std::vector<TightnessRow> tightness_experiment(Index n, Index k_max, Index digits, std::uint64_t budget) {
  std::vector<TightnessRow> table;
  SubdivisionFan fan = base_fan(n);
  const double scale = factorial(n).get_d() * unit_ball_volume(n);
  for (Index k = 0;; ++k) {
    const Matrix R = normalize_rays(fan.rays, digits);
    const auto cones = fan.bases();
    const FanStats stats = triangulation_stats(R, cones, compute_delta(R, budget));
    TightnessRow row;
    row.k = k;
    row.cones = stats.cone_count;
    row.delta = stats.delta;
    row.delta_avg = stats.delta_avg;
    row.delta_ratio = Rational(stats.delta / stats.delta_avg).get_d();
    row.rhs = scale * row.delta_ratio;
    row.ratio = static_cast<double>(row.cones) / row.rhs;
    table.push_back(row);
    if (k == k_max) break;
    fan = subdivide_fan(fan);
  }
  return table;
}

}  // namespace deltahull
