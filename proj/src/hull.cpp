#include "deltahull/hull.hpp"

#include <algorithm>
#include <set>

#include "deltahull/errors.hpp"

namespace deltahull {

namespace {

int sign_of(const Rational& q) { return sgn(q); }

Vector canonical_direction(Vector d) {
  auto lead = std::find_if(d.begin(), d.end(), [](const Rational& q) { return q != 0; });
  const Rational scale = abs(*lead);
  for (auto& q : d) q /= scale;
  return d;
}

// Inverse of the basis matrix after replacing B's row `leaving` with
// `entering`, with columns reordered to match the sorted target basis.
Matrix updated_inverse(const HPolyhedron& P, const Basis& B, const Matrix& inv, Index leaving,
                       Index entering) {
  const Index pos = B.position(leaving);
  Matrix in_place = basis_inverse_update(inv, pos, P.A().row(entering));
  IndexSet rows_in_place = B.rows;
  rows_in_place[pos] = entering;
  IndexSet order(rows_in_place.size());
  for (Index k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return rows_in_place[a] < rows_in_place[b]; });
  Matrix sorted(inv.rows(), inv.cols());
  for (Index i = 0; i < inv.rows(); ++i)
    for (Index k = 0; k < order.size(); ++k) sorted(i, k) = in_place(i, order[k]);
  return sorted;
}

}  // namespace

std::map<Basis, std::vector<Basis>> EnumerationResult::pivot_adjacency() const {
  std::set<std::pair<Basis, Basis>> pairs;
  for (const auto& e : pivot_edges) {
    if (e.ray()) continue;
    Basis a = e.from, b = e.to();
    if (b < a) std::swap(a, b);
    pairs.emplace(std::move(a), std::move(b));
  }
  std::map<Basis, std::vector<Basis>> adj;
  for (const auto& [a, b] : pairs) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

std::vector<PivotEdge> pivot_neighbors(const HPolyhedron& P, const Basis& B, const Matrix& inv,
                                       EnumerationWork* work) {
  const Index n = P.dim();
  const Index m = P.rows();
  Vector bB;
  for (Index i : B.rows) bB.push_back(P.b()[i]);
  const Vector v = inv * bB;
  std::uint64_t products = n;

  Vector slack(m);
  for (Index i = 0; i < m; ++i) {
    if (B.contains(i)) continue;
    slack[i] = P.b()[i] - dot(P.A().row(i), v);
    ++products;
  }

  std::vector<PivotEdge> edges;
  for (Index r = 0; r < n; ++r) {
    Vector d(n);
    for (Index j = 0; j < n; ++j) d[j] = -inv(j, r);
    std::optional<Rational> best;
    IndexSet argmin;
    for (Index i = 0; i < m; ++i) {
      if (B.contains(i)) continue;
      const Rational rate = dot(P.A().row(i), d);
      ++products;
      if (rate <= 0) continue;
      Rational step = slack[i] / rate;
      if (!best || step < *best) {
        best = step;
        argmin.assign(1, i);
      } else if (step == *best) {
        argmin.push_back(i);
      }
    }
    if (!best) {
      edges.push_back(PivotEdge{B, B.rows[r], std::nullopt, Rational(0), d});
      continue;
    }
    for (Index i : argmin) edges.push_back(PivotEdge{B, B.rows[r], i, *best, d});
  }
  if (work) {
    work->row_products += products;
    work->max_row_products_per_basis = std::max(work->max_row_products_per_basis, products);
    work->pivots += edges.size();
  }
  return edges;
}

std::vector<Basis> triangulate_normal_cone(const HPolyhedron& P, std::span<const Index> tight) {
  const Index n = P.dim();
  IndexSet order(tight.begin(), tight.end());
  std::sort(order.begin(), order.end());
  if (rank(P.A().select_rows(order)) < n)
    throw RankDeficient("tight rows do not span R^n");

  // Starting simplex: first independent rows in ascending order.
  IndexSet start;
  std::vector<Vector> span_basis;
  for (Index i : order) {
    if (start.size() == n) break;
    Vector r = orthogonal_residual(P.A().row(i), span_basis);
    if (std::any_of(r.begin(), r.end(), [](const Rational& q) { return q != 0; })) {
      start.push_back(i);
      span_basis.push_back(std::move(r));
    }
  }
  std::vector<Basis> cones{Basis(start)};
  if (order.size() == n) return cones;

  // Facet (n-1 rows) -> cones using it, with the row opposite it in each.
  struct FacetInfo {
    std::vector<std::pair<Index, Index>> owners;  // (cone, opposite row)
    Vector normal;                                // orthogonal to the facet rows
  };
  std::map<IndexSet, FacetInfo> facets;
  auto register_cone = [&](Index c) {
    const Basis& cone = cones[c];
    for (Index k = 0; k < n; ++k) {
      IndexSet facet;
      for (Index j = 0; j < n; ++j)
        if (j != k) facet.push_back(cone.rows[j]);
      auto& info = facets[facet];
      if (info.normal.empty()) {
        info.normal = adjugate_column(P.A().select_rows(cone.rows), k);
      }
      info.owners.emplace_back(c, cone.rows[k]);
    }
  };
  register_cone(0);

  for (Index p : order) {
    if (std::binary_search(start.begin(), start.end(), p)) continue;
    std::vector<IndexSet> visible;
    for (const auto& [facet, info] : facets) {
      if (info.owners.size() != 1) continue;
      const int side_opposite = sign_of(dot(info.normal, P.A().row(info.owners[0].second)));
      const int side_new = sign_of(dot(info.normal, P.A().row(p)));
      if (side_new != 0 && side_new == -side_opposite) visible.push_back(facet);
    }
    for (auto& facet : visible) {
      facet.push_back(p);
      cones.emplace_back(std::move(facet));
      register_cone(cones.size() - 1);
    }
  }
  return cones;
}

EnumerationResult enumerate_vertices(const HPolyhedron& P, const VertexRecord& v0) {
  const Index n = P.dim();
  if (v0.point.size() != n || !P.contains(v0.point))
    throw NotAVertex("starting point is not a feasible point of P");
  if (rank(P.A().select_rows(tight_set(P, v0.point))) < n)
    throw NotAVertex("tight rows of the starting point have rank < n");

  EnumerationResult result;
  std::map<Vector, Index, VectorLess> vertex_index;
  std::set<std::pair<Index, Vector>> seen_rays;
  std::map<Basis, Matrix> known_inverse;
  std::set<Basis> frontier;

  auto add_vertex = [&](const Vector& point) -> Index {
    auto it = vertex_index.find(point);
    if (it != vertex_index.end()) return it->second;
    const Index id = result.vertices.size();
    vertex_index.emplace(point, id);
    IndexSet tight = tight_set(P, point);
    const bool simple = tight.size() == n;
    auto cones = triangulate_normal_cone(P, tight);
    for (const auto& c : cones) {
      result.triangulation.cones.push_back(c);
      result.basis_owner[c] = id;
      frontier.insert(c);
    }
    result.triangulation.offsets.push_back(result.triangulation.cones.size());
    result.vertices.push_back(VertexRecord{point, std::move(tight), simple});
    return id;
  };

  add_vertex(v0.point);
  while (!frontier.empty()) {
    std::set<Basis> layer;
    layer.swap(frontier);
    for (const Basis& B : layer) {
      const Index owner = result.basis_owner.at(B);
      Matrix inv;
      if (auto it = known_inverse.find(B); it != known_inverse.end()) {
        inv = std::move(it->second);
        known_inverse.erase(it);
      } else {
        inv = inverse(P.A().select_rows(B.rows));
        ++result.work.inverse_recomputations;
      }
      ++result.work.bases_expanded;
      auto edges = pivot_neighbors(P, B, inv, &result.work);
      const Vector v = result.vertices[owner].point;  // add_vertex may reallocate
      for (auto& e : edges) {
        if (e.ray()) {
          Vector dir = canonical_direction(e.direction);
          if (seen_rays.emplace(owner, dir).second) result.rays.push_back(UnboundedEdge{owner, dir});
          result.pivot_edges.push_back(std::move(e));
          continue;
        }
        Basis target = e.to();
        if (e.step == 0) {
          result.basis_owner.emplace(target, owner);
        } else {
          Vector w(n);
          for (Index j = 0; j < n; ++j) w[j] = v[j] + e.step * e.direction[j];
          const bool fresh = !vertex_index.count(w);
          const Index id = add_vertex(w);
          result.basis_owner.emplace(target, id);
          if (fresh && frontier.count(target) && !known_inverse.count(target)) {
            try {
              known_inverse.emplace(target, updated_inverse(P, B, inv, e.leaving, *e.entering));
              ++result.work.inverse_updates;
            } catch (const SingularUpdate&) {
              // falls back to a fresh inversion on expansion
            }
          }
        }
        result.pivot_edges.push_back(std::move(e));
      }
    }
  }
  return result;
}

OracleResult enumerate_all_bases_oracle(const HPolyhedron& P, std::uint64_t budget) {
  const Index n = P.dim();
  const Index m = P.rows();
  if (binomial(m, n) > budget)
    throw BudgetExceeded("C(" + std::to_string(m) + ", " + std::to_string(n) + ") exceeds the oracle budget");
  OracleResult out;
  std::map<Vector, IndexSet, VectorLess> points;
  IndexSet subset(n);
  for (Index k = 0; k < n; ++k) subset[k] = k;
  do {
    Basis B(subset);
    Vector x;
    try {
      x = basis_vertex(P, B);
    } catch (const SingularBasis&) {
      continue;
    }
    if (!P.contains(x)) continue;
    out.feasible_bases.push_back(B);
    points.try_emplace(x, IndexSet{});
  } while (next_combination(subset, m));
  for (auto& [point, unused] : points) {
    IndexSet tight = tight_set(P, point);
    const bool simple = tight.size() == n;
    out.vertices.push_back(VertexRecord{point, std::move(tight), simple});
  }
  return out;
}

}  // namespace deltahull
