#include "deltahull/polyhedron.hpp"

#include <algorithm>
#include <set>

#include "deltahull/errors.hpp"
#include "deltahull/linear_program.hpp"

namespace deltahull {

Basis::Basis(IndexSet r) : rows(std::move(r)) {
  std::sort(rows.begin(), rows.end());
  if (std::adjacent_find(rows.begin(), rows.end()) != rows.end())
    throw DimensionMismatch("basis with repeated row index");
}

bool Basis::contains(Index row) const { return std::binary_search(rows.begin(), rows.end(), row); }

Basis Basis::replace(Index leaving, Index entering) const {
  IndexSet r = rows;
  *std::find(r.begin(), r.end(), leaving) = entering;
  return Basis(std::move(r));
}

Index Basis::position(Index row) const {
  return static_cast<Index>(std::lower_bound(rows.begin(), rows.end(), row) - rows.begin());
}

namespace {

// (A_i, b_i) scaled so the first nonzero entry of A_i has absolute value 1.
Vector normalized_constraint(const Matrix& A, const Vector& b, Index i) {
  Vector row = A.row_vector(i);
  row.push_back(b[i]);
  auto lead = std::find_if(row.begin(), row.end(), [](const Rational& q) { return q != 0; });
  const Rational scale = abs(*lead);
  for (auto& q : row) q /= scale;
  return row;
}

}  // namespace

HPolyhedron::HPolyhedron(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
  if (b_.size() != A_.rows())
    throw DimensionMismatch("right-hand side has " + std::to_string(b_.size()) + " entries for " +
                            std::to_string(A_.rows()) + " rows");
  if (A_.cols() == 0) throw DimensionMismatch("polyhedron of dimension 0");
  std::set<Vector, VectorLess> seen;
  for (Index i = 0; i < A_.rows(); ++i) {
    auto r = A_.row(i);
    if (std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; }))
      throw ParseError("row " + std::to_string(i) + " of A is zero");
    if (!seen.insert(normalized_constraint(A_, b_, i)).second)
      throw ParseError("row " + std::to_string(i) + " duplicates an earlier constraint");
  }
  if (rank(A_) < A_.cols())
    throw NotPointed("rank(A) = " + std::to_string(rank(A_)) + " < n = " + std::to_string(A_.cols()));
}

HPolyhedron HPolyhedron::select_rows(std::span<const Index> rows) const {
  Vector b;
  for (Index i : rows) b.push_back(b_[i]);
  return HPolyhedron(A_.select_rows(rows), std::move(b));
}

Rational HPolyhedron::slack_violation(Index i, std::span<const Rational> x) const {
  return dot(A_.row(i), x) - b_[i];
}

bool HPolyhedron::contains(std::span<const Rational> x) const {
  for (Index i = 0; i < rows(); ++i)
    if (slack_violation(i, x) > 0) return false;
  return true;
}

Vector basis_vertex(const HPolyhedron& P, const Basis& B) {
  if (B.size() != P.dim()) throw SingularBasis("basis size differs from the dimension");
  Vector rhs;
  for (Index i : B.rows) rhs.push_back(P.b()[i]);
  try {
    return solve(P.A().select_rows(B.rows), rhs);
  } catch (const SingularMatrix&) {
    throw SingularBasis("A_B is singular");
  }
}

bool is_feasible_basis(const HPolyhedron& P, const Basis& B) {
  try {
    return P.contains(basis_vertex(P, B));
  } catch (const SingularBasis&) {
    return false;
  }
}

IndexSet tight_set(const HPolyhedron& P, std::span<const Rational> x) {
  IndexSet tight;
  for (Index i = 0; i < P.rows(); ++i) {
    const Rational s = P.slack_violation(i, x);
    if (s > 0) throw InfeasiblePoint("point violates row " + std::to_string(i));
    if (s == 0) tight.push_back(i);
  }
  return tight;
}

VertexRecord find_initial_vertex(const HPolyhedron& P, std::span<const Rational> x0) {
  const Index n = P.dim();
  Vector x(x0.begin(), x0.end());
  IndexSet tight = tight_set(P, x);
  for (;;) {
    const Matrix tight_rows = P.A().select_rows(tight);
    const auto span_basis = orthogonal_row_basis(tight_rows);
    if (span_basis.size() == n) break;

    Vector d;
    for (Index j = 0; j < n; ++j) {
      Vector e(n, Rational(0));
      e[j] = 1;
      d = orthogonal_residual(e, span_basis);
      if (std::any_of(d.begin(), d.end(), [](const Rational& q) { return q != 0; })) break;
    }

    // Farthest feasible point along d, or along -d if d is unbounded.
    auto max_step = [&](int sign) -> std::optional<Rational> {
      std::optional<Rational> best;
      for (Index i = 0; i < P.rows(); ++i) {
        Rational rate = dot(P.A().row(i), d);
        if (sign < 0) rate = -rate;
        if (rate <= 0) continue;
        Rational step = -P.slack_violation(i, x) / rate;
        if (!best || step < *best) best = step;
      }
      return best;
    };
    int sign = 1;
    auto step = max_step(1);
    if (!step) {
      sign = -1;
      step = max_step(-1);
    }
    if (!step) throw UnboundedLine("the polyhedron contains a line; A is not of full column rank");
    for (Index j = 0; j < n; ++j) x[j] += (sign > 0 ? *step : Rational(-*step)) * d[j];
    tight = tight_set(P, x);
  }
  return VertexRecord{x, tight, tight.size() == n};
}

std::optional<Vector> phase_one(const HPolyhedron& P) {
  LpResult r = maximize(P.A(), P.b(), Vector(P.dim(), Rational(0)));
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.x;
}

IndexSet redundancy_scan(const HPolyhedron& P) {
  IndexSet redundant;
  for (Index i = 0; i < P.rows(); ++i) {
    IndexSet others;
    for (Index r = 0; r < P.rows(); ++r)
      if (r != i) others.push_back(r);
    Matrix A = P.A().select_rows(others);
    Vector b;
    for (Index r : others) b.push_back(P.b()[r]);
    LpResult lp = maximize(A, b, P.A().row_vector(i));
    const bool drop = lp.status == LpStatus::Infeasible ||
                      (lp.status == LpStatus::Optimal && lp.value <= P.b()[i]);
    if (drop) redundant.push_back(i);
  }
  return redundant;
}

}  // namespace deltahull
