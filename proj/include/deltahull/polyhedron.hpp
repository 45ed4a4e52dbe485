#pragma once

#include <compare>
#include <optional>
#include <string>

#include "deltahull/exact.hpp"

namespace deltahull {

/// n row indices into A, strictly increasing. Doubles as a simplicial cone of
/// the normal fan.
struct Basis {
  IndexSet rows;

  Basis() = default;
  explicit Basis(IndexSet r);

  Index size() const { return rows.size(); }
  bool contains(Index row) const;
  /// The basis with `leaving` swapped for `entering`, re-sorted.
  Basis replace(Index leaving, Index entering) const;
  /// Position of `row` within `rows`.
  Index position(Index row) const;

  friend auto operator<=>(const Basis&, const Basis&) = default;
};

/// {x : A x <= b} with rank(A) = n, no zero rows and no duplicate
/// (normalized) constraints.
class HPolyhedron {
 public:
  HPolyhedron(Matrix A, Vector b);

  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  Index rows() const { return A_.rows(); }
  Index dim() const { return A_.cols(); }

  /// Same dimension, rows kept in the given order.
  HPolyhedron select_rows(std::span<const Index> rows) const;

  /// A_i . x - b_i (nonpositive when row i is satisfied).
  Rational slack_violation(Index i, std::span<const Rational> x) const;
  bool contains(std::span<const Rational> x) const;

 private:
  Matrix A_;
  Vector b_;
};

struct VertexRecord {
  Vector point;
  IndexSet tight;
  bool simple = false;
};

Vector basis_vertex(const HPolyhedron& P, const Basis& B);
bool is_feasible_basis(const HPolyhedron& P, const Basis& B);

/// Rows with A_i x = b_i. Throws InfeasiblePoint if x violates a row.
IndexSet tight_set(const HPolyhedron& P, std::span<const Rational> x);

/// Ray casting from a feasible point: move along the lowest-index unspanned
/// coordinate direction (projected off the tight rows) until a new row
/// becomes tight, n times at most.
VertexRecord find_initial_vertex(const HPolyhedron& P, std::span<const Rational> x0);

/// An exact feasible point, or nullopt when the system is infeasible.
std::optional<Vector> phase_one(const HPolyhedron& P);

/// Rows whose removal leaves {x : A x <= b} unchanged.
IndexSet redundancy_scan(const HPolyhedron& P);

}  // namespace deltahull
