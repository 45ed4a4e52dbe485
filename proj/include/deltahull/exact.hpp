#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deltahull {

// GMP rationals are canonical (lowest terms, positive denominator) after
// every arithmetic operation, so equality is structural.
using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;
using Index = std::size_t;
using IndexSet = std::vector<Index>;

/// Parses "p/q", "-p/q" or an integer literal. Throws ParseError.
Rational parse_rational(std::string_view text);
/// Canonical form: "7/3", "-2", "0".
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational squared_norm(std::span<const Rational> a);

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static Matrix identity(Index n);
  static Matrix from_rows(const std::vector<Vector>& rows, Index cols);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  const Rational& operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

  std::span<const Rational> row(Index i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Rational> row(Index i) { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(Index i) const { return {row(i).begin(), row(i).end()}; }
  Vector column(Index j) const;

  /// Rows picked in the given order.
  Matrix select_rows(std::span<const Index> indices) const;
  Matrix without_row(Index i) const;
  Matrix transpose() const;
  void append_row(std::span<const Rational> values);
  void swap_rows(Index a, Index b);
  bool is_integral() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
Vector operator*(const Matrix& a, std::span<const Rational> x);

/// Fraction-free (Bareiss) determinant; 0 for singular input.
Rational det(const Matrix& m);
/// Rank by fraction-free elimination.
Index rank(const Matrix& m);
/// Exact solution of m * x = rhs. Throws SingularMatrix.
Vector solve(const Matrix& m, std::span<const Rational> rhs);
/// Throws SingularMatrix.
Matrix inverse(const Matrix& m);

/// Column i of adj(m): m * u = det(m) * e_i, valid for singular m too.
Vector adjugate_column(const Matrix& m, Index i);

/// Inverse of the basis matrix obtained by replacing row `leaving` of the
/// current basis matrix with `new_row`, given the current inverse. Product-form
/// rank-one update; throws SingularUpdate when the replacement is singular.
Matrix basis_inverse_update(const Matrix& inv, Index leaving, std::span<const Rational> new_row);

/// Orthogonal (unnormalized) Gram-Schmidt basis of the row span of m.
std::vector<Vector> orthogonal_row_basis(const Matrix& m);
/// v minus its orthogonal projection onto span(basis); basis as returned above.
Vector orthogonal_residual(std::span<const Rational> v, const std::vector<Vector>& basis);

/// C(n, k) saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Advances a strictly increasing k-subset of {0..n-1} to its lexicographic
/// successor. Returns false after the last subset.
bool next_combination(IndexSet& subset, Index n);

/// Lexicographic order on vectors of rationals.
struct VectorLess {
  bool operator()(const Vector& a, const Vector& b) const;
};

}  // namespace deltahull
