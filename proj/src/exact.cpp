#include "deltahull/exact.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <utility>

#include "deltahull/errors.hpp"

namespace deltahull {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  return std::all_of(s.begin() + start, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }
std::string to_string(const Integer& value) { return value.get_str(10); }

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational squared_norm(std::span<const Rational> a) { return dot(a, a); }

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, Index cols) {
  Matrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Vector Matrix::column(Index j) const {
  Vector c(rows_);
  for (Index i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::select_rows(std::span<const Index> indices) const {
  Matrix out(indices.size(), cols_);
  for (Index r = 0; r < indices.size(); ++r) {
    auto src = row(indices[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

Matrix Matrix::without_row(Index i) const {
  IndexSet keep;
  for (Index r = 0; r < rows_; ++r)
    if (r != i) keep.push_back(r);
  return select_rows(keep);
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void Matrix::append_row(std::span<const Rational> values) {
  if (values.size() != cols_) throw DimensionMismatch("row length does not match column count");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Matrix::swap_rows(Index a, Index b) {
  if (a == b) return;
  for (Index j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

bool Matrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Rational& q) { return q.get_den() == 1; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Index j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix c = a;
  for (Index i = 0; i < a.rows(); ++i)
    for (auto& x : c.row(i)) x *= s;
  return c;
}

Vector operator*(const Matrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  Vector y(a.rows());
  for (Index i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Rational det(const Matrix& m) {
  if (!m.square()) throw DimensionMismatch("determinant of a non-square matrix");
  const Index n = m.rows();
  if (n == 0) return 1;
  Matrix a = m;
  Rational prev = 1;
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Rational d = a(n - 1, n - 1);
  if (sign < 0) d = -d;
  return d;
}

Index rank(const Matrix& m) {
  Matrix a = m;
  const Index rows = a.rows();
  const Index cols = a.cols();
  Rational prev = 1;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.swap_rows(r, p);
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j < cols; ++j) {
        a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

Vector solve(const Matrix& m, std::span<const Rational> rhs) {
  if (!m.square() || rhs.size() != m.rows()) throw DimensionMismatch("solve shape mismatch");
  const Index n = m.rows();
  Matrix a(n, n + 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n) = rhs[i];
  }
  // Fraction-free forward elimination on the augmented system.
  Rational prev = 1;
  for (Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) throw SingularMatrix("solve: matrix is singular");
      a.swap_rows(k, p);
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j <= n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Vector x(n);
  for (Index ii = n; ii-- > 0;) {
    Rational s = a(ii, n);
    for (Index j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
  const Index n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (Index k = 0; k < n; ++k) {
    Index p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw SingularMatrix("inverse: matrix is singular");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    const Rational pivot = a(k, k);
    for (Index j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      for (Index j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

Vector adjugate_column(const Matrix& m, Index i) {
  if (!m.square()) throw DimensionMismatch("adjugate of a non-square matrix");
  const Index n = m.rows();
  if (i >= n) throw DimensionMismatch("adjugate column index out of range");
  if (n == 1) return {Rational(1)};
  // adj(m)(j, i) is the (i, j) cofactor.
  Matrix minor_rows = m.without_row(i);
  Vector u(n);
  for (Index j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (Index r = 0; r < n - 1; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r, cc++) = minor_rows(r, c);
    Rational d = det(minor);
    u[j] = ((i + j) % 2 == 0) ? d : Rational(-d);
  }
  return u;
}

Matrix basis_inverse_update(const Matrix& inv, Index leaving, std::span<const Rational> new_row) {
  const Index n = inv.rows();
  if (!inv.square() || new_row.size() != n || leaving >= n)
    throw DimensionMismatch("basis_inverse_update shape mismatch");
  Vector w(n);
  for (Index j = 0; j < n; ++j) {
    Rational s = 0;
    for (Index k = 0; k < n; ++k) s += new_row[k] * inv(k, j);
    w[j] = s;
  }
  if (w[leaving] == 0) throw SingularUpdate("row replacement makes the basis singular");
  Matrix out = inv;
  const Rational pivot = w[leaving];
  for (Index i = 0; i < n; ++i) {
    const Rational c = inv(i, leaving) / pivot;
    for (Index j = 0; j < n; ++j) {
      if (j == leaving)
        out(i, j) = c;
      else if (w[j] != 0)
        out(i, j) = inv(i, j) - c * w[j];
    }
  }
  return out;
}

std::vector<Vector> orthogonal_row_basis(const Matrix& m) {
  std::vector<Vector> basis;
  for (Index i = 0; i < m.rows(); ++i) {
    Vector r = orthogonal_residual(m.row(i), basis);
    if (std::any_of(r.begin(), r.end(), [](const Rational& q) { return q != 0; }))
      basis.push_back(std::move(r));
  }
  return basis;
}

Vector orthogonal_residual(std::span<const Rational> v, const std::vector<Vector>& basis) {
  Vector r(v.begin(), v.end());
  for (const auto& q : basis) {
    const Rational coeff = dot(r, q) / squared_norm(q);
    if (coeff == 0) continue;
    for (Index j = 0; j < r.size(); ++j) r[j] -= coeff * q[j];
  }
  return r;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

bool next_combination(IndexSet& subset, Index n) {
  const Index k = subset.size();
  Index i = k;
  while (i > 0) {
    --i;
    if (subset[i] < n - k + i) {
      ++subset[i];
      for (Index j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool VectorLess::operator()(const Vector& a, const Vector& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace deltahull
