#include "deltahull/linear_program.hpp"

#include <optional>

#include "deltahull/errors.hpp"

namespace deltahull {

namespace {

class Tableau {
 public:
  Tableau(Matrix body, Vector rhs) : body_(std::move(body)), rhs_(std::move(rhs)), basic_(body_.rows()) {}

  Index rows() const { return body_.rows(); }
  Index cols() const { return body_.cols(); }
  Index basic(Index r) const { return basic_[r]; }
  const Rational& rhs(Index r) const { return rhs_[r]; }
  const Rational& value() const { return obj_rhs_; }
  std::uint64_t pivots() const { return pivots_; }

  void set_basic(Index r, Index c) { basic_[r] = c; }

  void set_objective(const Vector& c) {
    obj_.assign(cols(), Rational(0));
    for (Index j = 0; j < c.size(); ++j) obj_[j] = -c[j];
    obj_rhs_ = 0;
    for (Index r = 0; r < rows(); ++r) {
      const Rational d = obj_[basic_[r]];
      if (d == 0) continue;
      for (Index j = 0; j < cols(); ++j) obj_[j] -= d * body_(r, j);
      obj_rhs_ -= d * rhs_[r];
    }
  }

  void pivot(Index r, Index c) {
    ++pivots_;
    const Rational p = body_(r, c);
    for (Index j = 0; j < cols(); ++j) body_(r, j) /= p;
    rhs_[r] /= p;
    for (Index i = 0; i < rows(); ++i) {
      if (i == r || body_(i, c) == 0) continue;
      const Rational f = body_(i, c);
      for (Index j = 0; j < cols(); ++j)
        if (body_(r, j) != 0) body_(i, j) -= f * body_(r, j);
      rhs_[i] -= f * rhs_[r];
    }
    if (!obj_.empty() && obj_[c] != 0) {
      const Rational f = obj_[c];
      for (Index j = 0; j < cols(); ++j)
        if (body_(r, j) != 0) obj_[j] -= f * body_(r, j);
      obj_rhs_ -= f * rhs_[r];
    }
    basic_[r] = c;
  }

  // Bland's rule over columns [0, limit). Returns false when unbounded.
  bool optimize(Index limit) {
    for (;;) {
      Index enter = limit;
      for (Index j = 0; j < limit; ++j)
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == limit) return true;
      std::optional<Index> leave;
      Rational best;
      for (Index i = 0; i < rows(); ++i) {
        if (body_(i, enter) <= 0) continue;
        Rational ratio = rhs_[i] / body_(i, enter);
        if (!leave || ratio < best || (ratio == best && basic_[i] < basic_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, enter);
    }
  }

  const Rational& entry(Index r, Index c) const { return body_(r, c); }

  void drop_rows_and_columns(const std::vector<bool>& drop_row, Index keep_cols) {
    Matrix body(0, keep_cols);
    Vector rhs;
    std::vector<Index> basic;
    for (Index r = 0; r < rows(); ++r) {
      if (drop_row[r]) continue;
      body.append_row(body_.row(r).subspan(0, keep_cols));
      rhs.push_back(rhs_[r]);
      basic.push_back(basic_[r]);
    }
    body_ = std::move(body);
    rhs_ = std::move(rhs);
    basic_ = std::move(basic);
    obj_.clear();
  }

 private:
  Matrix body_;
  Vector rhs_;
  std::vector<Index> basic_;
  Vector obj_;
  Rational obj_rhs_;
  std::uint64_t pivots_ = 0;
};

}  // namespace

LpResult solve_standard_form(const Matrix& E, const Vector& f, const Vector& c) {
  const Index m = E.rows();
  const Index n = E.cols();
  if (f.size() != m || c.size() != n) throw DimensionMismatch("LP shape mismatch");

  Matrix body = E;
  Vector rhs = f;
  for (Index i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      rhs[i] = -rhs[i];
      for (auto& x : body.row(i)) x = -x;
    }
  }

  // Reuse unit columns as the starting basis; add artificials elsewhere.
  std::vector<std::optional<Index>> unit(m);
  for (Index j = 0; j < n; ++j) {
    std::optional<Index> hit;
    bool ok = true;
    for (Index i = 0; i < m && ok; ++i) {
      if (body(i, j) == 0) continue;
      if (body(i, j) == 1 && !hit)
        hit = i;
      else
        ok = false;
    }
    if (ok && hit && !unit[*hit]) unit[*hit] = j;
  }
  Index artificials = 0;
  for (Index i = 0; i < m; ++i)
    if (!unit[i]) ++artificials;

  Matrix full(m, n + artificials);
  std::vector<Index> basics(m);
  Index next_art = n;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) full(i, j) = body(i, j);
    if (unit[i]) {
      basics[i] = *unit[i];
    } else {
      full(i, next_art) = 1;
      basics[i] = next_art++;
    }
  }
  Tableau t(std::move(full), rhs);
  for (Index i = 0; i < m; ++i) t.set_basic(i, basics[i]);

  LpResult result;
  if (artificials > 0) {
    Vector phase1(n + artificials, Rational(0));
    for (Index j = n; j < n + artificials; ++j) phase1[j] = -1;
    t.set_objective(phase1);
    t.optimize(n + artificials);
    if (t.value() < 0) {
      result.status = LpStatus::Infeasible;
      result.pivots = t.pivots();
      return result;
    }
    std::vector<bool> drop(m, false);
    for (Index i = 0; i < t.rows(); ++i) {
      if (t.basic(i) < n) continue;
      Index j = 0;
      while (j < n && t.entry(i, j) == 0) ++j;
      if (j < n)
        t.pivot(i, j);
      else
        drop[i] = true;
    }
    t.drop_rows_and_columns(drop, n);
  }

  t.set_objective(c);
  if (!t.optimize(n)) {
    result.status = LpStatus::Unbounded;
    result.pivots = t.pivots();
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (Index i = 0; i < t.rows(); ++i) result.x[t.basic(i)] = t.rhs(i);
  result.value = t.value();
  result.pivots = t.pivots();
  return result;
}

LpResult maximize(const Matrix& A, const Vector& b, const Vector& c) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (b.size() != m || c.size() != n) throw DimensionMismatch("LP shape mismatch");
  Matrix E(m, 2 * n + m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      E(i, j) = A(i, j);
      E(i, n + j) = -A(i, j);
    }
    E(i, 2 * n + i) = 1;
  }
  Vector cost(2 * n + m, Rational(0));
  for (Index j = 0; j < n; ++j) {
    cost[j] = c[j];
    cost[n + j] = -c[j];
  }
  LpResult split = solve_standard_form(E, b, cost);
  LpResult out;
  out.status = split.status;
  out.pivots = split.pivots;
  if (split.status == LpStatus::Optimal) {
    out.value = split.value;
    out.x.resize(n);
    for (Index j = 0; j < n; ++j) out.x[j] = split.x[j] - split.x[n + j];
  }
  return out;
}

bool in_convex_hull(const Matrix& points, std::span<const Rational> p) {
  const Index count = points.rows();
  const Index dim = points.cols();
  if (p.size() != dim) throw DimensionMismatch("point dimension mismatch");
  if (count == 0) return false;
  Matrix E(dim + 1, count);
  Vector f(dim + 1);
  for (Index d = 0; d < dim; ++d) {
    for (Index j = 0; j < count; ++j) E(d, j) = points(j, d);
    f[d] = p[d];
  }
  for (Index j = 0; j < count; ++j) E(dim, j) = 1;
  f[dim] = 1;
  return solve_standard_form(E, f, Vector(count, Rational(0))).status == LpStatus::Optimal;
}

}  // namespace deltahull
