#include "deltahull/delta_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "deltahull/errors.hpp"
#include "deltahull/linear_program.hpp"

namespace deltahull {

DeltaResult delta_max_exhaustive(const Matrix& A, std::uint64_t budget) {
  const Index m = A.rows(), n = A.cols();
  if (m < n) throw RankDeficient("fewer rows than columns");
  if (binomial(m, n) > budget)
    throw BudgetExceeded("C(" + std::to_string(m) + ", " + std::to_string(n) +
                         ") minors exceed the budget of " + std::to_string(budget));
  DeltaResult best;
  IndexSet subset(n);
  for (Index k = 0; k < n; ++k) subset[k] = k;
  do {
    ++best.minors_evaluated;
    Rational d = abs(det(A.select_rows(subset)));
    if (best.witness.size() == 0 || d > best.value) {
      best.value = d;
      best.witness = Basis(subset);
    }
  } while (next_combination(subset, m));
  return best;
}

namespace {

class BranchAndBound {
 public:
  explicit BranchAndBound(const Matrix& A) : A_(A), n_(A.cols()), m_(A.rows()) {}

  DeltaResult run() {
    std::vector<Vector> residuals;
    for (Index i = 0; i < m_; ++i) residuals.push_back(A_.row_vector(i));
    IndexSet chosen;
    descend(chosen, residuals, Rational(1), 0);
    if (best_.witness.size() == 0) {
      // rank(A) < n: every minor vanishes.
      IndexSet first(n_);
      for (Index k = 0; k < n_; ++k) first[k] = k;
      best_.witness = Basis(first);
      best_.value = 0;
    }
    return best_;
  }

 private:
  // residuals[j] = A_j minus its projection onto span(A_chosen), valid for j >= from.
  void descend(IndexSet& chosen, const std::vector<Vector>& residuals, const Rational& gram, Index from) {
    const Index need = n_ - chosen.size();
    if (need == 0) {
      ++best_.minors_evaluated;
      if (gram > best_square_) {
        best_square_ = gram;
        best_.value = abs(det(A_.select_rows(chosen)));
        best_.witness = Basis(chosen);
      }
      return;
    }
    if (m_ - from < need) return;

    std::vector<Rational> norms(m_);
    for (Index j = from; j < m_; ++j) norms[j] = squared_norm(residuals[j]);

    for (Index i = from; i + need <= m_; ++i) {
      if (norms[i] == 0) continue;
      // Hadamard-style bound over the remaining candidates after i.
      std::vector<Rational> tail(norms.begin() + i + 1, norms.end());
      const Index take = need - 1;
      std::partial_sort(tail.begin(), tail.begin() + take, tail.end(), std::greater<>());
      Rational bound = gram * norms[i];
      for (Index t = 0; t < take; ++t) bound *= tail[t];
      if (bound <= best_square_) continue;

      std::vector<Vector> next(residuals.size());
      for (Index j = i + 1; j < m_; ++j) {
        const Rational c = dot(residuals[j], residuals[i]) / norms[i];
        next[j] = residuals[j];
        if (c != 0)
          for (Index k = 0; k < n_; ++k) next[j][k] -= c * residuals[i][k];
      }
      chosen.push_back(i);
      descend(chosen, next, gram * norms[i], i + 1);
      chosen.pop_back();
    }
  }

  const Matrix& A_;
  Index n_, m_;
  DeltaResult best_;
  Rational best_square_ = 0;
};

Vector negated(std::span<const Rational> v) {
  Vector out(v.begin(), v.end());
  for (auto& q : out) q = -q;
  return out;
}

}  // namespace

DeltaResult delta_max_branch_and_bound(const Matrix& A) {
  if (A.rows() < A.cols()) throw RankDeficient("fewer rows than columns");
  return BranchAndBound(A).run();
}

IndexSet extreme_rows(const Matrix& A) {
  // One representative per row up to sign.
  IndexSet unique;
  std::set<Vector, VectorLess> seen;
  for (Index i = 0; i < A.rows(); ++i) {
    Vector r = A.row_vector(i);
    if (seen.count(r) || seen.count(negated(r))) continue;
    seen.insert(r);
    unique.push_back(i);
  }
  IndexSet extreme;
  for (Index i : unique) {
    Matrix others(0, A.cols());
    for (Index j : unique) {
      if (j != i) others.append_row(A.row(j));
      others.append_row(negated(A.row(j)));
    }
    if (!in_convex_hull(others, A.row(i))) extreme.push_back(i);
  }
  return extreme;
}

DeltaResult delta_max_extreme(const Matrix& A) {
  const IndexSet rows = extreme_rows(A);
  DeltaResult reduced = delta_max_branch_and_bound(A.select_rows(rows));
  IndexSet witness;
  for (Index k : reduced.witness.rows) witness.push_back(rows[k]);
  reduced.witness = Basis(witness);
  return reduced;
}

DeltaResult compute_delta(const Matrix& A, std::uint64_t budget) {
  if (binomial(A.rows(), A.cols()) <= budget) return delta_max_exhaustive(A, budget);
  return delta_max_extreme(A);
}

Rational factorial(Index n) {
  Integer f = 1;
  for (Index k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
  return Rational(f);
}

FanStats triangulation_stats(const Matrix& A, std::span<const Basis> cones, const DeltaResult& delta) {
  if (cones.empty()) throw PreconditionViolated("empty triangulation");
  FanStats s;
  s.delta = delta.value;
  s.witness = delta.witness;
  s.cone_count = cones.size();
  s.det_sum = 0;
  s.det_square_sum = 0;
  bool first = true;
  for (const Basis& B : cones) {
    const Rational d = abs(det(A.select_rows(B.rows)));
    if (d == 0) throw SingularBasis("triangulation cone with zero determinant");
    s.det_sum += d;
    s.det_square_sum += d * d;
    if (first || d < s.delta_min) s.delta_min = d;
    first = false;
  }
  s.delta_avg = s.det_sum / Rational(static_cast<unsigned long>(s.cone_count));
  s.fan_volume = s.det_sum / factorial(A.cols());
  return s;
}

FanStats triangulation_stats(const Matrix& A, std::span<const Basis> cones, std::uint64_t budget) {
  return triangulation_stats(A, cones, compute_delta(A, budget));
}

double unit_ball_volume(Index n) {
  if (n == 0) return 1.0;
  double even = 1.0;                 // V_0
  double odd = 2.0;                  // V_1
  for (Index k = 2; k <= n; ++k) {
    double& slot = (k % 2 == 0) ? even : odd;
    slot *= 2.0 * std::numbers::pi / static_cast<double>(k);
  }
  return n % 2 == 0 ? even : odd;
}

void require(const BoundCheck& check) {
  if (!check.pass)
    throw BoundViolated(check.name + ": " + std::to_string(check.lhs) + " > " + std::to_string(check.rhs));
}

namespace {

BoundCheck float_check(std::string name, const Rational& lhs, double rhs) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs_exact = lhs;
  c.lhs = lhs.get_d();
  c.rhs = rhs;
  c.pass = c.lhs <= rhs * (1.0 + kRelativeSlack);
  return c;
}

BoundCheck cone_count_bound(const FanStats& stats, Index n) {
  const Rational ratio = stats.delta / stats.delta_avg;
  const double rhs = factorial(n).get_d() * ratio.get_d() * unit_ball_volume(n);
  return float_check("theorem-1", Rational(static_cast<unsigned long>(stats.cone_count)), rhs);
}

}  // namespace

std::vector<BoundCheck> check_vertex_bound(Index vertex_count, const FanStats& stats, Index n) {
  BoundCheck count;
  count.name = "vertices-at-most-cones";
  count.lhs_exact = Rational(static_cast<unsigned long>(vertex_count));
  count.rhs_exact = Rational(static_cast<unsigned long>(stats.cone_count));
  count.lhs = static_cast<double>(vertex_count);
  count.rhs = static_cast<double>(stats.cone_count);
  count.pass = vertex_count <= stats.cone_count;
  return {count, cone_count_bound(stats, n)};
}

std::vector<BoundCheck> check_fan_bound(const FanStats& stats, Index n) {
  BoundCheck volume = float_check("fan-volume", stats.fan_volume, stats.delta.get_d() * unit_ball_volume(n));
  BoundCheck count = cone_count_bound(stats, n);
  count.name = "fan-size";
  return {volume, count};
}

Matrix totally_unimodular_transform(const Matrix& A, const Basis& B) {
  try {
    return A * inverse(A.select_rows(B.rows));
  } catch (const SingularMatrix&) {
    throw SingularBasis("transform basis is singular");
  }
}

Rational max_abs_minor(const Matrix& A, std::uint64_t budget) {
  const Index m = A.rows(), n = A.cols();
  const Index top = std::min(m, n);
  std::uint64_t total = 0;
  for (Index k = 1; k <= top; ++k) {
    const std::uint64_t count = binomial(m, k);
    const std::uint64_t cols = binomial(n, k);
    if (count > budget || cols > budget || count * cols > budget - std::min(budget, total))
      throw BudgetExceeded("minor count exceeds the budget of " + std::to_string(budget));
    total += count * cols;
  }
  Rational largest = 0;
  for (Index k = 1; k <= top; ++k) {
    IndexSet rows(k);
    for (Index t = 0; t < k; ++t) rows[t] = t;
    do {
      const Matrix R = A.select_rows(rows);
      IndexSet cols(k);
      for (Index t = 0; t < k; ++t) cols[t] = t;
      do {
        Matrix sub(k, k);
        for (Index a = 0; a < k; ++a)
          for (Index b = 0; b < k; ++b) sub(a, b) = R(a, cols[b]);
        const Rational d = abs(det(sub));
        if (d > largest) largest = d;
      } while (next_combination(cols, n));
    } while (next_combination(rows, m));
  }
  return largest;
}

bool verify_total_unimodularity(const Matrix& A, std::uint64_t budget) {
  return max_abs_minor(A, budget) <= 1;
}

DeltaDistance local_delta_distance(const Matrix& A, std::span<const Basis> bases) {
  DeltaDistance out;
  bool first = true;
  for (const Basis& B : bases) {
    const Matrix M = A.select_rows(B.rows);
    const Rational d = det(M);
    if (d == 0) throw SingularBasis("singular basis in delta-distance scan");
    for (Index k = 0; k < B.size(); ++k) {
      const Vector u = adjugate_column(M, k);
      const Rational s = d * d / (squared_norm(M.row(k)) * squared_norm(u));
      if (first || s < out.sin_squared) {
        out.sin_squared = s;
        out.basis = B;
        out.row = B.rows[k];
        first = false;
      }
    }
  }
  out.delta = std::sqrt(out.sin_squared.get_d());
  return out;
}

double tau_diameter_bound(Index n, double tau) {
  return 8.0 * static_cast<double>(n) / tau * (1.0 + std::log(1.0 / tau));
}

WidenessReport wideness_and_diameter_bound(const Matrix& A, const FanStats& stats,
                                           std::span<const Basis> cones) {
  const Index n = A.cols();
  WidenessReport r;
  r.transform_basis = stats.witness;
  const Matrix transformed = totally_unimodular_transform(A, stats.witness);
  r.distance = local_delta_distance(transformed, cones);
  r.distance_floor = stats.delta_min / (Rational(static_cast<unsigned long>(n)) * stats.delta);
  r.floor_holds = r.distance.sin_squared >= r.distance_floor * r.distance_floor;
  r.tau = r.distance.delta / static_cast<double>(n);
  r.diameter_bound = tau_diameter_bound(n, r.tau);
  return r;
}

}  // namespace deltahull
