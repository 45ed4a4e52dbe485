#include "deltahull/lattice.hpp"

#include "deltahull/errors.hpp"

namespace deltahull {

namespace {

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

}  // namespace

CountReport count_integer_points_bruteforce(const HPolyhedron& P, const EnumerationResult& result,
                                            std::uint64_t budget) {
  if (!result.bounded()) throw Unbounded("polyhedron has unbounded edges; integer count is infinite or undefined");
  if (result.vertices.empty()) throw PreconditionViolated("no vertices to bound the scan");
  const Index n = P.dim();
  CountReport report;
  report.count = 0;
  Integer cells = 1;
  for (Index j = 0; j < n; ++j) {
    Rational lo = result.vertices[0].point[j], hi = lo;
    for (const auto& v : result.vertices) {
      if (v.point[j] < lo) lo = v.point[j];
      if (v.point[j] > hi) hi = v.point[j];
    }
    report.box.emplace_back(ceil_of(lo), floor_of(hi));
    const Integer width = report.box.back().second - report.box.back().first + 1;
    cells *= (width > 0 ? width : Integer(0));
  }
  report.cells_scanned = cells;
  if (cells == 0) return report;
  if (cells > Integer(std::to_string(budget)))
    throw BudgetExceeded("bounding box has " + cells.get_str() + " cells, budget " + std::to_string(budget));

  std::vector<Integer> x(n);
  for (Index j = 0; j < n; ++j) x[j] = report.box[j].first;
  Vector point(n);
  for (;;) {
    for (Index j = 0; j < n; ++j) point[j] = Rational(x[j]);
    if (P.contains(point)) report.count += 1;
    Index j = n;
    while (j > 0) {
      --j;
      if (x[j] < report.box[j].second) {
        x[j] += 1;
        break;
      }
      x[j] = report.box[j].first;
      if (j == 0) return report;
    }
  }
}

CountingCost estimate_counting_cost(const FanStats& stats, Index n) {
  const Rational cones(static_cast<unsigned long>(stats.cone_count));
  const Rational dim(static_cast<unsigned long>(n));
  const Rational core = stats.delta * cones * stats.det_square_sum;
  CountingCost cost;
  cost.refined = dim * dim * dim * core;
  cost.general = dim * cost.refined;
  const Rational delta_sq = stats.delta * stats.delta;
  const Rational tail = delta_sq * delta_sq / stats.delta_avg;
  double nn = 1;
  for (Index k = 0; k < n; ++k) nn *= static_cast<double>(n);
  cost.envelope = nn * tail.get_d();
  return cost;
}

bool knapsack_bound_check(std::span<const Rational> x, const Rational& alpha, const Rational& beta,
                          const std::function<Rational(const Rational&)>& f) {
  if (alpha <= 0 || beta <= 0) throw PreconditionViolated("alpha and beta must be positive");
  if (f(Rational(0)) != 0) throw PreconditionViolated("f(0) must be 0");
  Rational total = 0;
  for (const auto& xi : x) {
    if (xi < 0 || xi > alpha) throw PreconditionViolated("x_i outside [0, alpha]");
    total += xi;
  }
  if (total > beta) throw PreconditionViolated("sum of x exceeds beta");
  Rational lhs = 0;
  for (const auto& xi : x) lhs += f(xi);
  const Rational multiplier(floor_of(beta / alpha + 1));
  return lhs <= multiplier * f(alpha);
}

}  // namespace deltahull
