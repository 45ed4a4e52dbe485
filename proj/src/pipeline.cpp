#include "deltahull/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <set>

#include "deltahull/errors.hpp"

namespace deltahull {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Arbitrary-precision integers are strings, like rationals.
Json integer_json(const Integer& z) { return z.get_str(); }

Json index_list(const IndexSet& s) { return Json(s); }

Json vertices_json(const EnumerationResult& r) {
  Json out = Json::array();
  for (const auto& v : r.vertices)
    out.push_back(Json{{"point", vector_json(v.point)}, {"tight", index_list(v.tight)}, {"simple", v.simple}});
  return out;
}

Json rays_json(const EnumerationResult& r) {
  Json out = Json::array();
  for (const auto& ray : r.rays) out.push_back(Json{{"vertex", ray.vertex}, {"direction", vector_json(ray.direction)}});
  return out;
}

Json triangulation_json(const EnumerationResult& r) {
  Json cones = Json::array();
  Json owner = Json::array();
  for (Index v = 0; v < r.triangulation.vertex_count(); ++v)
    for (const Basis& B : r.triangulation.cones_of(v)) {
      cones.push_back(index_list(B.rows));
      owner.push_back(v);
    }
  return Json{{"cones", cones}, {"owner", owner}};
}

Json work_json(const EnumerationResult& r, Index n, Index m) {
  const auto& w = r.work;
  return Json{{"bases_expanded", w.bases_expanded},
              {"triangulation_size", r.triangulation.size()},
              {"pivots", w.pivots},
              {"row_products", w.row_products},
              {"max_row_products_per_basis", w.max_row_products_per_basis},
              {"n_times_m", n * m},
              {"inverse_updates", w.inverse_updates},
              {"inverse_recomputations", w.inverse_recomputations}};
}

Json stats_json(const FanStats& s) {
  return Json{{"delta", exact_and_float(s.delta)},
              {"witness", index_list(s.witness.rows)},
              {"delta_avg", exact_and_float(s.delta_avg)},
              {"delta_min", exact_and_float(s.delta_min)},
              {"cone_count", s.cone_count},
              {"det_sum", exact_and_float(s.det_sum)},
              {"det_square_sum", exact_and_float(s.det_square_sum)},
              {"fan_volume", exact_and_float(s.fan_volume)}};
}

Json side_json(const std::optional<Rational>& exact, double value) {
  Json side{{"float", value}};
  if (exact) side["exact"] = to_string(*exact);
  return side;
}

Json bound_json(const BoundCheck& c) {
  return Json{{"name", c.name}, {"pass", c.pass}, {"lhs", side_json(c.lhs_exact, c.lhs)},
              {"rhs", side_json(c.rhs_exact, c.rhs)}};
}

Json skipped_json(const std::string& name, const std::string& reason) {
  return Json{{"name", name}, {"skipped", true}, {"reason", reason}};
}

Json instance_echo(const Analysis& a) {
  return Json{{"m", a.P.rows()}, {"n", a.P.dim()}, {"A", matrix_json(a.P.A())}, {"b", vector_json(a.P.b())},
              {"kept_rows", index_list(a.kept_rows)}};
}

Json graph_json(const SkeletonGraph& g, std::optional<Index> diameter) {
  Json out{{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"adjacency", g.adjacency}};
  out["diameter"] = diameter ? Json(*diameter) : Json(nullptr);
  return out;
}

Json base_report(const std::string& command, const Analysis& a, const PipelineOptions& options) {
  Json report{{"command", command},
              {"instance", instance_echo(a)},
              {"start_vertex", vector_json(a.start.point)},
              {"vertex_count", a.result.vertices.size()},
              {"bounded", a.result.bounded()},
              {"warnings", a.warnings}};
  if (options.timings) report["timings_ms"] = Json{{"enumerate", a.enumerate_ms}};
  return report;
}

struct StatsBundle {
  FanStats stats;
  std::uint64_t minors_evaluated = 0;
};

StatsBundle compute_stats(const Analysis& a, const PipelineOptions& options) {
  const DeltaResult delta = compute_delta(a.P.A(), options.budget);
  return StatsBundle{triangulation_stats(a.P.A(), a.result.triangulation.cones, delta), delta.minors_evaluated};
}

Json unimodularity_check(const Analysis& a, const FanStats& stats, const PipelineOptions& options) {
  try {
    const Matrix transformed = totally_unimodular_transform(a.P.A(), stats.witness);
    BoundCheck c;
    c.name = "total-unimodularity";
    c.lhs_exact = max_abs_minor(transformed, options.budget);
    c.rhs_exact = Rational(1);
    c.lhs = c.lhs_exact->get_d();
    c.rhs = 1.0;
    c.pass = *c.lhs_exact <= 1;
    return bound_json(c);
  } catch (const BudgetExceeded& e) {
    return skipped_json("total-unimodularity", e.what());
  }
}

Json wideness_json(const WidenessReport& w) {
  return Json{{"transform_basis", index_list(w.transform_basis.rows)},
              {"sin_squared", exact_and_float(w.distance.sin_squared)},
              {"attained_at", Json{{"basis", index_list(w.distance.basis.rows)}, {"row", w.distance.row}}},
              {"delta_distance", w.distance.delta},
              {"distance_floor", exact_and_float(w.distance_floor)},
              {"tau", w.tau},
              {"diameter_bound", w.diameter_bound}};
}

BoundCheck delta_floor_check(const WidenessReport& w) {
  BoundCheck c;
  c.name = "delta-distance-floor";
  c.lhs_exact = w.distance_floor * w.distance_floor;
  c.rhs_exact = w.distance.sin_squared;
  c.lhs = c.lhs_exact->get_d();
  c.rhs = c.rhs_exact->get_d();
  c.pass = w.floor_holds;
  return c;
}

BoundCheck tau_check(Index diameter, const WidenessReport& w) {
  BoundCheck c;
  c.name = "tau-diameter";
  c.lhs_exact = Rational(static_cast<unsigned long>(diameter));
  c.lhs = static_cast<double>(diameter);
  c.rhs = w.diameter_bound;
  c.pass = c.lhs <= c.rhs * (1.0 + kRelativeSlack);
  return c;
}

Json count_json(const CountReport& c) {
  Json box = Json::array();
  for (const auto& [lo, hi] : c.box) box.push_back(Json::array({integer_json(lo), integer_json(hi)}));
  return Json{{"count", integer_json(c.count)}, {"box", box}, {"cells_scanned", integer_json(c.cells_scanned)}};
}

Json cost_json(const CountingCost& c) {
  return Json{{"general", exact_and_float(c.general)}, {"refined", exact_and_float(c.refined)},
              {"envelope", c.envelope}};
}

}  // namespace

std::uint64_t budget_from_environment() {
  const char* raw = std::getenv("DELTAHULL_BUDGET");
  if (!raw || !*raw) return kDefaultBudget;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (*end != '\0' || value == 0) throw ParseError(std::string("invalid DELTAHULL_BUDGET: ") + raw);
  return value;
}

Analysis analyze(const InstanceDocument& doc, const PipelineOptions& options) {
  HPolyhedron full(doc.A, doc.b);
  std::optional<Vector> x0 = options.feasible_point ? options.feasible_point : doc.feasible_point;
  if (x0) {
    if (x0->size() != full.dim()) throw DimensionMismatch("feasible point has the wrong dimension");
    if (!full.contains(*x0)) throw InfeasiblePoint("supplied feasible point violates the system");
  } else {
    x0 = phase_one(full);
    if (!x0) throw InfeasiblePoint("the system A x <= b is infeasible");
  }

  std::vector<std::string> warnings;
  IndexSet kept;
  IndexSet redundant;
  if (options.strip_redundant || full.rows() <= kRedundancyScanLimit) redundant = redundancy_scan(full);
  for (Index i = 0; i < full.rows(); ++i)
    if (!options.strip_redundant || !std::binary_search(redundant.begin(), redundant.end(), i)) kept.push_back(i);
  if (!redundant.empty()) {
    std::string list;
    for (Index i : redundant) list += (list.empty() ? "" : ", ") + std::to_string(i);
    warnings.push_back((options.strip_redundant ? "removed redundant rows: " : "redundant rows: ") + list);
  } else if (!options.strip_redundant && full.rows() > kRedundancyScanLimit) {
    warnings.push_back("redundancy scan skipped (more than " + std::to_string(kRedundancyScanLimit) + " rows)");
  }

  HPolyhedron P = options.strip_redundant ? full.select_rows(kept) : full;
  const auto t0 = Clock::now();
  VertexRecord start = find_initial_vertex(P, *x0);
  EnumerationResult result = enumerate_vertices(P, start);
  const double ms = elapsed_ms(t0);
  return Analysis{std::move(P), std::move(kept), std::move(start), std::move(result), std::move(warnings), ms};
}

Json run_vertices(const InstanceDocument& doc, const PipelineOptions& options) {
  const Analysis a = analyze(doc, options);
  Json report = base_report("vertices", a, options);
  report["vertices"] = vertices_json(a.result);
  report["rays"] = rays_json(a.result);
  report["triangulation"] = triangulation_json(a.result);
  report["work"] = work_json(a.result, a.P.dim(), a.P.rows());
  return report;
}

Json run_stats(const InstanceDocument& doc, const PipelineOptions& options) {
  const Analysis a = analyze(doc, options);
  Json report = base_report("stats", a, options);
  const auto t0 = Clock::now();
  const StatsBundle s = compute_stats(a, options);
  report["stats"] = stats_json(s.stats);
  report["stats"]["minors_evaluated"] = s.minors_evaluated;
  Json bounds = Json::array();
  for (const auto& c : check_vertex_bound(a.result.vertices.size(), s.stats, a.P.dim())) bounds.push_back(bound_json(c));
  bounds.push_back(bound_json(check_fan_bound(s.stats, a.P.dim()).front()));
  bounds.push_back(unimodularity_check(a, s.stats, options));
  report["bounds"] = bounds;
  report["triangulation"] = triangulation_json(a.result);
  if (options.timings) report["timings_ms"]["stats"] = elapsed_ms(t0);
  return report;
}

Json run_diameter(const InstanceDocument& doc, const PipelineOptions& options) {
  const Analysis a = analyze(doc, options);
  Json report = base_report("diameter", a, options);
  const SkeletonGraph g = build_polytope_graph(a.P, a.result);
  const Index diameter = graph_diameter(g);
  report["graph"] = graph_json(g, diameter);
  const StatsBundle s = compute_stats(a, options);
  const WidenessReport w = wideness_and_diameter_bound(a.P.A(), s.stats, a.result.triangulation.cones);
  report["wideness"] = wideness_json(w);
  report["bounds"] = Json::array({bound_json(tau_check(diameter, w))});
  return report;
}

Json run_count(const InstanceDocument& doc, const PipelineOptions& options) {
  const Analysis a = analyze(doc, options);
  Json report = base_report("count", a, options);
  const auto t0 = Clock::now();
  report["count"] = count_json(count_integer_points_bruteforce(a.P, a.result, options.budget));
  if (options.timings) report["timings_ms"]["count"] = elapsed_ms(t0);
  const StatsBundle s = compute_stats(a, options);
  report["cost"] = cost_json(estimate_counting_cost(s.stats, a.P.dim()));
  return report;
}

Json run_verify(const InstanceDocument& doc, const PipelineOptions& options) {
  const Analysis a = analyze(doc, options);
  const Index n = a.P.dim();
  Json report = base_report("verify", a, options);
  report["vertices"] = vertices_json(a.result);
  report["rays"] = rays_json(a.result);
  report["triangulation"] = triangulation_json(a.result);
  report["work"] = work_json(a.result, n, a.P.rows());

  auto t0 = Clock::now();
  const StatsBundle s = compute_stats(a, options);
  report["stats"] = stats_json(s.stats);
  report["stats"]["minors_evaluated"] = s.minors_evaluated;
  const double stats_ms = elapsed_ms(t0);

  t0 = Clock::now();
  const SkeletonGraph g = build_polytope_graph(a.P, a.result);
  const Index diameter = graph_diameter(g);
  report["graph"] = graph_json(g, diameter);
  const SkeletonGraph fan = build_fan_graph(a.P.A(), a.result.triangulation.cones);
  std::optional<Index> fan_diameter;
  try {
    fan_diameter = graph_diameter(fan);
  } catch (const DisconnectedGraph&) {
  }
  Json fan_summary = graph_json(fan, fan_diameter);
  fan_summary.erase("adjacency");
  report["fan_graph"] = fan_summary;
  const double graph_ms = elapsed_ms(t0);

  t0 = Clock::now();
  Json bounds = Json::array();
  for (const auto& c : check_vertex_bound(a.result.vertices.size(), s.stats, n)) bounds.push_back(bound_json(c));
  bounds.push_back(bound_json(check_fan_bound(s.stats, n).front()));
  bounds.push_back(unimodularity_check(a, s.stats, options));
  const WidenessReport w = wideness_and_diameter_bound(a.P.A(), s.stats, a.result.triangulation.cones);
  report["wideness"] = wideness_json(w);
  bounds.push_back(bound_json(delta_floor_check(w)));
  bounds.push_back(bound_json(tau_check(diameter, w)));
  report["bounds"] = bounds;
  const double bounds_ms = elapsed_ms(t0);

  report["count"] = nullptr;
  if (options.count && a.result.bounded()) {
    try {
      report["count"] = count_json(count_integer_points_bruteforce(a.P, a.result, options.budget));
      report["cost"] = cost_json(estimate_counting_cost(s.stats, n));
    } catch (const BudgetExceeded& e) {
      report["count"] = skipped_json("count", e.what());
    }
  }
  report["all_pass"] = failed_checks(report).empty();
  if (options.timings) {
    report["timings_ms"]["stats"] = stats_ms;
    report["timings_ms"]["graphs"] = graph_ms;
    report["timings_ms"]["bounds"] = bounds_ms;
  }
  return report;
}

std::vector<std::string> failed_checks(const Json& report) {
  std::vector<std::string> failed;
  if (!report.contains("bounds")) return failed;
  for (const auto& b : report["bounds"])
    if (b.contains("pass") && !b["pass"].get<bool>()) failed.push_back(b["name"].get<std::string>());
  return failed;
}

GeneratedInstance generate_subdivision(Index n, Index k) {
  if (n < 2) throw PreconditionViolated("subdivision generator needs n >= 2");
  auto family = subdivision_family(n, k);
  GeneratedInstance g;
  g.lifted = lift_polytope(family);
  g.fan = std::move(family.back());
  g.instance.A = g.fan.rays;
  g.instance.b = g.lifted.dual_rhs;
  g.instance.feasible_point = Vector(n, Rational(0));
  g.instance.metadata = Json{{"name", "subdivision-dual n=" + std::to_string(n) + " k=" + std::to_string(k)},
                             {"generator", "subdivision"},
                             {"n", n},
                             {"k", k}};
  g.fan_document = FanDocument{g.fan.rays, g.fan.cones};
  g.expected = expected_counts(n, k);
  return g;
}

Json fan_json_with_normalized(const GeneratedInstance& g, std::optional<Index> digits) {
  Json out = fan_to_json(g.fan_document);
  out["parent"] = g.fan.parent;
  out["scaling"] = vector_json(g.lifted.scaling);
  if (digits) {
    out["digits"] = *digits;
    out["normalized_rays"] = matrix_json(normalize_rays(g.fan.rays, *digits));
  }
  return out;
}

Json expected_counts_json(Index n, Index k) {
  const ExpectedCounts e = expected_counts(n, k);
  return Json{{"n", n}, {"k", k}, {"cones", integer_json(e.cones)}, {"diameter", integer_json(e.diameter)},
              {"delta_ratio", integer_json(e.delta_ratio)}};
}

namespace {

// Own modulo draws keep instances identical across standard libraries.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(rng() % span);
}

}  // namespace

InstanceDocument random_instance(std::mt19937_64& rng, Index max_n, Index max_m) {
  const Index n = static_cast<Index>(draw(rng, 2, static_cast<std::int64_t>(max_n)));
  const Index m = static_cast<Index>(draw(rng, static_cast<std::int64_t>(n) + 1, static_cast<std::int64_t>(max_m)));
  for (;;) {
    Matrix A(0, n);
    Vector b;
    std::set<Vector, VectorLess> seen;
    while (A.rows() < m) {
      Vector row(n);
      bool zero = true;
      for (auto& q : row) {
        q = static_cast<long>(draw(rng, -5, 5));
        if (q != 0) zero = false;
      }
      const Rational rhs = static_cast<long>(draw(rng, 1, 5));
      if (zero) continue;
      // Duplicate after scaling by the first nonzero entry's magnitude.
      Vector key = row;
      key.push_back(rhs);
      const Rational lead = abs(*std::find_if(key.begin(), key.end(), [](const Rational& q) { return q != 0; }));
      for (auto& q : key) q /= lead;
      if (!seen.insert(key).second) continue;
      A.append_row(row);
      b.push_back(rhs);
    }
    if (rank(A) < n) continue;
    InstanceDocument doc;
    doc.A = std::move(A);
    doc.b = std::move(b);
    return doc;
  }
}

Json run_fuzz(std::uint64_t seed, Index count, const PipelineOptions& options) {
  std::mt19937_64 rng(seed);
  PipelineOptions quiet = options;
  quiet.timings = false;
  Json instances = Json::array();
  Index violations = 0;
  for (Index i = 0; i < count; ++i) {
    InstanceDocument doc = random_instance(rng);
    Json entry{{"index", i}, {"n", doc.A.cols()}, {"m", doc.A.rows()}};
    try {
      const Json report = run_verify(doc, quiet);
      const auto failed = failed_checks(report);
      entry["vertices"] = report["vertex_count"];
      entry["bounded"] = report["bounded"];
      entry["failed"] = failed;
      if (!failed.empty()) {
        ++violations;
        entry["instance"] = instance_to_json(doc);
      }
    } catch (const Error& e) {
      ++violations;
      entry["error"] = e.what();
      entry["instance"] = instance_to_json(doc);
    }
    instances.push_back(std::move(entry));
  }
  return Json{{"seed", seed}, {"count", count}, {"violations", violations}, {"instances", instances}};
}

}  // namespace deltahull
