#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "deltahull/fan_graph.hpp"
#include "deltahull/io.hpp"
#include "deltahull/lattice.hpp"
#include "deltahull/subdivision.hpp"

namespace deltahull {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;
/// Redundancy is validated by default only up to this many rows.
inline constexpr Index kRedundancyScanLimit = 64;

struct PipelineOptions {
  std::uint64_t budget = kDefaultBudget;
  bool strip_redundant = false;
  bool timings = true;
  bool count = true;  // verify: include the brute-force count when bounded
  std::optional<Vector> feasible_point;  // overrides the instance's own
};

/// Budget from DELTAHULL_BUDGET, or kDefaultBudget. Throws ParseError on a
/// malformed value.
std::uint64_t budget_from_environment();

/// Everything the commands share: the polyhedron after optional stripping,
/// the starting vertex and the enumeration.
struct Analysis {
  HPolyhedron P;
  IndexSet kept_rows;  // rows of the input that survive stripping
  VertexRecord start;
  EnumerationResult result;
  std::vector<std::string> warnings;
  double enumerate_ms = 0;
};

/// Throws InfeasiblePoint when the system has no solution (or the supplied
/// point is infeasible), NotPointed when rank(A) < n.
Analysis analyze(const InstanceDocument& doc, const PipelineOptions& options);

Json run_vertices(const InstanceDocument& doc, const PipelineOptions& options);
Json run_stats(const InstanceDocument& doc, const PipelineOptions& options);
Json run_diameter(const InstanceDocument& doc, const PipelineOptions& options);
Json run_count(const InstanceDocument& doc, const PipelineOptions& options);
/// Full pipeline. Every bound check is recorded; if any fails the report is
/// still returned with "all_pass": false.
Json run_verify(const InstanceDocument& doc, const PipelineOptions& options);

/// Names of the failed checks in a verify report.
std::vector<std::string> failed_checks(const Json& report);

struct GeneratedInstance {
  SubdivisionFan fan;
  LiftedPolytope lifted;
  InstanceDocument instance;  // rays x <= 1 / scaling, feasible point 0
  FanDocument fan_document;
  ExpectedCounts expected;
};

/// Subdivision fan of depth k with its lifted polytope and dual system.
GeneratedInstance generate_subdivision(Index n, Index k);

Json fan_json_with_normalized(const GeneratedInstance& g, std::optional<Index> digits);
Json expected_counts_json(Index n, Index k);

/// Random integer instance: n in [2, max_n], m in [n + 1, max_m], entries of
/// A in [-5, 5], b in [1, 5] (so 0 is strictly feasible). Rank-deficient,
/// zero and duplicate rows are rejected and redrawn.
InstanceDocument random_instance(std::mt19937_64& rng, Index max_n = 4, Index max_m = 12);

/// Runs run_verify on `count` random instances from the seed.
Json run_fuzz(std::uint64_t seed, Index count, const PipelineOptions& options);

}  // namespace deltahull
