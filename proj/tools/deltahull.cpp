// deltahull command-line entry point. Reports go to stdout (or --json),
// diagnostics to stderr.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "deltahull/errors.hpp"
#include "deltahull/pipeline.hpp"

namespace dh = deltahull;

namespace {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInfeasible = 2,
  kNotPointed = 3,
  kInvalidInput = 4,
  kBoundViolated = 5,
  kUnbounded = 6,
  kBudgetExceeded = 7,
};

int exit_code_for(dh::ErrorKind kind) {
  switch (kind) {
    case dh::ErrorKind::Parse:
    case dh::ErrorKind::DimensionMismatch:
    case dh::ErrorKind::PreconditionViolated:
      return kInvalidInput;
    case dh::ErrorKind::InfeasiblePoint:
      return kInfeasible;
    case dh::ErrorKind::NotPointed:
    case dh::ErrorKind::UnboundedLine:
      return kNotPointed;
    case dh::ErrorKind::BoundViolated:
      return kBoundViolated;
    case dh::ErrorKind::Unbounded:
      return kUnbounded;
    case dh::ErrorKind::BudgetExceeded:
      return kBudgetExceeded;
    default:
      return kInternal;
  }
}

const char* kind_name(dh::ErrorKind kind) {
  switch (kind) {
    case dh::ErrorKind::Parse: return "parse";
    case dh::ErrorKind::NotPointed: return "not-pointed";
    case dh::ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case dh::ErrorKind::SingularMatrix: return "singular-matrix";
    case dh::ErrorKind::SingularBasis: return "singular-basis";
    case dh::ErrorKind::SingularUpdate: return "singular-update";
    case dh::ErrorKind::InfeasiblePoint: return "infeasible";
    case dh::ErrorKind::UnboundedLine: return "unbounded-line";
    case dh::ErrorKind::NotAVertex: return "not-a-vertex";
    case dh::ErrorKind::RankDeficient: return "rank-deficient";
    case dh::ErrorKind::BudgetExceeded: return "budget-exceeded";
    case dh::ErrorKind::BoundViolated: return "bound-violated";
    case dh::ErrorKind::EmptyAlphaInterval: return "empty-alpha-interval";
    case dh::ErrorKind::DisconnectedGraph: return "disconnected-graph";
    case dh::ErrorKind::Unbounded: return "unbounded";
    case dh::ErrorKind::PreconditionViolated: return "invalid-parameters";
  }
  return "internal";
}

void emit(const dh::Json& report, const std::string& json_path) {
  const std::string text = dh::canonical_dump(report) + "\n";
  if (json_path.empty())
    std::cout << text;
  else
    dh::write_text_file(json_path, text);
}

struct Flags {
  std::string path;
  std::string feasible_point_file;
  std::uint64_t budget = 0;
  std::string json_out;
  bool strip_redundant = false;
  bool no_timings = false;
  int normalize = -1;
  std::uint64_t seed = 1;
  std::size_t count = 200;
  std::size_t n = 2;
  std::size_t k = 0;
  std::string kind = "subdivision";
};

dh::PipelineOptions options_from(const Flags& f) {
  dh::PipelineOptions o;
  o.budget = f.budget ? f.budget : dh::budget_from_environment();
  o.strip_redundant = f.strip_redundant;
  o.timings = !f.no_timings;
  if (!f.feasible_point_file.empty()) {
    const dh::Json doc = dh::Json::parse(dh::read_text_file(f.feasible_point_file), nullptr, false);
    if (doc.is_discarded()) throw dh::ParseError("feasible point file is not valid JSON");
    o.feasible_point = dh::vector_from_json(doc.is_object() ? doc.at("feasible_point") : doc);
  }
  return o;
}

int run_instance_command(const std::string& name, const Flags& f) {
  const dh::InstanceDocument doc = dh::load_instance_file(f.path);
  const dh::PipelineOptions o = options_from(f);
  if (name == "vertices") emit(dh::run_vertices(doc, o), f.json_out);
  if (name == "stats") emit(dh::run_stats(doc, o), f.json_out);
  if (name == "diameter") emit(dh::run_diameter(doc, o), f.json_out);
  if (name == "count") emit(dh::run_count(doc, o), f.json_out);
  if (name == "verify") {
    const dh::Json report = dh::run_verify(doc, o);
    emit(report, f.json_out);
    const auto failed = dh::failed_checks(report);
    if (!failed.empty()) {
      std::cerr << dh::canonical_dump(dh::Json{{"error", "bound-violated"},
                                               {"failed", failed},
                                               {"reproducer", dh::instance_to_json(doc)}})
                << "\n";
      return kBoundViolated;
    }
  }
  return kOk;
}

int run_generate(const Flags& f) {
  if (f.kind != "subdivision") throw dh::PreconditionViolated("unknown generator kind '" + f.kind + "'");
  if (f.n < 2) throw dh::PreconditionViolated("--n must be at least 2");
  const dh::GeneratedInstance g = dh::generate_subdivision(f.n, f.k);
  std::optional<dh::Index> digits;
  if (f.normalize >= 0) digits = static_cast<dh::Index>(f.normalize);
  dh::write_text_file(f.path + ".instance.json", dh::canonical_dump(dh::instance_to_json(g.instance)) + "\n");
  dh::write_text_file(f.path + ".fan.json", dh::canonical_dump(dh::fan_json_with_normalized(g, digits)) + "\n");
  dh::Json report{{"command", "generate"},
                  {"expected", dh::expected_counts_json(f.n, f.k)},
                  {"rays", g.fan.rays.rows()},
                  {"cones", g.fan.cones.size()},
                  {"files", {f.path + ".instance.json", f.path + ".fan.json"}}};
  emit(report, f.json_out);
  return kOk;
}

int run_fuzz(const Flags& f) {
  dh::PipelineOptions o = options_from(f);
  const dh::Json report = dh::run_fuzz(f.seed, f.count, o);
  if (!f.path.empty()) {
    std::filesystem::create_directories(f.path);
    for (const auto& entry : report["instances"])
      if (entry.contains("instance"))
        dh::write_text_file(std::filesystem::path(f.path) / ("fuzz-" + std::to_string(entry["index"].get<int>()) + ".json"),
                            dh::canonical_dump(entry["instance"]) + "\n");
  }
  emit(report, f.json_out);
  return report["violations"].get<int>() == 0 ? kOk : kBoundViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact vertex enumeration and subdeterminant analysis of H-polyhedra"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget", f.budget, "minor/box scan budget (default: DELTAHULL_BUDGET or 1000000)");
    sub->add_option("--json", f.json_out, "write the report to this file instead of stdout");
    sub->add_flag("--no-timings", f.no_timings, "omit wall-clock timings for byte-stable reports");
  };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("path", f.path, "instance file (JSON or CSV)")->required();
    sub->add_option("--feasible-point", f.feasible_point_file, "JSON file with a feasible point");
    sub->add_flag("--strip-redundant", f.strip_redundant, "drop redundant rows before analysis");
    add_common(sub);
  };

  std::vector<std::pair<std::string, CLI::App*>> instance_commands;
  for (const char* name : {"vertices", "verify", "count", "stats", "diameter"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_instance(sub);
    instance_commands.emplace_back(name, sub);
  }
  CLI::App* generate = app.add_subcommand("generate", "write a subdivision fan and its dual system");
  generate->add_option("path", f.path, "output prefix")->required();
  generate->add_option("--kind", f.kind, "generator kind")->capture_default_str();
  generate->add_option("--n", f.n, "dimension")->required();
  generate->add_option("--k", f.k, "subdivision depth")->required();
  generate->add_option("--normalize", f.normalize, "also emit rays normalized to this many digits");
  add_common(generate);
  CLI::App* fuzz = app.add_subcommand("fuzz", "verify random integer instances");
  fuzz->add_option("path", f.path, "directory for failing instances");
  fuzz->add_option("--seed", f.seed)->capture_default_str();
  fuzz->add_option("--count", f.count)->capture_default_str();
  add_common(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (generate->parsed()) return run_generate(f);
    if (fuzz->parsed()) return run_fuzz(f);
    for (const auto& [name, sub] : instance_commands)
      if (sub->parsed()) return run_instance_command(name, f);
  } catch (const dh::Error& e) {
    std::cerr << dh::canonical_dump(dh::Json{{"error", kind_name(e.kind())}, {"message", e.what()}}) << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << dh::canonical_dump(dh::Json{{"error", "internal"}, {"message", e.what()}}) << "\n";
    return kInternal;
  }
  return kInternal;
}
