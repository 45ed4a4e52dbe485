#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "deltahull/polyhedron.hpp"

namespace deltahull {

using Json = nlohmann::json;

/// {"schema": 1, "A": [[str]], "b": [str], "feasible_point"?: [str], "metadata"?: {...}}
/// or CSV rows "a_1,...,a_n,b" with '#' comments.
struct InstanceDocument {
  Matrix A;
  Vector b;
  std::optional<Vector> feasible_point;
  Json metadata = Json::object();
};

inline constexpr int kInstanceSchema = 1;

/// JSON when the first non-blank character is '{', CSV otherwise. Throws
/// ParseError or DimensionMismatch.
InstanceDocument parse_instance(std::string_view text);
InstanceDocument load_instance_file(const std::filesystem::path& path);
/// Parses and validates pointedness.
HPolyhedron load_polyhedron(std::string_view text);

Json instance_to_json(const InstanceDocument& doc);

/// {"rays": [[str]], "cones": [[index]]}, one ray per row.
struct FanDocument {
  Matrix rays;
  std::vector<IndexSet> cones;
};
Json fan_to_json(const FanDocument& fan);
FanDocument parse_fan(std::string_view text);

/// Sorted keys, no whitespace.
std::string canonical_dump(const Json& value);

Json rational_json(const Rational& q);
Json vector_json(std::span<const Rational> v);
Json matrix_json(const Matrix& m);
/// {"exact": "p/q", "float": double}
Json exact_and_float(const Rational& q);

Rational rational_from_json(const Json& value);
Vector vector_from_json(const Json& value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace deltahull
