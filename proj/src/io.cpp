#include "deltahull/io.hpp"

#include <fstream>
#include <sstream>

#include "deltahull/errors.hpp"

namespace deltahull {

std::string canonical_dump(const Json& value) { return value.dump(); }

Json rational_json(const Rational& q) { return to_string(q); }

Json vector_json(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

Json exact_and_float(const Rational& q) { return Json{{"exact", to_string(q)}, {"float", q.get_d()}}; }

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return parse_rational(value.dump());
  throw ParseError("expected a rational string, got " + value.dump());
}

Vector vector_from_json(const Json& value) {
  if (!value.is_array()) throw ParseError("expected an array, got " + value.dump());
  Vector out;
  for (const auto& item : value) out.push_back(rational_from_json(item));
  return out;
}

namespace {

Matrix matrix_from_json(const Json& value, const char* what) {
  if (!value.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
  std::vector<Vector> rows;
  for (const auto& row : value) rows.push_back(vector_from_json(row));
  if (rows.empty()) throw ParseError(std::string(what) + " has no rows");
  const Index cols = rows.front().size();
  for (Index i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols)
      throw DimensionMismatch(std::string(what) + " row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " + std::to_string(cols));
  return Matrix::from_rows(rows, cols);
}

InstanceDocument parse_json_instance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  if (doc.contains("schema") && doc["schema"] != kInstanceSchema)
    throw ParseError("unsupported schema " + doc["schema"].dump());
  if (!doc.contains("A") || !doc.contains("b")) throw ParseError("instance needs \"A\" and \"b\"");
  InstanceDocument out;
  out.A = matrix_from_json(doc["A"], "A");
  out.b = vector_from_json(doc["b"]);
  if (out.b.size() != out.A.rows())
    throw DimensionMismatch("b has " + std::to_string(out.b.size()) + " entries for " +
                            std::to_string(out.A.rows()) + " rows");
  if (doc.contains("feasible_point") && !doc["feasible_point"].is_null()) {
    out.feasible_point = vector_from_json(doc["feasible_point"]);
    if (out.feasible_point->size() != out.A.cols())
      throw DimensionMismatch("feasible_point has the wrong dimension");
  }
  if (doc.contains("metadata")) out.metadata = doc["metadata"];
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

InstanceDocument parse_csv_instance(std::string_view text) {
  std::vector<Vector> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    Vector row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        row.push_back(parse_rational(trim(field)));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (row.size() < 2) throw ParseError("line " + std::to_string(line_no) + ": need at least one coefficient and b");
    if (!rows.empty() && row.size() != rows.front().size())
      throw DimensionMismatch("line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                              " fields, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty CSV instance");
  const Index n = rows.front().size() - 1;
  InstanceDocument out;
  out.A = Matrix(0, n);
  for (auto& row : rows) {
    out.b.push_back(row.back());
    row.pop_back();
    out.A.append_row(row);
  }
  return out;
}

}  // namespace

InstanceDocument parse_instance(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_instance(text);
  return parse_csv_instance(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  out << text;
}

InstanceDocument load_instance_file(const std::filesystem::path& path) {
  return parse_instance(read_text_file(path));
}

HPolyhedron load_polyhedron(std::string_view text) {
  InstanceDocument doc = parse_instance(text);
  return HPolyhedron(std::move(doc.A), std::move(doc.b));
}

Json instance_to_json(const InstanceDocument& doc) {
  Json out{{"schema", kInstanceSchema}, {"A", matrix_json(doc.A)}, {"b", vector_json(doc.b)}};
  if (doc.feasible_point) out["feasible_point"] = vector_json(*doc.feasible_point);
  if (!doc.metadata.empty()) out["metadata"] = doc.metadata;
  return out;
}

Json fan_to_json(const FanDocument& fan) {
  Json cones = Json::array();
  for (const auto& c : fan.cones) cones.push_back(c);
  return Json{{"rays", matrix_json(fan.rays)}, {"cones", cones}};
}

FanDocument parse_fan(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rays") || !doc.contains("cones"))
    throw ParseError("fan file needs \"rays\" and \"cones\"");
  FanDocument fan;
  fan.rays = matrix_from_json(doc["rays"], "rays");
  for (const auto& c : doc["cones"]) {
    IndexSet cone;
    for (const auto& i : c) {
      if (!i.is_number_unsigned()) throw ParseError("cone entries must be nonnegative indices");
      const Index idx = i.get<Index>();
      if (idx >= fan.rays.rows()) throw DimensionMismatch("cone index " + std::to_string(idx) + " out of range");
      cone.push_back(idx);
    }
    if (cone.size() != fan.rays.cols()) throw DimensionMismatch("cone is not simplicial");
    fan.cones.push_back(std::move(cone));
  }
  return fan;
}

}  // namespace deltahull
