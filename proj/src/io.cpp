#include "gcoh/io.hpp"

#include <fstream>
#include <sstream>

namespace gcoh {

namespace {

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

BigInt parse_weight(const nlohmann::json& w, const std::string& id) {
  std::string digits;
  if (w.is_string())
    digits = w.get<std::string>();
  else if (w.is_number_unsigned())
    digits = std::to_string(w.get<std::uint64_t>());
  else
    throw InputError("weight of vertex " + id + " must be a decimal string");
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("weight of vertex " + id + " is not a decimal integer: " + digits);
  return BigInt(digits, 10);
}

}  // namespace

WeightedGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw InputError("graph document needs a \"vertices\" array");
  std::vector<std::pair<std::string, BigInt>> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v["id"].is_string() || !v.contains("weight"))
      throw InputError("each vertex needs a string \"id\" and a \"weight\"");
    const std::string id = v["id"].get<std::string>();
    vertices.emplace_back(id, parse_weight(v["weight"], id));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw InputError("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw InputError("each edge must be a pair of vertex ids");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return WeightedGraph(std::move(vertices), edges);
}

WeightedGraph parse_graph(const std::string& text) { return graph_from_json(parse_json(text)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WeightedGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (int v = 0; v < g.vertex_count(); ++v)
    doc["vertices"].push_back({{"id", g.id(v)}, {"weight", g.weight(v).get_str()}});
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) doc["edges"].push_back({g.id(e.a), g.id(e.b)});
  return doc;
}

Assignment parse_assignment(const std::string& text) {
  const auto doc = parse_json(text);
  if (!doc.is_object()) throw InputError("valuation file must be a JSON object");
  Assignment a;
  for (const auto& [id, v] : doc.items()) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw InputError("valuation of " + id + " must be a nonnegative integer");
    a[id] = v.get<std::int64_t>();
  }
  return a;
}

Assignment load_assignment(const std::string& path) { return parse_assignment(read_file(path)); }

}  // namespace gcoh
