#include "orbitcensus/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw StructuralError(where + ": unknown field '" + key + "'");
  }
}

const json& require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw StructuralError(where + ": missing field '" + key + "'");
  return *it;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

MarkovFlowModel parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("model: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw StructuralError("model: top level must be an object");
  reject_unknown_keys(doc, {"k", "vertices", "edges"}, "model");

  const json& k_node = require(doc, "k", "model");
  if (!k_node.is_number_integer() || k_node.get<long long>() < 1) {
    throw StructuralError("model: 'k' must be a positive integer");
  }
  const auto k = static_cast<std::size_t>(k_node.get<long long>());

  const json& vertex_node = require(doc, "vertices", "model");
  if (!vertex_node.is_array()) throw StructuralError("model: 'vertices' must be a list of names");
  std::vector<std::string> vertices;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& v : vertex_node) {
    if (!v.is_string()) throw StructuralError("model: vertex names must be strings");
    index.emplace(v.get<std::string>(), vertices.size());
    vertices.push_back(v.get<std::string>());
  }

  const json& edge_node = require(doc, "edges", "model");
  if (!edge_node.is_array()) throw StructuralError("model: 'edges' must be a list");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edge_node.size(); ++i) {
    const json& e = edge_node[i];
    const std::string where = "model: edge " + std::to_string(i);
    if (!e.is_object()) throw StructuralError(where + " must be an object");
    reject_unknown_keys(e, {"from", "to", "length", "weight"}, where);

    Edge edge;
    for (const char* end : {"from", "to"}) {
      const json& name = require(e, end, where);
      if (!name.is_string()) throw StructuralError(where + ": '" + end + "' must be a vertex name");
      auto it = index.find(name.get<std::string>());
      if (it == index.end()) {
        throw StructuralError(where + ": unknown vertex '" + name.get<std::string>() + "'");
      }
      (std::string_view(end) == "from" ? edge.from : edge.to) = it->second;
    }
    const json& length = require(e, "length", where);
    if (!length.is_number()) throw StructuralError(where + ": 'length' must be a number");
    edge.length = length.get<double>();

    const json& weight = require(e, "weight", where);
    if (!weight.is_array()) throw StructuralError(where + ": 'weight' must be a list of integers");
    std::vector<std::int64_t> coords;
    for (const auto& c : weight) {
      if (!c.is_number_integer()) throw StructuralError(where + ": weight entries must be integers");
      coords.push_back(c.get<std::int64_t>());
    }
    edge.weight = HomologyClass(std::move(coords));
    edges.push_back(std::move(edge));
  }
  return MarkovFlowModel(k, std::move(vertices), std::move(edges));
}

MarkovFlowModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("model: cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

std::string serialize_model(const MarkovFlowModel& model) {
  // Hand-rolled so lengths keep exactly 17 significant digits.
  std::string out = "{\"k\": " + std::to_string(model.k()) + ", \"vertices\": [";
  for (std::size_t i = 0; i < model.vertex_count(); ++i) {
    if (i) out += ", ";
    out += json(model.vertices()[i]).dump();
  }
  out += "], \"edges\": [";
  for (std::size_t i = 0; i < model.edge_count(); ++i) {
    const Edge& e = model.edge(i);
    if (i) out += ", ";
    out += "{\"from\": " + json(model.vertices()[e.from]).dump() + ", \"to\": " +
           json(model.vertices()[e.to]).dump() + ", \"length\": " + format_double(e.length) + ", \"weight\": [";
    for (std::size_t j = 0; j < e.weight.dimension(); ++j) {
      if (j) out += ", ";
      out += std::to_string(e.weight[j]);
    }
    out += "]}";
  }
  out += "]}";
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string model_hash(const MarkovFlowModel& model) { return fnv1a_hex(serialize_model(model)); }

}  // namespace orbitcensus
