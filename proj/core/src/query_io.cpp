#include <fstream>
#include <sstream>

#include <json.hpp>

#include "joinopt/workload.hpp"

namespace joinopt {

namespace {

using nlohmann::json;

const json& field(const json& object, const char* key, const std::string& where) {
  if (!object.is_object()) throw ParseError(where + ": expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

double number(const json& object, const char* key, const std::string& where) {
  const json& v = field(object, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::size_t index(const json& object, const char* key, const std::string& where) {
  const json& v = field(object, key, where);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ParseError(where + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

const json& array(const json& object, const char* key) {
  const json& v = field(object, key, "query");
  if (!v.is_array()) throw ParseError(std::string(key) + ": expected an array");
  return v;
}

}  // namespace

std::string query_to_json(const QueryGraph& g) {
  json relations = json::array();
  for (const auto& r : g.relations())
    relations.push_back({{"name", r.name}, {"cardinality", r.base_cardinality}, {"selectivity", r.selection_factor}});
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({{"left", e.u}, {"right", e.v}, {"selectivity", e.selectivity}});
  json doc;
  doc["relations"] = std::move(relations);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

QueryGraph query_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }

  std::vector<RelationInfo> relations;
  const json& rels = array(doc, "relations");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const std::string where = "relations[" + std::to_string(i) + "]";
    const json& name = field(rels[i], "name", where);
    if (!name.is_string()) throw ParseError(where + ".name: expected a string");
    relations.push_back(
        {name.get<std::string>(), number(rels[i], "cardinality", where), number(rels[i], "selectivity", where)});
  }

  std::vector<EdgeInfo> edges;
  const json& es = array(doc, "edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    edges.push_back({index(es[i], "left", where), index(es[i], "right", where), number(es[i], "selectivity", where)});
  }
  return QueryGraph(std::move(relations), std::move(edges));
}

void write_query(const QueryGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << query_to_json(g);
  if (!out.flush()) throw Error("write to " + path.string() + " failed");
}

QueryGraph read_query(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return query_from_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace joinopt
