#include "qgraph/graph_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

namespace qgraph {

namespace {

using json = nlohmann::json;

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, (path.empty() ? "/" : path) + ": " + msg);
}

const json& require(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema(path, std::string("missing field \"") + key + "\"");
  return *it;
}

void only_fields(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) schema(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&key](const char* a) { return key == a; }))
      schema(path + "/" + key, "unknown field");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(path, "expected a finite number");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1000000000 || v > 1000000000) schema(path, "integer out of range");
  return static_cast<int>(v);
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::string type_of(const json& obj, const std::string& path) {
  const json& t = require(obj, path, "type");
  if (!t.is_string()) schema(path + "/type", "expected a string");
  return t.get<std::string>();
}

VertexCondition parse_condition(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  const std::string type = type_of(j, path);
  if (type == "dirichlet") {
    only_fields(j, path, {"type"});
    return Dirichlet{};
  }
  if (type == "neumann") {
    only_fields(j, path, {"type"});
    return Neumann{};
  }
  if (type == "internal") {
    only_fields(j, path, {"type"});
    return GeneralizedNeumann{};
  }
  if (type == "robin") {
    only_fields(j, path, {"type", "beta"});
    return Robin{number(require(j, path, "beta"), path + "/beta")};
  }
  schema(path + "/type", "unknown condition type \"" + type + "\"");
}

PotentialSpec parse_potential(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  const std::string type = type_of(j, path);
  if (type == "zero") {
    only_fields(j, path, {"type"});
    return ZeroPotential{};
  }
  if (type == "constant") {
    only_fields(j, path, {"type", "q"});
    return ConstantPotential{number(require(j, path, "q"), path + "/q")};
  }
  if (type == "piecewise") {
    only_fields(j, path, {"type", "breakpoints", "values"});
    return PiecewiseConstantPotential{numbers(require(j, path, "breakpoints"), path + "/breakpoints"),
                                      numbers(require(j, path, "values"), path + "/values")};
  }
  if (type == "sampled") {
    only_fields(j, path, {"type", "grid", "values"});
    return SampledPotential{numbers(require(j, path, "grid"), path + "/grid"),
                            numbers(require(j, path, "values"), path + "/values")};
  }
  schema(path + "/type", "unknown potential type \"" + type + "\"");
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

GraphDocument parse_graph_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // byte is one past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_of(text, at)) + ": " + e.what());
  }
  only_fields(doc, "", {"version", "vertices", "edges", "ports"});
  if (integer(require(doc, "", "version"), "/version") != 1) schema("/version", "unsupported version");

  MetricGraph g;
  const json& vs = require(doc, "", "vertices");
  if (!vs.is_array()) schema("/vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = "/vertices/" + std::to_string(i);
    only_fields(vs[i], p, {"id", "condition"});
    Vertex v;
    v.id = integer(require(vs[i], p, "id"), p + "/id");
    v.condition = parse_condition(require(vs[i], p, "condition"), p + "/condition");
    g.vertices.push_back(v);
  }
  const json& es = require(doc, "", "edges");
  if (!es.is_array()) schema("/edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    only_fields(es[i], p, {"id", "from", "to", "length", "potential"});
    Edge e;
    e.id = integer(require(es[i], p, "id"), p + "/id");
    e.from = integer(require(es[i], p, "from"), p + "/from");
    e.to = integer(require(es[i], p, "to"), p + "/to");
    e.length = number(require(es[i], p, "length"), p + "/length");
    e.potential = es[i].contains("potential") ? parse_potential(es[i]["potential"], p + "/potential")
                                              : PotentialSpec{ZeroPotential{}};
    g.edges.push_back(e);
  }

  GraphDocument out{validate_graph(std::move(g)), std::nullopt};
  if (doc.contains("ports")) {
    const json& p = doc["ports"];
    only_fields(p, "/ports", {"v_in", "v_out"});
    Ports ports{integer(require(p, "/ports", "v_in"), "/ports/v_in"),
                integer(require(p, "/ports", "v_out"), "/ports/v_out")};
    for (VertexId v : {ports.v_in, ports.v_out})
      if (!out.graph.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "port vertex " + std::to_string(v));
    out.ports = ports;
  }
  return out;
}

GraphDocument load_graph_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph_document(ss.str());
}

std::string dump_graph_document(const MetricGraph& graph, const std::optional<Ports>& ports) {
  json doc;
  doc["version"] = 1;
  json vs = json::array();
  for (const Vertex& v : graph.vertices) {
    json c;
    const VertexCondition cond = v.condition.value_or(GeneralizedNeumann{});
    if (std::holds_alternative<Dirichlet>(cond)) c["type"] = "dirichlet";
    else if (std::holds_alternative<Neumann>(cond)) c["type"] = "neumann";
    else if (const auto* r = std::get_if<Robin>(&cond)) {
      c["type"] = "robin";
      c["beta"] = r->beta;
    } else c["type"] = "internal";
    vs.push_back({{"id", v.id}, {"condition", c}});
  }
  json es = json::array();
  for (const Edge& e : graph.edges) {
    json p;
    if (std::holds_alternative<ZeroPotential>(e.potential)) {
      p["type"] = "zero";
    } else if (const auto* c = std::get_if<ConstantPotential>(&e.potential)) {
      p["type"] = "constant";
      p["q"] = c->q0;
    } else if (const auto* pc = std::get_if<PiecewiseConstantPotential>(&e.potential)) {
      p["type"] = "piecewise";
      p["breakpoints"] = pc->breakpoints;
      p["values"] = pc->values;
    } else {
      const auto& s = std::get<SampledPotential>(e.potential);
      p["type"] = "sampled";
      p["grid"] = s.grid;
      p["values"] = s.values;
    }
    es.push_back({{"id", e.id}, {"from", e.from}, {"to", e.to}, {"length", e.length}, {"potential", p}});
  }
  doc["vertices"] = vs;
  doc["edges"] = es;
  if (ports) doc["ports"] = {{"v_in", ports->v_in}, {"v_out", ports->v_out}};
  return doc.dump(2) + "\n";
}

}  // namespace qgraph
