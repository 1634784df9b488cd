#include "mfzeta/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "json.hpp"
#include "mfzeta/errors.hpp"

namespace mfzeta {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema_error(path, "expected an object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) schema_error(path + "." + item.key(), "unknown key");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<int>();
}

std::string as_label(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  schema_error(path, "expected a string or integer vertex id");
}

std::vector<double> as_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::vector<double>> as_tables(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of tables");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_numbers(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <typename T, typename Read>
void read_optional(const json& parent, const char* key, const std::string& path, T& target,
                   Read read) {
  if (parent.contains(key)) target = read(parent.at(key), path + "." + key);
}

GraphSpec read_graph(const json& j) {
  const std::string path = "graph";
  allow_keys(j, path, {"vertices", "edges", "osc"});
  GraphSpec g;
  if (!j.contains("vertices")) schema_error(path + ".vertices", "missing");
  if (!j.contains("edges")) schema_error(path + ".edges", "missing");
  const json& vs = j.at("vertices");
  if (!vs.is_array()) schema_error(path + ".vertices", "expected an array");
  std::set<std::string> seen_vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string vpath = path + ".vertices[" + std::to_string(i) + "]";
    g.vertices.push_back(as_label(vs[i], vpath));
    if (!seen_vertices.insert(g.vertices.back()).second) schema_error(vpath, "duplicate vertex");
  }
  read_optional(j, "osc", path, g.osc, [](const json& v, const std::string& p) {
    if (!v.is_boolean()) schema_error(p, "expected a boolean");
    return v.get<bool>();
  });

  const json& es = j.at("edges");
  if (!es.is_array()) schema_error(path + ".edges", "expected an array");
  std::set<int> ids;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string epath = path + ".edges[" + std::to_string(i) + "]";
    const json& e = es[i];
    allow_keys(e, epath, {"id", "from", "to", "r", "p"});
    if (!e.contains("id")) schema_error(epath + ".id", "missing");
    EdgeSpec edge;
    edge.id = as_int(e.at("id"), epath + ".id");
    const std::string named = epath + " (edge " + std::to_string(edge.id) + ")";
    for (const char* key : {"from", "to", "r", "p"}) {
      if (!e.contains(key)) schema_error(named + "." + key, "missing");
    }
    edge.from = as_label(e.at("from"), named + ".from");
    edge.to = as_label(e.at("to"), named + ".to");
    edge.r = as_number(e.at("r"), named + ".r");
    edge.p = as_number(e.at("p"), named + ".p");
    if (!seen_vertices.count(edge.from)) schema_error(named + ".from", "undeclared vertex");
    if (!seen_vertices.count(edge.to)) schema_error(named + ".to", "undeclared vertex");
    if (!ids.insert(edge.id).second) schema_error(named + ".id", "edge id declared twice");
    g.edges.push_back(edge);
  }
  for (int k = 0; k < static_cast<int>(g.edges.size()); ++k) {
    if (!ids.count(k)) {
      schema_error(path + ".edges", "edge ids must be 0..|E|-1; missing " + std::to_string(k));
    }
  }
  return g;
}

ObservableSpec read_observable(const json& j) {
  const std::string path = "observable";
  ObservableSpec o;
  if (!j.is_object()) schema_error(path, "expected an object");
  if (!j.contains("kind")) schema_error(path + ".kind", "missing");
  const json& kind = j.at("kind");
  if (!kind.is_string()) schema_error(path + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "measure") {
    allow_keys(j, path, {"kind"});
    o.kind = ObservableKind::Measure;
  } else if (k == "linear") {
    allow_keys(j, path, {"kind", "f"});
    o.kind = ObservableKind::Linear;
    if (!j.contains("f")) schema_error(path + ".f", "missing");
    o.f = as_tables(j.at("f"), path + ".f");
  } else if (k == "ratio") {
    allow_keys(j, path, {"kind", "psi", "phi"});
    o.kind = ObservableKind::Ratio;
    if (!j.contains("psi")) schema_error(path + ".psi", "missing");
    o.psi = as_tables(j.at("psi"), path + ".psi");
    read_optional(j, "phi", path, o.phi, as_numbers);
  } else if (k == "composed") {
    allow_keys(j, path, {"kind", "phi_vec", "map", "numerator", "denominator", "s", "t"});
    o.kind = ObservableKind::Composed;
    if (!j.contains("phi_vec")) schema_error(path + ".phi_vec", "missing");
    o.phi_vec = as_tables(j.at("phi_vec"), path + ".phi_vec");
    read_optional(j, "map", path, o.map, [](const json& v, const std::string& p) {
      if (!v.is_string()) schema_error(p, "expected a string");
      return v.get<std::string>();
    });
    if (o.map != "identity" && o.map != "ratio" && o.map != "holder") {
      schema_error(path + ".map", "expected identity, ratio or holder");
    }
    read_optional(j, "numerator", path, o.numerator, as_int);
    read_optional(j, "denominator", path, o.denominator, as_int);
    read_optional(j, "s", path, o.s, as_numbers);
    read_optional(j, "t", path, o.t, as_numbers);
  } else {
    schema_error(path + ".kind", "unknown observable kind '" + k + "'");
  }
  return o;
}

GridSpec read_grid(const json& j) {
  const std::string path = "grid";
  allow_keys(j, path, {"q_min", "q_max", "steps", "q", "s", "s_offset", "n_max"});
  GridSpec g;
  read_optional(j, "q_min", path, g.q_min, as_number);
  read_optional(j, "q_max", path, g.q_max, as_number);
  read_optional(j, "steps", path, g.steps, as_int);
  read_optional(j, "q", path, g.q, as_numbers);
  read_optional(j, "s", path, g.s, as_numbers);
  read_optional(j, "s_offset", path, g.s_offset, as_number);
  read_optional(j, "n_max", path, g.n_max, as_int);
  if (g.steps < 2) schema_error(path + ".steps", "must be at least 2");
  if (!(g.q_min < g.q_max)) schema_error(path + ".q_min", "must be below q_max");
  if (g.n_max < 2) schema_error(path + ".n_max", "must be at least 2");
  return g;
}

FineSpec read_fine(const json& j) {
  const std::string path = "fine";
  allow_keys(j, path, {"n", "alpha", "radius", "radii", "tolerance"});
  FineSpec f;
  read_optional(j, "n", path, f.n, as_int);
  read_optional(j, "alpha", path, f.alpha, as_numbers);
  read_optional(j, "radius", path, f.radius, as_number);
  read_optional(j, "radii", path, f.radii, as_numbers);
  read_optional(j, "tolerance", path, f.tolerance, as_number);
  if (f.n < 1) schema_error(path + ".n", "must be at least 1");
  if (!(f.radius > 0.0)) schema_error(path + ".radius", "must be positive");
  return f;
}

OutputSpec read_output(const json& j) {
  const std::string path = "output";
  allow_keys(j, path, {"path"});
  OutputSpec o;
  read_optional(j, "path", path, o.path, [](const json& v, const std::string& p) {
    if (!v.is_string()) schema_error(p, "expected a string");
    return v.get<std::string>();
  });
  return o;
}

Eigen::MatrixXd edge_major(const std::vector<std::vector<double>>& tables, int edges,
                           const char* what) {
  Eigen::MatrixXd m(edges, static_cast<Eigen::Index>(tables.size()));
  for (std::size_t j = 0; j < tables.size(); ++j) {
    if (static_cast<int>(tables[j].size()) != edges) {
      throw Error(ErrorCode::UnboundEdge, std::string(what) + " table " + std::to_string(j) +
                                              " needs one value per edge");
    }
    for (int e = 0; e < edges; ++e) m(e, static_cast<Eigen::Index>(j)) = tables[j][static_cast<std::size_t>(e)];
  }
  return m;
}

}  // namespace

std::vector<double> RunConfig::q_values() const {
  if (!grid.q.empty()) return grid.q;
  std::vector<double> out;
  for (int k = 0; k < grid.steps; ++k) {
    out.push_back(k == grid.steps - 1
                      ? grid.q_max
                      : grid.q_min + (grid.q_max - grid.q_min) * k / (grid.steps - 1));
  }
  return out;
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column position.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": " + e.what());
  }

  RunConfig config;
  allow_keys(root, "config", {"graph", "observable", "grid", "fine", "output"});
  if (!root.contains("graph")) schema_error("graph", "missing");
  config.graph = read_graph(root.at("graph"));
  if (root.contains("observable")) config.observable = read_observable(root.at("observable"));
  if (root.contains("grid")) config.grid = read_grid(root.at("grid"));
  if (root.contains("fine")) config.fine = read_fine(root.at("fine"));
  if (root.contains("output")) config.output = read_output(root.at("output"));

  try {
    const GDSystem system = system_from(config);
    observable_from(config, system);
  } catch (const Error& e) {
    throw Error(ErrorCode::SemanticError, e.what());
  }
  return config;
}

std::string emit_config(const RunConfig& config) {
  ordered_json root;
  ordered_json graph;
  graph["vertices"] = config.graph.vertices;
  graph["edges"] = ordered_json::array();
  for (const EdgeSpec& e : config.graph.edges) {
    ordered_json edge;
    edge["id"] = e.id;
    edge["from"] = e.from;
    edge["to"] = e.to;
    edge["r"] = e.r;
    edge["p"] = e.p;
    graph["edges"].push_back(edge);
  }
  graph["osc"] = config.graph.osc;
  root["graph"] = graph;

  const ObservableSpec& o = config.observable;
  ordered_json obs;
  switch (o.kind) {
    case ObservableKind::Measure:
      obs["kind"] = "measure";
      break;
    case ObservableKind::Linear:
      obs["kind"] = "linear";
      obs["f"] = o.f;
      break;
    case ObservableKind::Ratio:
      obs["kind"] = "ratio";
      obs["psi"] = o.psi;
      obs["phi"] = o.phi;
      break;
    case ObservableKind::Composed:
      obs["kind"] = "composed";
      obs["phi_vec"] = o.phi_vec;
      obs["map"] = o.map;
      obs["numerator"] = o.numerator;
      obs["denominator"] = o.denominator;
      obs["s"] = o.s;
      obs["t"] = o.t;
      break;
  }
  root["observable"] = obs;

  ordered_json grid;
  grid["q_min"] = config.grid.q_min;
  grid["q_max"] = config.grid.q_max;
  grid["steps"] = config.grid.steps;
  grid["q"] = config.grid.q;
  grid["s"] = config.grid.s;
  grid["s_offset"] = config.grid.s_offset;
  grid["n_max"] = config.grid.n_max;
  root["grid"] = grid;

  ordered_json fine;
  fine["n"] = config.fine.n;
  fine["alpha"] = config.fine.alpha;
  fine["radius"] = config.fine.radius;
  fine["radii"] = config.fine.radii;
  fine["tolerance"] = config.fine.tolerance;
  root["fine"] = fine;

  root["output"] = ordered_json{{"path", config.output.path}};
  return root.dump(2) + "\n";
}

GDSystem system_from(const RunConfig& config) {
  const GraphSpec& spec = config.graph;
  std::map<std::string, VertexId> index;
  for (std::size_t i = 0; i < spec.vertices.size(); ++i) {
    index.emplace(spec.vertices[i], static_cast<VertexId>(i));
  }
  const auto edge_total = spec.edges.size();
  std::vector<Edge> edges(edge_total);
  Eigen::VectorXd r(static_cast<Eigen::Index>(edge_total));
  Eigen::VectorXd p(static_cast<Eigen::Index>(edge_total));
  for (const EdgeSpec& e : spec.edges) {
    edges[static_cast<std::size_t>(e.id)] = {index.at(e.from), index.at(e.to)};
    r(e.id) = e.r;
    p(e.id) = e.p;
  }
  DirectedMultigraph g(static_cast<int>(spec.vertices.size()), std::move(edges));
  return build_system(std::move(g), std::move(r), std::move(p), spec.osc);
}

Observable observable_from(const RunConfig& config, const GDSystem& system) {
  const ObservableSpec& o = config.observable;
  const int edges = system.graph.edge_count();
  Observable u;
  switch (o.kind) {
    case ObservableKind::Measure:
      u = measure_observable(system);
      break;
    case ObservableKind::Linear:
      u = LinearIntegral{edge_major(o.f, edges, "f")};
      break;
    case ObservableKind::Ratio: {
      Eigen::VectorXd phi = system.log_ratio();
      if (!o.phi.empty()) phi = edge_major({o.phi}, edges, "phi").col(0);
      u = MeasureRatio{edge_major(o.psi, edges, "psi"), phi};
      break;
    }
    case ObservableKind::Composed: {
      Composition q = IdentityMap{};
      if (o.map == "ratio") {
        q = CoordinateRatio{o.numerator, o.denominator};
      } else if (o.map == "holder") {
        q = HolderProduct{Eigen::Map<const Eigen::VectorXd>(o.s.data(), static_cast<Eigen::Index>(o.s.size())),
                          Eigen::Map<const Eigen::VectorXd>(o.t.data(), static_cast<Eigen::Index>(o.t.size()))};
      }
      u = Composed{edge_major(o.phi_vec, edges, "phi_vec"), q};
      break;
    }
  }
  validate_observable(system.graph, u);
  return u;
}

std::string format_number(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::NotANumber, "NaN in output");
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace mfzeta
