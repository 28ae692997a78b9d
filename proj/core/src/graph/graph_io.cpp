#include "causal/graph/graph_io.hpp"

#include <fstream>

#include "causal/errors.hpp"
#include "causal/graph/meek.hpp"

namespace causal {

namespace {

std::pair<Vertex, Vertex> endpoints(const Pdag& g, const nlohmann::json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
    throw InputError("edge entries must be [\"from\", \"to\"] string pairs");
  }
  return {g.index_of(e[0].get<std::string>()), g.index_of(e[1].get<std::string>())};
}

}  // namespace

Pdag graph_from_json(const nlohmann::json& j, bool strict) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw InputError("graph JSON needs a \"vertices\" array");
  }
  std::vector<std::string> labels;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw InputError("vertex labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  Pdag g(std::move(labels));
  if (j.contains("directed")) {
    for (const auto& e : j["directed"]) {
      auto [a, b] = endpoints(g, e);
      g.add_directed(a, b);
    }
  }
  if (j.contains("undirected")) {
    for (const auto& e : j["undirected"]) {
      auto [a, b] = endpoints(g, e);
      g.add_undirected(a, b);
    }
  }
  if (has_directed_cycle(g)) throw GraphError("graph has a directed cycle");
  if (strict) validate_mpdag(g);
  return g;
}

Pdag read_graph(std::istream& in, bool strict) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("graph JSON parse error: ") + e.what());
  }
  return graph_from_json(j, strict);
}

Pdag load_graph(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  return read_graph(in, strict);
}

nlohmann::json graph_to_json(const Pdag& g) {
  nlohmann::json j;
  j["vertices"] = g.labels();
  j["directed"] = nlohmann::json::array();
  for (auto [a, b] : g.directed_edges()) j["directed"].push_back({g.label(a), g.label(b)});
  j["undirected"] = nlohmann::json::array();
  for (auto [a, b] : g.undirected_edges()) j["undirected"].push_back({g.label(a), g.label(b)});
  return j;
}

}  // namespace causal
