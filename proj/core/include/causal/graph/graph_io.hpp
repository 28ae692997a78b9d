#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "causal/graph/pdag.hpp"

namespace causal {

/// Graph file format:
///   {"vertices": ["1", ...], "directed": [["1", "2"], ...], "undirected": [["2", "3"], ...]}
///
/// Parsing problems raise InputError; structural problems (self-loop,
/// duplicate edge, directed cycle) raise GraphError. With `strict`, the graph
/// must also be closed under the orientation rules.
Pdag graph_from_json(const nlohmann::json& j, bool strict = false);
Pdag read_graph(std::istream& in, bool strict = false);
Pdag load_graph(const std::string& path, bool strict = false);

nlohmann::json graph_to_json(const Pdag& g);

}  // namespace causal
