#pragma once

#include "causal/graph/pdag.hpp"

namespace causal {

/// Vertices with a directed path to y in the subgraph induced by V \ removed,
/// y included. Throws InputError if y is unknown or removed.
VertexSet ancestors_in_subgraph(const Pdag& g, Vertex y, const VertexSet& removed);

/// Vertices reachable from `a` by a directed path, `a` included.
VertexSet descendants(const Pdag& g, const VertexSet& a);

/// Every vertex reachable from some vertex of `a` along a possibly causal
/// path (no edge from a later path vertex into an earlier one), `a` included.
///
/// Exhaustive search over simple paths; exponential in the worst case.
VertexSet possible_descendants(const Pdag& g, const VertexSet& a);

/// Whether a proper possibly causal path from `a` to `y` starts with an
/// undirected edge. Exhaustive search over simple paths.
bool exists_proper_possibly_causal_undirected_start(const Pdag& g, const VertexSet& a, Vertex y);

/// Checks the possibly-causal condition on an explicit path.
bool is_possibly_causal(const Pdag& g, const std::vector<Vertex>& path);

}  // namespace causal
