#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "causal/vertex_set.hpp"

namespace causal {

/// Kind of the edge between an ordered pair (i, j), seen from i.
enum class EdgeKind : std::uint8_t {
  none,
  out,         // i -> j
  in,          // i <- j
  undirected,  // i - j
};

using DirectedEdge = std::pair<Vertex, Vertex>;

/// Partially directed graph over labelled vertices.
///
/// Labels are fixed at construction and map to dense indices 0..size()-1 in
/// the given order; matrices built from a graph use the same order. At most
/// one edge joins any pair and self-loops are rejected. Acyclicity is not
/// enforced by the mutators (see has_directed_cycle()).
class Pdag {
 public:
  Pdag() = default;
  explicit Pdag(std::vector<std::string> labels);

  /// Graph on vertices labelled "0", "1", ..., "n-1".
  static Pdag with_size(int n);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)); }

  std::optional<Vertex> find(std::string_view label) const;
  /// Throws InputError for an unknown label.
  Vertex index_of(std::string_view label) const;

  EdgeKind edge(Vertex i, Vertex j) const noexcept { return kind_[slot(i, j)]; }
  bool adjacent(Vertex i, Vertex j) const noexcept { return edge(i, j) != EdgeKind::none; }
  bool has_directed(Vertex i, Vertex j) const noexcept { return edge(i, j) == EdgeKind::out; }
  bool has_undirected(Vertex i, Vertex j) const noexcept { return edge(i, j) == EdgeKind::undirected; }

  const VertexSet& parents(Vertex v) const { return parents_[static_cast<std::size_t>(v)]; }
  const VertexSet& children(Vertex v) const { return children_[static_cast<std::size_t>(v)]; }
  /// Undirected neighbours.
  const VertexSet& neighbors(Vertex v) const { return neighbors_[static_cast<std::size_t>(v)]; }

  void add_directed(Vertex from, Vertex to);
  void add_undirected(Vertex a, Vertex b);
  /// Turns the undirected edge a - b into a -> b.
  void orient(Vertex from, Vertex to);
  void remove_edge(Vertex a, Vertex b);

  std::vector<DirectedEdge> directed_edges() const;
  /// Undirected edges as (smaller index, larger index).
  std::vector<std::pair<Vertex, Vertex>> undirected_edges() const;
  int num_directed() const noexcept { return num_directed_; }
  int num_undirected() const noexcept { return num_undirected_; }

  friend bool operator==(const Pdag& a, const Pdag& b) {
    return a.labels_ == b.labels_ && a.kind_ == b.kind_;
  }

 private:
  std::size_t slot(Vertex i, Vertex j) const noexcept {
    return static_cast<std::size_t>(i) * labels_.size() + static_cast<std::size_t>(j);
  }
  void check_pair(Vertex a, Vertex b) const;
  void set_kind(Vertex i, Vertex j, EdgeKind k);

  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<EdgeKind> kind_;
  std::vector<VertexSet> parents_;
  std::vector<VertexSet> children_;
  std::vector<VertexSet> neighbors_;
  int num_directed_ = 0;
  int num_undirected_ = 0;
};

/// True when the directed edges alone contain a cycle.
bool has_directed_cycle(const Pdag& g);

/// Topological order of the directed part; nullopt on a directed cycle.
/// Ties are broken by smallest index.
std::optional<std::vector<Vertex>> topological_order(const Pdag& g);

/// Skeleton copy with every edge undirected.
Pdag skeleton(const Pdag& g);

/// Subgraph induced by `keep`, relabelled densely in index order.
Pdag induced_subgraph(const Pdag& g, const VertexSet& keep);

}  // namespace causal
