#include "causal/graph/pdag.hpp"

#include <queue>

#include "causal/errors.hpp"

namespace causal {

namespace {

void insert_sorted(VertexSet& s, Vertex v) {
  s.insert(std::lower_bound(s.begin(), s.end(), v), v);
}

void erase_sorted(VertexSet& s, Vertex v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it != s.end() && *it == v) s.erase(it);
}

EdgeKind mirror(EdgeKind k) {
  switch (k) {
    case EdgeKind::out:
      return EdgeKind::in;
    case EdgeKind::in:
      return EdgeKind::out;
    default:
      return k;
  }
}

}  // namespace

Pdag::Pdag(std::vector<std::string> labels) : labels_(std::move(labels)) {
  const auto n = labels_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], static_cast<Vertex>(i)).second) {
      throw GraphError("duplicate vertex label '" + labels_[i] + "'");
    }
  }
  kind_.assign(n * n, EdgeKind::none);
  parents_.resize(n);
  children_.resize(n);
  neighbors_.resize(n);
}

Pdag Pdag::with_size(int n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Pdag(std::move(labels));
}

std::optional<Vertex> Pdag::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex Pdag::index_of(std::string_view label) const {
  if (auto v = find(label)) return *v;
  throw InputError("unknown vertex '" + std::string(label) + "'");
}

void Pdag::check_pair(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= size() || b >= size()) {
    throw GraphError("vertex index out of range");
  }
  if (a == b) throw GraphError("self-loop at '" + labels_[static_cast<std::size_t>(a)] + "'");
}

void Pdag::set_kind(Vertex i, Vertex j, EdgeKind k) {
  kind_[slot(i, j)] = k;
  kind_[slot(j, i)] = mirror(k);
}

void Pdag::add_directed(Vertex from, Vertex to) {
  check_pair(from, to);
  if (adjacent(from, to)) {
    throw GraphError("more than one edge between '" + label(from) + "' and '" + label(to) + "'");
  }
  set_kind(from, to, EdgeKind::out);
  insert_sorted(children_[static_cast<std::size_t>(from)], to);
  insert_sorted(parents_[static_cast<std::size_t>(to)], from);
  ++num_directed_;
}

void Pdag::add_undirected(Vertex a, Vertex b) {
  check_pair(a, b);
  if (adjacent(a, b)) {
    throw GraphError("more than one edge between '" + label(a) + "' and '" + label(b) + "'");
  }
  set_kind(a, b, EdgeKind::undirected);
  insert_sorted(neighbors_[static_cast<std::size_t>(a)], b);
  insert_sorted(neighbors_[static_cast<std::size_t>(b)], a);
  ++num_undirected_;
}

void Pdag::remove_edge(Vertex a, Vertex b) {
  check_pair(a, b);
  switch (edge(a, b)) {
    case EdgeKind::none:
      return;
    case EdgeKind::undirected:
      erase_sorted(neighbors_[static_cast<std::size_t>(a)], b);
      erase_sorted(neighbors_[static_cast<std::size_t>(b)], a);
      --num_undirected_;
      break;
    case EdgeKind::out:
      erase_sorted(children_[static_cast<std::size_t>(a)], b);
      erase_sorted(parents_[static_cast<std::size_t>(b)], a);
      --num_directed_;
      break;
    case EdgeKind::in:
      erase_sorted(children_[static_cast<std::size_t>(b)], a);
      erase_sorted(parents_[static_cast<std::size_t>(a)], b);
      --num_directed_;
      break;
  }
  set_kind(a, b, EdgeKind::none);
}

void Pdag::orient(Vertex from, Vertex to) {
  check_pair(from, to);
  if (!has_undirected(from, to)) {
    throw GraphError("cannot orient '" + label(from) + "' - '" + label(to) + "': not an undirected edge");
  }
  remove_edge(from, to);
  add_directed(from, to);
}

std::vector<DirectedEdge> Pdag::directed_edges() const {
  std::vector<DirectedEdge> out;
  out.reserve(static_cast<std::size_t>(num_directed_));
  for (Vertex i = 0; i < size(); ++i) {
    for (Vertex j : children(i)) out.emplace_back(i, j);
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> Pdag::undirected_edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(static_cast<std::size_t>(num_undirected_));
  for (Vertex i = 0; i < size(); ++i) {
    for (Vertex j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

std::optional<std::vector<Vertex>> topological_order(const Pdag& g) {
  const int n = g.size();
  std::vector<int> indegree(static_cast<std::size_t>(n));
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    indegree[static_cast<std::size_t>(v)] = static_cast<int>(g.parents(v).size());
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Vertex c : g.children(v)) {
      if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push(c);
    }
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

bool has_directed_cycle(const Pdag& g) { return !topological_order(g).has_value(); }

Pdag skeleton(const Pdag& g) {
  Pdag out(g.labels());
  for (auto [i, j] : g.directed_edges()) out.add_undirected(i, j);
  for (auto [i, j] : g.undirected_edges()) out.add_undirected(i, j);
  return out;
}

Pdag induced_subgraph(const Pdag& g, const VertexSet& keep) {
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (Vertex v : keep) labels.push_back(g.label(v));
  Pdag out(std::move(labels));
  const int m = static_cast<int>(keep.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      switch (g.edge(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)])) {
        case EdgeKind::out:
          out.add_directed(a, b);
          break;
        case EdgeKind::in:
          out.add_directed(b, a);
          break;
        case EdgeKind::undirected:
          out.add_undirected(a, b);
          break;
        case EdgeKind::none:
          break;
      }
    }
  }
  return out;
}

}  // namespace causal
