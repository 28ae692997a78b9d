#include "causal/graph/paths.hpp"

#include <functional>

#include "causal/errors.hpp"

namespace causal {

namespace {

void check_vertex(const Pdag& g, Vertex v) {
  if (v < 0 || v >= g.size()) throw InputError("vertex index " + std::to_string(v) + " out of range");
}

void check_set(const Pdag& g, const VertexSet& s) {
  for (Vertex v : s) check_vertex(g, v);
}

// Depth-first enumeration of simple possibly causal paths. A path is only
// extended by w when the last edge is last -> w or last - w and no child of w
// is already on the path; that keeps every pair (earlier, later) free of a
// later -> earlier edge.
class PossiblyCausalSearch {
 public:
  explicit PossiblyCausalSearch(const Pdag& g)
      : g_(g), on_path_(static_cast<std::size_t>(g.size()), 0) {}

  // Visits every extension of `path`; `visit` returns true to stop the search.
  // `allowed` filters vertices after the first.
  bool run(std::vector<Vertex>& path, const std::function<bool(Vertex)>& allowed,
           const std::function<bool(const std::vector<Vertex>&)>& visit) {
    for (Vertex v : path) on_path_[static_cast<std::size_t>(v)] = 1;
    bool stopped = extend(path, allowed, visit);
    for (Vertex v : path) on_path_[static_cast<std::size_t>(v)] = 0;
    return stopped;
  }

  bool can_append(Vertex last, Vertex w) const {
    if (on_path_[static_cast<std::size_t>(w)]) return false;
    const EdgeKind k = g_.edge(last, w);
    if (k != EdgeKind::out && k != EdgeKind::undirected) return false;
    for (Vertex c : g_.children(w)) {
      if (on_path_[static_cast<std::size_t>(c)]) return false;
    }
    return true;
  }

 private:
  bool extend(std::vector<Vertex>& path, const std::function<bool(Vertex)>& allowed,
              const std::function<bool(const std::vector<Vertex>&)>& visit) {
    if (visit(path)) return true;
    const Vertex last = path.back();
    auto step = [&](Vertex w) {
      if (!allowed(w) || !can_append(last, w)) return false;
      path.push_back(w);
      on_path_[static_cast<std::size_t>(w)] = 1;
      bool stopped = extend(path, allowed, visit);
      on_path_[static_cast<std::size_t>(w)] = 0;
      path.pop_back();
      return stopped;
    };
    for (Vertex w : g_.children(last)) {
      if (step(w)) return true;
    }
    for (Vertex w : g_.neighbors(last)) {
      if (step(w)) return true;
    }
    return false;
  }

  const Pdag& g_;
  std::vector<char> on_path_;
};

}  // namespace

VertexSet ancestors_in_subgraph(const Pdag& g, Vertex y, const VertexSet& removed) {
  if (y < 0 || y >= g.size()) throw InputError("ancestors_in_subgraph: unknown vertex");
  check_set(g, removed);
  if (contains(removed, y)) throw InputError("ancestors_in_subgraph: target vertex is removed");
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  for (Vertex r : removed) seen[static_cast<std::size_t>(r)] = 1;
  std::vector<Vertex> stack{y};
  seen[static_cast<std::size_t>(y)] = 1;
  VertexSet out;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (Vertex p : g.parents(v)) {
      if (!seen[static_cast<std::size_t>(p)]) {
        seen[static_cast<std::size_t>(p)] = 1;
        stack.push_back(p);
      }
    }
  }
  return make_vertex_set(std::move(out));
}

VertexSet descendants(const Pdag& g, const VertexSet& a) {
  check_set(g, a);
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::vector<Vertex> stack(a.begin(), a.end());
  for (Vertex v : a) seen[static_cast<std::size_t>(v)] = 1;
  VertexSet out;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (Vertex c : g.children(v)) {
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        stack.push_back(c);
      }
    }
  }
  return make_vertex_set(std::move(out));
}

VertexSet possible_descendants(const Pdag& g, const VertexSet& a) {
  check_set(g, a);
  std::vector<char> found(static_cast<std::size_t>(g.size()), 0);
  int remaining = g.size();
  PossiblyCausalSearch search(g);
  for (Vertex s : a) {
    std::vector<Vertex> path{s};
    search.run(
        path, [](Vertex) { return true; },
        [&](const std::vector<Vertex>& p) {
          char& f = found[static_cast<std::size_t>(p.back())];
          if (!f) {
            f = 1;
            --remaining;
          }
          return remaining == 0;
        });
  }
  VertexSet out;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (found[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

bool exists_proper_possibly_causal_undirected_start(const Pdag& g, const VertexSet& a, Vertex y) {
  check_set(g, a);
  check_vertex(g, y);
  if (contains(a, y)) throw InputError("outcome vertex belongs to the treatment set");
  PossiblyCausalSearch search(g);
  auto outside_a = [&](Vertex w) { return !contains(a, w); };
  auto reached = [&](const std::vector<Vertex>& p) { return p.back() == y; };
  for (Vertex s : a) {
    for (Vertex b : g.neighbors(s)) {
      if (contains(a, b)) continue;
      std::vector<Vertex> path{s, b};
      if (search.run(path, outside_a, reached)) return true;
    }
  }
  return false;
}

bool is_possibly_causal(const Pdag& g, const std::vector<Vertex>& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.adjacent(path[i], path[i + 1])) return false;
  }
  for (std::size_t l = 0; l < path.size(); ++l) {
    for (std::size_t r = l + 1; r < path.size(); ++r) {
      if (path[l] == path[r]) return false;
      if (g.has_directed(path[r], path[l])) return false;
    }
  }
  return true;
}

}  // namespace causal
