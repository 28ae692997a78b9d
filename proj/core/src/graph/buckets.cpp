#include "causal/graph/buckets.hpp"

#include <set>

#include "causal/errors.hpp"

namespace causal {

VertexSet BucketDecomposition::preceding(int end) const {
  VertexSet out;
  for (int k = 0; k < end; ++k) out = set_union(out, buckets[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<VertexSet> undirected_components(const Pdag& g) {
  const int n = g.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<VertexSet> out;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    VertexSet members;
    std::vector<Vertex> stack{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
    out.push_back(make_vertex_set(std::move(members)));
  }
  return out;
}

BucketDecomposition bucket_decomposition(const Pdag& g) {
  const auto components = undirected_components(g);
  const int m = static_cast<int>(components.size());
  std::vector<int> comp_of(static_cast<std::size_t>(g.size()));
  for (int c = 0; c < m; ++c) {
    for (Vertex v : components[static_cast<std::size_t>(c)]) comp_of[static_cast<std::size_t>(v)] = c;
  }

  // Number of directed edges leaving each component towards another one.
  std::vector<int> outgoing(static_cast<std::size_t>(m), 0);
  for (auto [i, j] : g.directed_edges()) {
    if (comp_of[static_cast<std::size_t>(i)] != comp_of[static_cast<std::size_t>(j)]) {
      ++outgoing[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(i)])];
    }
  }

  // Components are indexed by smallest member, so the set orders by it too.
  std::set<int> eligible;
  for (int c = 0; c < m; ++c) {
    if (outgoing[static_cast<std::size_t>(c)] == 0) eligible.insert(c);
  }

  std::vector<int> peeled;
  std::vector<char> removed(static_cast<std::size_t>(m), 0);
  while (!eligible.empty()) {
    const int c = *eligible.begin();
    eligible.erase(eligible.begin());
    removed[static_cast<std::size_t>(c)] = 1;
    peeled.push_back(c);
    for (Vertex v : components[static_cast<std::size_t>(c)]) {
      for (Vertex p : g.parents(v)) {
        const int pc = comp_of[static_cast<std::size_t>(p)];
        if (pc == c || removed[static_cast<std::size_t>(pc)]) continue;
        if (--outgoing[static_cast<std::size_t>(pc)] == 0) eligible.insert(pc);
      }
    }
  }
  if (static_cast<int>(peeled.size()) != m) {
    throw GraphError("bucket decomposition failed: directed cycle between undirected components");
  }

  BucketDecomposition out;
  out.bucket_of.assign(static_cast<std::size_t>(g.size()), -1);
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
    const auto& bucket = components[static_cast<std::size_t>(*it)];
    const int k = static_cast<int>(out.buckets.size());
    VertexSet parents;
    for (Vertex v : bucket) {
      out.bucket_of[static_cast<std::size_t>(v)] = k;
      parents = set_union(parents, g.parents(v));
    }
    parents = set_difference(parents, bucket);
    for (Vertex v : bucket) {
      if (set_difference(g.parents(v), bucket) != parents) {
        throw GraphError("vertex '" + g.label(v) + "' does not share the external parents of its bucket");
      }
    }
    out.buckets.push_back(bucket);
    out.external_parents.push_back(std::move(parents));
  }
  return out;
}

Pdag saturated_mpdag(const Pdag& g) { return saturated_mpdag(g, bucket_decomposition(g)); }

Pdag saturated_mpdag(const Pdag& g, const BucketDecomposition& buckets) {
  Pdag out = g;
  for (int k = 1; k < buckets.size(); ++k) {
    for (Vertex j : buckets.buckets[static_cast<std::size_t>(k)]) {
      for (int l = 0; l < k; ++l) {
        for (Vertex i : buckets.buckets[static_cast<std::size_t>(l)]) {
          if (!out.adjacent(i, j)) {
            out.add_directed(i, j);
          } else if (!out.has_directed(i, j)) {
            throw GraphError("saturation: edge between buckets is not directed forward");
          }
        }
      }
    }
  }
  return out;
}

}  // namespace causal
