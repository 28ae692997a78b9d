#pragma once

// Brute-force reference implementations used by the tests. They share no
// code with the library beyond the Pdag container.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "causal/graph/meek.hpp"
#include "causal/graph/pdag.hpp"
#include "causal/random.hpp"

namespace oracle {

using causal::Pdag;
using causal::Vertex;
using causal::VertexSet;

// Pairwise check straight from the definition: consecutive vertices adjacent,
// no repeats, and no edge pointing from a later vertex to an earlier one.
inline bool possibly_causal(const Pdag& g, const std::vector<Vertex>& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto k = g.edge(path[i], path[i + 1]);
    if (k != causal::EdgeKind::out && k != causal::EdgeKind::undirected) return false;
  }
  for (std::size_t l = 0; l < path.size(); ++l) {
    for (std::size_t r = l + 1; r < path.size(); ++r) {
      if (path[l] == path[r]) return false;
      if (g.edge(path[r], path[l]) == causal::EdgeKind::out) return false;
    }
  }
  return true;
}

// Visits every simple path starting at `start` (no pruning beyond simplicity).
inline void for_each_simple_path(const Pdag& g, Vertex start,
                                 const std::function<void(const std::vector<Vertex>&)>& visit) {
  std::vector<Vertex> path{start};
  std::vector<char> used(static_cast<std::size_t>(g.size()), 0);
  used[static_cast<std::size_t>(start)] = 1;
  std::function<void()> rec = [&] {
    visit(path);
    for (Vertex w = 0; w < g.size(); ++w) {
      if (used[static_cast<std::size_t>(w)] || !g.adjacent(path.back(), w)) continue;
      used[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      rec();
      path.pop_back();
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  rec();
}

inline VertexSet possible_descendants(const Pdag& g, const VertexSet& a) {
  std::set<Vertex> out(a.begin(), a.end());
  for (Vertex s : a) {
    for_each_simple_path(g, s, [&](const std::vector<Vertex>& p) {
      if (possibly_causal(g, p)) out.insert(p.back());
    });
  }
  return {out.begin(), out.end()};
}

inline bool criterion_path(const Pdag& g, const VertexSet& a, Vertex y) {
  bool found = false;
  for (Vertex s : a) {
    for_each_simple_path(g, s, [&](const std::vector<Vertex>& p) {
      if (found || p.size() < 2 || p.back() != y) return;
      if (!g.has_undirected(p[0], p[1])) return;
      for (std::size_t i = 1; i < p.size(); ++i) {
        if (std::binary_search(a.begin(), a.end(), p[i])) return;
      }
      if (possibly_causal(g, p)) found = true;
    });
  }
  return found;
}

inline bool acyclic(const Pdag& g) {
  const int n = g.size();
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  std::function<bool(Vertex)> dfs = [&](Vertex v) {
    state[static_cast<std::size_t>(v)] = 1;
    for (Vertex w = 0; w < n; ++w) {
      if (!g.has_directed(v, w)) continue;
      if (state[static_cast<std::size_t>(w)] == 1) return false;
      if (state[static_cast<std::size_t>(w)] == 0 && !dfs(w)) return false;
    }
    state[static_cast<std::size_t>(v)] = 2;
    return true;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (state[static_cast<std::size_t>(v)] == 0 && !dfs(v)) return false;
  }
  return true;
}

// Directed unshielded colliders (a, c, b) with a < b.
inline std::set<std::tuple<Vertex, Vertex, Vertex>> colliders(const Pdag& g) {
  std::set<std::tuple<Vertex, Vertex, Vertex>> out;
  const int n = g.size();
  for (Vertex c = 0; c < n; ++c) {
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        if (g.has_directed(a, c) && g.has_directed(b, c) && !g.adjacent(a, b)) out.emplace(a, c, b);
      }
    }
  }
  return out;
}

// Every DAG obtained by orienting g's undirected edges that keeps g's
// directed edges, stays acyclic and has exactly the unshielded colliders of
// `reference` (the DAG's own class when g is an MPDAG built from it).
inline std::vector<Pdag> dags_in_class(const Pdag& g, const std::set<std::tuple<Vertex, Vertex, Vertex>>& target) {
  const auto und = g.undirected_edges();
  std::vector<Pdag> out;
  const std::uint64_t total = std::uint64_t{1} << und.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Pdag d = g;
    for (std::size_t e = 0; e < und.size(); ++e) {
      auto [i, j] = und[e];
      if (mask >> e & 1) {
        d.orient(j, i);
      } else {
        d.orient(i, j);
      }
    }
    if (acyclic(d) && colliders(d) == target) out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<Pdag> dags_in_class(const Pdag& g) {
  // Class members share the colliders already directed in g.
  return dags_in_class(g, colliders(g));
}

// Total effect of do(X_a) on X_y in a DAG, with the linear model fitted to the
// covariance by regressing every vertex on its parents.
inline Eigen::VectorXd do_effect(const Pdag& dag, const Eigen::MatrixXd& sigma, const VertexSet& a, Vertex y) {
  const int n = dag.size();
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < n; ++v) {
    if (std::binary_search(a.begin(), a.end(), v)) continue;  // severed by the intervention
    std::vector<int> pa;
    for (Vertex u = 0; u < n; ++u) {
      if (dag.has_directed(u, v)) pa.push_back(u);
    }
    if (pa.empty()) continue;
    const std::vector<int> col{v};
    const Eigen::VectorXd coef = sigma(pa, pa).ldlt().solve(sigma(pa, col));
    for (std::size_t t = 0; t < pa.size(); ++t) gamma(pa[t], v) = coef(static_cast<Eigen::Index>(t));
  }
  // E[X | do(x_A)] = (I - Gamma^T)^{-1} (...): entry (a, y) of (I - Gamma)^{-1}.
  const Eigen::MatrixXd total = (Eigen::MatrixXd::Identity(n, n) - gamma).inverse();
  Eigen::VectorXd tau(static_cast<Eigen::Index>(a.size()));
  for (std::size_t m = 0; m < a.size(); ++m) tau(static_cast<Eigen::Index>(m)) = total(a[m], y);
  return tau;
}

// Covariance of a random Gaussian-style linear SEM on a DAG with generic
// coefficients.
inline Eigen::MatrixXd random_dag_covariance(const Pdag& dag, causal::CounterRng& rng) {
  const int n = dag.size();
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : dag.directed_edges()) {
    const double mag = rng.uniform(0.3, 1.5);
    gamma(i, j) = rng.bernoulli(0.5) ? mag : -mag;
  }
  Eigen::VectorXd var(n);
  for (int v = 0; v < n; ++v) var(v) = rng.uniform(0.5, 2.0);
  const Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(n, n) - gamma).inverse();
  return inv.transpose() * var.asDiagonal() * inv;
}

inline Pdag random_dag(int n, double edge_prob, causal::CounterRng& rng) {
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(i + 1)]);
  Pdag g = Pdag::with_size(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(edge_prob)) g.add_directed(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

// MPDAG: CPDAG of `dag` refined by orienting a random subset of its
// undirected edges as in the DAG.
inline Pdag random_mpdag_from(const Pdag& dag, double knowledge_prob, causal::CounterRng& rng) {
  const Pdag cpdag = causal::cpdag_from_dag(dag);
  std::vector<causal::DirectedEdge> knowledge;
  for (auto [i, j] : cpdag.undirected_edges()) {
    if (!rng.bernoulli(knowledge_prob)) continue;
    knowledge.emplace_back(dag.has_directed(i, j) ? i : j, dag.has_directed(i, j) ? j : i);
  }
  auto g = causal::construct_mpdag(cpdag, knowledge);
  return *g;
}

inline VertexSet random_subset(int n, int m, causal::CounterRng& rng) {
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < m; ++i) std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(i) + rng.below(n - i)]);
  all.resize(static_cast<std::size_t>(m));
  std::sort(all.begin(), all.end());
  return all;
}

inline Eigen::MatrixXd random_spd(int n, causal::CounterRng& rng) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
  }
  return m * m.transpose() / n + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace oracle
