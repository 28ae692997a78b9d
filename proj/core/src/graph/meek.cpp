#include "causal/graph/meek.hpp"

#include <deque>
#include <sstream>

#include "causal/errors.hpp"

namespace causal {

std::string describe(const RuleViolation& v, const Pdag& g) {
  std::ostringstream os;
  os << "R" << static_cast<int>(v.rule) << ": edge " << g.label(v.from) << " - " << g.label(v.to)
     << " must be oriented " << g.label(v.from) << " -> " << g.label(v.to);
  if (!v.witnesses.empty()) {
    os << " (witnesses";
    for (Vertex w : v.witnesses) os << ' ' << g.label(w);
    os << ')';
  }
  return os.str();
}

std::optional<RuleViolation> forcing_rule(const Pdag& g, Vertex x, Vertex y) {
  // R1: a -> x - y, a and y non-adjacent.
  for (Vertex a : g.parents(x)) {
    if (!g.adjacent(a, y)) return RuleViolation{MeekRule::r1, x, y, {a}};
  }
  // R2: x -> b -> y, x - y.
  for (Vertex b : g.children(x)) {
    if (g.has_directed(b, y)) return RuleViolation{MeekRule::r2, x, y, {b}};
  }
  // R3: a -> y <- c, x - a, x - c, a and c non-adjacent, x - y.
  const auto& ny = g.parents(y);
  for (std::size_t i = 0; i < ny.size(); ++i) {
    Vertex a = ny[i];
    if (!g.has_undirected(x, a)) continue;
    for (std::size_t j = i + 1; j < ny.size(); ++j) {
      Vertex c = ny[j];
      if (g.has_undirected(x, c) && !g.adjacent(a, c)) {
        return RuleViolation{MeekRule::r3, x, y, {a, c}};
      }
    }
  }
  // R4: a -> b -> y, x - a, x - b, x - y, a and y non-adjacent.
  for (Vertex b : g.parents(y)) {
    if (!g.has_undirected(x, b)) continue;
    for (Vertex a : g.parents(b)) {
      if (a != y && g.has_undirected(x, a) && !g.adjacent(a, y)) {
        return RuleViolation{MeekRule::r4, x, y, {a, b}};
      }
    }
  }
  return std::nullopt;
}

std::vector<RuleViolation> find_rule_violations(const Pdag& g) {
  std::vector<RuleViolation> out;
  for (auto [i, j] : g.undirected_edges()) {
    if (auto v = forcing_rule(g, i, j)) out.push_back(*v);
    if (auto v = forcing_rule(g, j, i)) out.push_back(*v);
  }
  return out;
}

namespace {

using Candidate = std::pair<Vertex, Vertex>;

// Undirected edges whose rule patterns can change after orienting u -> v.
void enqueue_affected(const Pdag& g, Vertex u, Vertex v, std::deque<Candidate>& work) {
  auto push_incident = [&](Vertex w) {
    for (Vertex n : g.neighbors(w)) work.emplace_back(w, n);
  };
  push_incident(u);
  push_incident(v);
  // R4 with u -> v as the a -> b edge touches edges x - c with v -> c.
  for (Vertex c : g.children(v)) push_incident(c);
}

}  // namespace

Pdag meek_closure(Pdag g) {
  if (has_directed_cycle(g)) throw GraphError("graph has a directed cycle");

  std::deque<Candidate> work;
  for (auto [i, j] : g.undirected_edges()) work.emplace_back(i, j);

  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    if (!g.has_undirected(x, y)) continue;
    Vertex from = -1;
    Vertex to = -1;
    if (forcing_rule(g, x, y)) {
      from = x;
      to = y;
    } else if (forcing_rule(g, y, x)) {
      from = y;
      to = x;
    } else {
      continue;
    }
    g.orient(from, to);
    enqueue_affected(g, from, to, work);
  }

  if (has_directed_cycle(g)) throw GraphError("rule closure produced a directed cycle");
  return g;
}

std::optional<Pdag> construct_mpdag(const Pdag& g, std::span<const DirectedEdge> knowledge) {
  Pdag out = g;
  for (auto [x, y] : knowledge) {
    if (out.has_undirected(x, y)) {
      out.orient(x, y);
      try {
        out = meek_closure(std::move(out));
      } catch (const GraphError&) {
        return std::nullopt;
      }
    } else if (!out.has_directed(x, y)) {
      return std::nullopt;
    }
  }
  return out;
}

std::vector<std::tuple<Vertex, Vertex, Vertex>> unshielded_colliders(const Pdag& g) {
  std::vector<std::tuple<Vertex, Vertex, Vertex>> out;
  for (Vertex c = 0; c < g.size(); ++c) {
    const auto& pa = g.parents(c);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) out.emplace_back(pa[i], c, pa[j]);
      }
    }
  }
  return out;
}

Pdag cpdag_from_dag(const Pdag& dag) {
  if (dag.num_undirected() != 0) throw GraphError("cpdag_from_dag: input has undirected edges");
  if (has_directed_cycle(dag)) throw GraphError("cpdag_from_dag: input is not acyclic");

  Pdag out(dag.labels());
  std::vector<char> keep(static_cast<std::size_t>(dag.size() * dag.size()), 0);
  auto mark = [&](Vertex i, Vertex j) { keep[static_cast<std::size_t>(i * dag.size() + j)] = 1; };
  for (auto [a, c, b] : unshielded_colliders(dag)) {
    mark(a, c);
    mark(b, c);
  }
  for (auto [i, j] : dag.directed_edges()) {
    if (keep[static_cast<std::size_t>(i * dag.size() + j)]) {
      out.add_directed(i, j);
    } else {
      out.add_undirected(i, j);
    }
  }
  return meek_closure(std::move(out));
}

void validate_mpdag(const Pdag& g) {
  if (has_directed_cycle(g)) throw GraphError("graph has a directed cycle");
  auto violations = find_rule_violations(g);
  if (!violations.empty()) throw GraphError("not closed under orientation rules: " + describe(violations.front(), g));
}

}  // namespace causal
