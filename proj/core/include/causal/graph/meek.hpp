#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causal/graph/pdag.hpp"

namespace causal {

enum class MeekRule { r1 = 1, r2 = 2, r3 = 3, r4 = 4 };

/// One occurrence of a rule's left-hand side as an induced subgraph.
///
/// `from - to` is the undirected edge the rule would orient as from -> to;
/// `witnesses` are the remaining pattern vertices (A for R1, B for R2,
/// {A, C} for R3, {A, B} for R4).
struct RuleViolation {
  MeekRule rule;
  Vertex from;
  Vertex to;
  std::vector<Vertex> witnesses;
};

std::string describe(const RuleViolation& v, const Pdag& g);

/// Rule that forces `from - to` into `from -> to`, if any. The edge must be
/// undirected in g.
std::optional<RuleViolation> forcing_rule(const Pdag& g, Vertex from, Vertex to);

/// Every undirected edge whose orientation is forced by R1-R4.
std::vector<RuleViolation> find_rule_violations(const Pdag& g);

inline bool is_rule_closed(const Pdag& g) { return find_rule_violations(g).empty(); }

/// Fixed point of R1-R4. Directed edges of g are kept; only undirected edges
/// get oriented. Throws GraphError if g has a directed cycle.
Pdag meek_closure(Pdag g);

/// Incorporates background knowledge edges one at a time, closing under
/// R1-R4 after each. Returns nullopt when an edge contradicts the evolving
/// graph (knowledge inconsistent with g).
std::optional<Pdag> construct_mpdag(const Pdag& g, std::span<const DirectedEdge> knowledge);

/// CPDAG of a DAG: skeleton, unshielded colliders, then rule closure.
/// Throws GraphError if the input has undirected edges or a directed cycle.
Pdag cpdag_from_dag(const Pdag& dag);

/// Unshielded colliders a -> c <- b (a, b non-adjacent) as (a, c, b), a < b.
std::vector<std::tuple<Vertex, Vertex, Vertex>> unshielded_colliders(const Pdag& g);

/// Throws GraphError unless g is acyclic and closed under R1-R4.
void validate_mpdag(const Pdag& g);

}  // namespace causal
