#include <sstream>

#include "doctest.h"

#include "builders.hpp"
#include "causal/errors.hpp"
#include "causal/graph/graph_io.hpp"
#include "causal/graph/pdag.hpp"

using namespace causal;

TEST_CASE("pdag stores edge kinds from both endpoints") {
  auto g = build::graph({"a", "b", "c"}, "a->b b-c");
  const Vertex a = 0, b = 1, c = 2;
  CHECK(g.edge(a, b) == EdgeKind::out);
  CHECK(g.edge(b, a) == EdgeKind::in);
  CHECK(g.edge(b, c) == EdgeKind::undirected);
  CHECK(g.edge(c, b) == EdgeKind::undirected);
  CHECK_FALSE(g.adjacent(a, c));
  CHECK(g.parents(b) == VertexSet{a});
  CHECK(g.children(a) == VertexSet{b});
  CHECK(g.neighbors(c) == VertexSet{b});
  CHECK(g.num_directed() == 1);
  CHECK(g.num_undirected() == 1);

  g.orient(c, b);
  CHECK(g.parents(b) == VertexSet{a, c});
  CHECK(g.neighbors(b).empty());
  CHECK(g.num_undirected() == 0);
  g.remove_edge(a, b);
  CHECK_FALSE(g.adjacent(a, b));
  CHECK(g.parents(b) == VertexSet{c});
}

TEST_CASE("pdag rejects self-loops, duplicates and bad labels") {
  Pdag g({"x", "y"});
  CHECK_THROWS_AS(g.add_directed(0, 0), GraphError);
  g.add_undirected(0, 1);
  CHECK_THROWS_AS(g.add_directed(1, 0), GraphError);
  CHECK_THROWS_AS(g.orient(0, 0), GraphError);
  CHECK_THROWS_AS(Pdag({"x", "x"}), GraphError);
  CHECK_THROWS_AS(g.index_of("z"), InputError);
  CHECK_FALSE(g.find("z").has_value());
}

TEST_CASE("topological order breaks ties by index and detects cycles") {
  auto g = build::graph({"0", "1", "2", "3"}, "2->1 3->0");
  auto order = topological_order(g);
  REQUIRE(order);
  CHECK(*order == std::vector<Vertex>{2, 1, 3, 0});
  g.add_directed(1, 3);
  g.add_directed(0, 2);
  CHECK(has_directed_cycle(g));
  CHECK_FALSE(topological_order(g).has_value());
}

TEST_CASE("induced subgraph and skeleton") {
  auto g = build::fig1a();
  auto sub = induced_subgraph(g, build::ids(g, {"1", "4", "5"}));
  CHECK(sub.labels() == std::vector<std::string>{"1", "4", "5"});
  CHECK(sub.has_directed(0, 1));
  CHECK(sub.has_directed(1, 2));
  CHECK_FALSE(sub.adjacent(0, 2));
  auto sk = skeleton(g);
  CHECK(sk.num_undirected() == 8);
  CHECK(sk.num_directed() == 0);
}

TEST_CASE("graph json round trip") {
  auto g = build::fig1a();
  auto j = graph_to_json(g);
  CHECK(graph_from_json(j) == g);
  std::istringstream in(j.dump());
  CHECK(read_graph(in, true) == g);
}

TEST_CASE("graph json errors are classified") {
  std::istringstream broken("{\"vertices\": [\"A\"");
  CHECK_THROWS_AS(read_graph(broken), InputError);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"vertices": ["A"], "directed": [["A", "B"]]})")),
                  InputError);
  CHECK_THROWS_AS(
      graph_from_json(nlohmann::json::parse(R"({"vertices": ["A", "B"], "directed": [["A", "B"], ["B", "A"]]})")),
      GraphError);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(
                      R"({"vertices": ["A", "B", "C"], "directed": [["A", "B"], ["B", "C"], ["C", "A"]]})")),
                  GraphError);
  // A -> B - C with A, C non-adjacent is a valid PDAG but not rule-closed.
  auto open = nlohmann::json::parse(R"({"vertices": ["A", "B", "C"], "directed": [["A", "B"]], "undirected": [["B", "C"]]})");
  CHECK_NOTHROW(graph_from_json(open));
  CHECK_THROWS_AS(graph_from_json(open, true), GraphError);
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.json"), InputError);
}
