#include "doctest.h"

#include "builders.hpp"
#include "causal/errors.hpp"
#include "causal/graph/paths.hpp"
#include "causal/identification.hpp"
#include "oracles.hpp"

using namespace causal;

TEST_CASE("identification examples") {
  CHECK_FALSE(is_identified(build::graph({"A", "Y"}, "A-Y"), {0}, 1));
  auto dag = build::graph({"A", "B", "C", "Y"}, "A->B B->Y C->A C->Y");
  for (Vertex a = 0; a < 4; ++a) {
    for (Vertex y = 0; y < 4; ++y) {
      if (a != y) CHECK(is_identified(dag, {a}, y));
    }
  }
  const auto g = build::fig1a();
  CHECK(is_identified(g, build::ids(g, {"1"}), g.index_of("5")));
  CHECK_FALSE(is_identified(g, build::ids(g, {"3"}), g.index_of("5")));
  CHECK_THROWS_AS(is_identified(g, {0}, 0), InputError);
  CHECK_THROWS_AS(is_identified(g, {}, 0), InputError);
}

TEST_CASE("plan for a chain") {
  auto g = build::graph({"a", "m", "y"}, "a->m m->y");
  const auto plan = build_plan(g, {0}, 2);
  CHECK(plan.d_set == VertexSet{1, 2});
  REQUIRE(plan.d_buckets.size() == 2);
  CHECK(plan.d_buckets[0] == VertexSet{1});
  CHECK(plan.d_buckets[1] == VertexSet{2});
  CHECK(plan.parents_per_bucket[0] == VertexSet{0});
  CHECK(plan.parents_per_bucket[1] == VertexSet{1});
}

TEST_CASE("plan for figure 1(a), treatment 1, outcome 5") {
  const auto g = build::fig1a();
  const auto plan = build_plan(g, build::ids(g, {"1"}), g.index_of("5"));
  CHECK(build::names(g, plan.d_set) == std::vector<std::string>{"4", "5"});
  REQUIRE(plan.d_buckets.size() == 2);
  CHECK(build::names(g, plan.d_buckets[0]) == std::vector<std::string>{"4"});
  CHECK(build::names(g, plan.d_buckets[1]) == std::vector<std::string>{"5"});
  CHECK(plan.bucket_index == std::vector<int>{1, 2});
  CHECK(build::names(g, plan.parents_per_bucket[0]) == std::vector<std::string>{"1"});
  CHECK(build::names(g, plan.parents_per_bucket[1]) == std::vector<std::string>{"4"});
}

TEST_CASE("plan refuses unidentified effects") {
  const auto g = build::fig1a();
  CHECK_THROWS_AS(build_plan(g, build::ids(g, {"3"}), g.index_of("5")), NotIdentified);
}

TEST_CASE("plan invariants on random MPDAGs") {
  CounterRng rng(41);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 4 + static_cast<int>(rng.below(5));
    const Pdag dag = oracle::random_dag(n, rng.uniform(0.2, 0.8), rng);
    const Pdag g = oracle::random_mpdag_from(dag, rng.uniform(0.0, 0.7), rng);
    const VertexSet a = oracle::random_subset(n, 1 + static_cast<int>(rng.below(2)), rng);
    const Vertex y = set_difference(oracle::random_subset(n, n, rng), a).front();
    if (!is_identified(g, a, y)) continue;
    ++checked;
    const auto plan = build_plan(g, a, y);
    CHECK(contains(plan.d_set, y));
    CHECK(set_intersection(plan.d_set, a).empty());
    VertexSet earlier = a;
    for (std::size_t k = 0; k < plan.d_buckets.size(); ++k) {
      const auto& bucket = plan.buckets.buckets[static_cast<std::size_t>(plan.bucket_index[k])];
      CHECK(plan.d_buckets[k] == set_intersection(plan.d_set, bucket));
      CHECK(plan.parents_per_bucket[k] == plan.buckets.external_parents[static_cast<std::size_t>(plan.bucket_index[k])]);
      CHECK(is_subset(plan.parents_per_bucket[k], earlier));
      earlier = set_union(earlier, plan.d_buckets[k]);
    }
    // y outside PossDe(a): the treatment never feeds D
    if (!contains(possible_descendants(g, a), y)) {
      for (const auto& pa : plan.parents_per_bucket) CHECK(set_intersection(pa, a).empty());
    }
  }
  CHECK(checked > 50);
}
