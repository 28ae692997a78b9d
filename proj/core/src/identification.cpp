#include "causal/identification.hpp"

#include "causal/errors.hpp"
#include "causal/graph/paths.hpp"

namespace causal {

namespace {

void check_query(const Pdag& g, const VertexSet& a, Vertex y) {
  if (a.empty()) throw InputError("treatment set is empty");
  for (Vertex v : a) {
    if (v < 0 || v >= g.size()) throw InputError("treatment vertex out of range");
  }
  if (y < 0 || y >= g.size()) throw InputError("outcome vertex out of range");
  if (contains(a, y)) throw InputError("outcome '" + g.label(y) + "' is in the treatment set");
}

}  // namespace

bool is_identified(const Pdag& g, const VertexSet& a, Vertex y) {
  check_query(g, a, y);
  return !exists_proper_possibly_causal_undirected_start(g, a, y);
}

IdentificationPlan build_plan(const Pdag& g, const VertexSet& a, Vertex y) {
  return build_plan(g, bucket_decomposition(g), a, y);
}

IdentificationPlan build_plan(const Pdag& g, const BucketDecomposition& buckets, const VertexSet& a, Vertex y) {
  if (!is_identified(g, a, y)) {
    throw NotIdentified("effect on '" + g.label(y) + "' is not identified from the graph");
  }
  IdentificationPlan plan;
  plan.treatment = a;
  plan.outcome = y;
  plan.buckets = buckets;
  plan.d_set = ancestors_in_subgraph(g, y, a);

  VertexSet allowed = a;
  for (int k = 0; k < buckets.size(); ++k) {
    const auto& bucket = buckets.buckets[static_cast<std::size_t>(k)];
    VertexSet dk = set_intersection(plan.d_set, bucket);
    if (dk.empty()) continue;
    VertexSet parents;
    for (Vertex v : dk) parents = set_union(parents, g.parents(v));
    parents = set_difference(parents, dk);
    if (parents != buckets.external_parents[static_cast<std::size_t>(k)]) {
      throw GraphError("parents of the ancestor block in bucket " + std::to_string(k) +
                       " differ from the bucket's external parents");
    }
    if (!is_subset(parents, allowed)) {
      throw GraphError("ancestor block in bucket " + std::to_string(k) +
                       " has a parent outside the treatment and earlier blocks");
    }
    allowed = set_union(allowed, dk);
    plan.d_buckets.push_back(std::move(dk));
    plan.parents_per_bucket.push_back(std::move(parents));
    plan.bucket_index.push_back(k);
  }
  return plan;
}

}  // namespace causal
