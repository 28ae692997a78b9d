#pragma once

#include <vector>

#include "causal/graph/buckets.hpp"
#include "causal/graph/pdag.hpp"

namespace causal {

/// Scaffold for computing an identified total effect of `treatment` on `outcome`.
///
/// `d_set` holds the ancestors of the outcome once the treatment vertices are
/// removed. Its intersections with the buckets of the full graph are kept in
/// bucket order; empty intersections are dropped but `bucket_index` keeps the
/// position in `buckets`.
struct IdentificationPlan {
  VertexSet treatment;
  Vertex outcome = -1;
  VertexSet d_set;
  std::vector<VertexSet> d_buckets;
  std::vector<VertexSet> parents_per_bucket;
  std::vector<int> bucket_index;
  BucketDecomposition buckets;
};

/// Total effect of `a` on `y` is identified from g: no proper possibly causal
/// path from a to y starts with an undirected edge. Throws InputError if
/// y belongs to a or a is empty.
bool is_identified(const Pdag& g, const VertexSet& a, Vertex y);

/// Throws NotIdentified when the effect is not identified.
IdentificationPlan build_plan(const Pdag& g, const VertexSet& a, Vertex y);
IdentificationPlan build_plan(const Pdag& g, const BucketDecomposition& buckets, const VertexSet& a, Vertex y);

}  // namespace causal
