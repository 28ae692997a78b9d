#pragma once

#include <vector>

#include "causal/graph/pdag.hpp"

namespace causal {

/// Ordered connected components of the undirected part of an MPDAG.
///
/// Every directed edge between two buckets points from the earlier bucket to
/// the later one, and all vertices of a bucket share the same parents outside
/// the bucket (`external_parents[k]`).
struct BucketDecomposition {
  std::vector<VertexSet> buckets;
  std::vector<VertexSet> external_parents;
  /// bucket_of[v] is the position of v's bucket in `buckets`.
  std::vector<int> bucket_of;

  int size() const noexcept { return static_cast<int>(buckets.size()); }
  /// B_1 u ... u B_k for k < `end` (all buckets strictly before `end`).
  VertexSet preceding(int end) const;
};

/// Connected components of the undirected subgraph, each sorted, ordered by
/// smallest member.
std::vector<VertexSet> undirected_components(const Pdag& g);

/// Partial causal ordering of the undirected components. When several
/// components can be peeled, the one holding the smallest vertex index goes
/// first. Throws GraphError if no component can be peeled or a bucket
/// violates the shared-parents property.
BucketDecomposition bucket_decomposition(const Pdag& g);

/// Adds every directed edge from earlier to later buckets so that each
/// bucket's external parents are all preceding buckets.
Pdag saturated_mpdag(const Pdag& g);
Pdag saturated_mpdag(const Pdag& g, const BucketDecomposition& buckets);

}  // namespace causal
