#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "causal/estimator/effect.hpp"

namespace causal {

struct BootstrapOptions {
  int replicates = 1000;
  double level = 0.95;
  std::uint64_t seed = 0;
  bool center = false;
  int threads = 0;
};

struct BootstrapResult {
  ConfidenceInterval ci;
  /// n times the covariance of the replicate estimates.
  Eigen::MatrixXd acov;
  /// replicates x |A|, in replicate order.
  Eigen::MatrixXd replicates;
  /// Resamples discarded because their covariance was singular.
  int rejected = 0;
};

/// Pairs bootstrap with percentile intervals. Replicate b draws from a stream
/// keyed by (seed, b, attempt), so results do not depend on the thread
/// count. Rejected resamples are redrawn; more than 10% rejections raise
/// IllConditioned.
BootstrapResult bootstrap_ci(const Eigen::MatrixXd& data, const Pdag& g, const IdentificationPlan& plan,
                             const BootstrapOptions& options);
BootstrapResult bootstrap_ci(const Eigen::MatrixXd& data, const Pdag& g, const VertexSet& a, Vertex y,
                             const BootstrapOptions& options);

/// Sample quantile with linear interpolation between order statistics
/// (type 7). `sorted` must be ascending and non-empty.
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace causal
