#pragma once

#include <vector>

#include <Eigen/Dense>

#include "causal/graph/buckets.hpp"

namespace causal {

/// Which regressors each bucket uses: its external parents in the graph (G)
/// or every vertex of the preceding buckets (saturated graph, Gbar).
enum class RegressionMode { g, gbar };

/// Block-recursive parameterisation X_{B_k} = Lambda_k^T X_{R_k} + eps_k with
/// independent eps_k ~ (0, Omega_k), where R_k = regressors[k].
struct BlockRecursiveModel {
  RegressionMode mode = RegressionMode::g;
  BucketDecomposition buckets;
  std::vector<VertexSet> regressors;
  /// |R_k| x |B_k|; 0 x |B_k| when R_k is empty.
  std::vector<Eigen::MatrixXd> lambda_blocks;
  /// |B_k| x |B_k| residual covariances.
  std::vector<Eigen::MatrixXd> omega_blocks;

  int num_vertices() const noexcept { return static_cast<int>(buckets.bucket_of.size()); }
  /// Full |V| x |V| coefficient matrix, zero outside the blocks.
  Eigen::MatrixXd lambda_matrix() const;
};

/// Conditioning threshold above which linear solves are refused.
inline constexpr double kMaxConditionNumber = 1e10;

/// Least squares of every bucket on its external parents. Throws
/// IllConditioned if a parent covariance block is numerically singular.
BlockRecursiveModel g_regression(const Eigen::MatrixXd& cov, const BucketDecomposition& buckets);

/// Least squares of every bucket on all preceding buckets; inverse of
/// covariance_map().
BlockRecursiveModel gbar_regression(const Eigen::MatrixXd& cov, const BucketDecomposition& buckets);

/// Covariance implied by a block-recursive model:
/// Sigma_{B_k} = Lambda_k^T Sigma_{R_k} Lambda_k + Omega_k, Sigma_{P,B_k} = Sigma_{P,R_k} Lambda_k.
Eigen::MatrixXd covariance_map(const BlockRecursiveModel& model);

/// Cholesky factor of an SPD block, refusing condition numbers above
/// kMaxConditionNumber.
Eigen::LLT<Eigen::MatrixXd> checked_cholesky(const Eigen::MatrixXd& m, const char* context);

}  // namespace causal
