#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace causal {

/// Second-moment matrix about zero, (1/n) sum_i x_i x_i^T.
struct SampleCovariance {
  Eigen::MatrixXd matrix;
  long n = 0;
  std::vector<std::string> vertex_order;
};

/// `data` is n x |V| with columns in `vertex_order`. Throws DegenerateSample
/// on non-finite entries or n <= |V|.
SampleCovariance sample_covariance(const Eigen::MatrixXd& data, std::vector<std::string> vertex_order);

/// Subtracts column means.
Eigen::MatrixXd center_columns(const Eigen::MatrixXd& data);

/// Throws DegenerateSample unless m is square, symmetric to 1e-12 (relative)
/// and positive definite.
void check_positive_definite(const Eigen::MatrixXd& m);

}  // namespace causal
