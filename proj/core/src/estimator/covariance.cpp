#include "causal/estimator/covariance.hpp"

#include "causal/errors.hpp"

namespace causal {

SampleCovariance sample_covariance(const Eigen::MatrixXd& data, std::vector<std::string> vertex_order) {
  const auto n = data.rows();
  const auto p = data.cols();
  if (!vertex_order.empty() && static_cast<Eigen::Index>(vertex_order.size()) != p) {
    throw InputError("vertex order does not match the number of data columns");
  }
  if (!data.allFinite()) throw DegenerateSample("data contain non-finite values");
  if (n <= p) {
    throw DegenerateSample("need more samples than variables (n = " + std::to_string(n) +
                           ", |V| = " + std::to_string(p) + ")");
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, p);
  s.selfadjointView<Eigen::Lower>().rankUpdate(data.transpose(), 1.0 / static_cast<double>(n));
  s.triangularView<Eigen::StrictlyUpper>() = s.transpose();
  return {std::move(s), static_cast<long>(n), std::move(vertex_order)};
}

Eigen::MatrixXd center_columns(const Eigen::MatrixXd& data) {
  return data.rowwise() - data.colwise().mean();
}

void check_positive_definite(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DegenerateSample("covariance matrix is not square");
  if (!m.allFinite()) throw DegenerateSample("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DegenerateSample("covariance matrix is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw DegenerateSample("covariance matrix is not positive definite");
}

}  // namespace causal
