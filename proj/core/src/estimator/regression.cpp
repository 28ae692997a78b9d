#include "causal/estimator/regression.hpp"

#include <limits>
#include <string>

#include "causal/errors.hpp"

namespace causal {

Eigen::LLT<Eigen::MatrixXd> checked_cholesky(const Eigen::MatrixXd& m, const char* context) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw IllConditioned(std::string(context) + ": matrix is not positive definite",
                         std::numeric_limits<double>::infinity());
  }
  const double rcond = llt.rcond();
  const double cond = rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (cond > kMaxConditionNumber) {
    throw IllConditioned(std::string(context) + ": condition number " + std::to_string(cond) + " exceeds limit",
                         cond);
  }
  return llt;
}

namespace {

BlockRecursiveModel regress(const Eigen::MatrixXd& cov, const BucketDecomposition& buckets, RegressionMode mode) {
  if (cov.rows() != cov.cols() || cov.rows() != static_cast<Eigen::Index>(buckets.bucket_of.size())) {
    throw InputError("covariance dimension does not match the bucket decomposition");
  }
  BlockRecursiveModel model;
  model.mode = mode;
  model.buckets = buckets;
  VertexSet preceding;
  for (int k = 0; k < buckets.size(); ++k) {
    const auto& bucket = buckets.buckets[static_cast<std::size_t>(k)];
    VertexSet regs = mode == RegressionMode::g ? buckets.external_parents[static_cast<std::size_t>(k)] : preceding;
    Eigen::MatrixXd s_bb = cov(bucket, bucket);
    if (regs.empty()) {
      model.lambda_blocks.emplace_back(0, static_cast<Eigen::Index>(bucket.size()));
      model.omega_blocks.push_back(std::move(s_bb));
    } else {
      const Eigen::MatrixXd s_rb = cov(regs, bucket);
      auto llt = checked_cholesky(cov(regs, regs), "regressor covariance");
      Eigen::MatrixXd lambda = llt.solve(s_rb);
      Eigen::MatrixXd omega = s_bb - s_rb.transpose() * lambda;
      omega = 0.5 * (omega + omega.transpose());
      model.lambda_blocks.push_back(std::move(lambda));
      model.omega_blocks.push_back(std::move(omega));
    }
    model.regressors.push_back(std::move(regs));
    preceding = set_union(preceding, bucket);
  }
  return model;
}

}  // namespace

BlockRecursiveModel g_regression(const Eigen::MatrixXd& cov, const BucketDecomposition& buckets) {
  return regress(cov, buckets, RegressionMode::g);
}

BlockRecursiveModel gbar_regression(const Eigen::MatrixXd& cov, const BucketDecomposition& buckets) {
  return regress(cov, buckets, RegressionMode::gbar);
}

Eigen::MatrixXd BlockRecursiveModel::lambda_matrix() const {
  const int p = num_vertices();
  Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(p, p);
  for (int k = 0; k < buckets.size(); ++k) {
    const auto& regs = regressors[static_cast<std::size_t>(k)];
    if (regs.empty()) continue;
    lambda(regs, buckets.buckets[static_cast<std::size_t>(k)]) = lambda_blocks[static_cast<std::size_t>(k)];
  }
  return lambda;
}

Eigen::MatrixXd covariance_map(const BlockRecursiveModel& model) {
  const int p = model.num_vertices();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(p, p);
  VertexSet preceding;
  for (int k = 0; k < model.buckets.size(); ++k) {
    const auto& bucket = model.buckets.buckets[static_cast<std::size_t>(k)];
    const auto& regs = model.regressors[static_cast<std::size_t>(k)];
    const auto& omega = model.omega_blocks[static_cast<std::size_t>(k)];
    if (regs.empty()) {
      sigma(bucket, bucket) = omega;
    } else {
      if (!is_subset(regs, preceding)) throw InputError("covariance_map: regressors must precede their bucket");
      const auto& lambda = model.lambda_blocks[static_cast<std::size_t>(k)];
      const Eigen::MatrixXd cross = sigma(preceding, regs) * lambda;
      sigma(preceding, bucket) = cross;
      sigma(bucket, preceding) = cross.transpose();
      Eigen::MatrixXd s_bb = lambda.transpose() * sigma(regs, regs) * lambda + omega;
      sigma(bucket, bucket) = 0.5 * (s_bb + s_bb.transpose());
    }
    preceding = set_union(preceding, bucket);
  }
  return sigma;
}

}  // namespace causal
