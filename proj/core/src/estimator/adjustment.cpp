#include "causal/estimator/adjustment.hpp"

#include "causal/errors.hpp"

namespace causal {

namespace {

std::vector<int> design_columns(const VertexSet& a, Vertex y, const VertexSet& z, Eigen::Index p) {
  if (a.empty()) throw InputError("adjustment: empty treatment set");
  if (contains(a, y) || contains(z, y)) throw InputError("adjustment: outcome appears among the regressors");
  if (!set_intersection(a, z).empty()) throw InputError("adjustment: treatment and adjustment sets overlap");
  std::vector<int> cols(a.begin(), a.end());
  cols.insert(cols.end(), z.begin(), z.end());
  cols.push_back(y);
  for (int c : cols) {
    if (c < 0 || c >= p) throw InputError("adjustment: vertex index out of range");
  }
  cols.pop_back();
  return cols;
}

EffectEstimate make_estimate(const VertexSet& a, Vertex y, long n) {
  EffectEstimate est;
  est.treatment = a;
  est.outcome = y;
  est.method = EstimationMethod::adjustment;
  est.n = n;
  return est;
}

}  // namespace

EffectEstimate adjustment_estimate(const Eigen::MatrixXd& data, const VertexSet& a, Vertex y, const VertexSet& z) {
  const auto cols = design_columns(a, y, z, data.cols());
  const auto n = data.rows();
  const auto q = static_cast<Eigen::Index>(cols.size());
  if (n <= q + 1) throw DegenerateSample("adjustment: need more samples than regressors plus one");
  if (!data.allFinite()) throw DegenerateSample("adjustment: data contain non-finite values");

  const Eigen::MatrixXd x = data(Eigen::all, cols);
  const Eigen::VectorXd yv = data.col(y);
  const double inv_n = 1.0 / static_cast<double>(n);
  const Eigen::MatrixXd s = (x.transpose() * x) * inv_n;
  const auto llt = checked_cholesky(s, "adjustment design");
  const Eigen::VectorXd beta = llt.solve((x.transpose() * yv) * inv_n);
  const Eigen::VectorXd resid = yv - x * beta;

  // HC0 meat: (1/n) sum e_i^2 x_i x_i^T.
  const Eigen::MatrixXd weighted = x.array().colwise() * resid.array();
  const Eigen::MatrixXd meat = (weighted.transpose() * weighted) * inv_n;
  const Eigen::MatrixXd s_inv = llt.solve(Eigen::MatrixXd::Identity(q, q));
  Eigen::MatrixXd sandwich = s_inv * meat * s_inv;

  const auto na = static_cast<Eigen::Index>(a.size());
  auto est = make_estimate(a, y, static_cast<long>(n));
  est.tau = beta.head(na);
  est.acov = sandwich.topLeftCorner(na, na);
  est.acov = 0.5 * (est.acov + est.acov.transpose()).eval();
  return est;
}

EffectEstimate adjustment_from_covariance(const Eigen::MatrixXd& cov, long n, const VertexSet& a, Vertex y,
                                          const VertexSet& z) {
  if (cov.rows() != cov.cols()) throw InputError("adjustment: covariance is not square");
  const auto cols = design_columns(a, y, z, cov.rows());
  const auto q = static_cast<Eigen::Index>(cols.size());
  const std::vector<int> ycol{y};
  const auto llt = checked_cholesky(cov(cols, cols), "adjustment design");
  const Eigen::VectorXd sxy = cov(cols, ycol);
  const Eigen::VectorXd beta = llt.solve(sxy);
  const double sigma2 = std::max(0.0, cov(y, y) - sxy.dot(beta));
  const auto na = static_cast<Eigen::Index>(a.size());
  auto est = make_estimate(a, y, n);
  est.tau = beta.head(na);
  est.acov = sigma2 * llt.solve(Eigen::MatrixXd::Identity(q, q)).topLeftCorner(na, na);
  return est;
}

}  // namespace causal
