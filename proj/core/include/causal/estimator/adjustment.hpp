#pragma once

#include <Eigen/Dense>

#include "causal/estimator/effect.hpp"

namespace causal {

/// Coefficients of `a` in the least-squares regression of y on (a, z), data
/// taken about zero. acov is the heteroscedasticity-robust (HC0) sandwich.
/// Throws InputError on overlapping sets, DegenerateSample when
/// n <= |a| + |z| + 1 and IllConditioned for a singular design.
EffectEstimate adjustment_estimate(const Eigen::MatrixXd& data, const VertexSet& a, Vertex y, const VertexSet& z);

/// Same regression from a second-moment matrix; acov is the classical
/// sigma^2 (Sigma_{XX})^{-1} block since only second moments are available.
EffectEstimate adjustment_from_covariance(const Eigen::MatrixXd& cov, long n, const VertexSet& a, Vertex y,
                                          const VertexSet& z);

}  // namespace causal
