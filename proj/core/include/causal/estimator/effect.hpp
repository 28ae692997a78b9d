#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "causal/estimator/covariance.hpp"
#include "causal/estimator/regression.hpp"
#include "causal/graph/pdag.hpp"
#include "causal/identification.hpp"

namespace causal {

/// tau = Lambda_{A,D} [(I - Lambda_{D,D})^{-1}]_{D,y} for a full |V| x |V|
/// coefficient matrix. Exactly zero when no treatment is a parent of D.
Eigen::VectorXd effect_from_lambda(const Eigen::MatrixXd& lambda, const IdentificationPlan& plan);
Eigen::VectorXd effect_from_lambda(const BlockRecursiveModel& model, const IdentificationPlan& plan);

/// Jacobian of the effect with respect to every coefficient: element m is the
/// |V| x |V| matrix of d tau_m / d lambda_ij.
std::vector<Eigen::MatrixXd> effect_jacobian(const Eigen::MatrixXd& lambda, const IdentificationPlan& plan);

struct DeltaMethodResult {
  /// |A| x |A| asymptotic covariance of sqrt(n) (tau_hat - tau).
  Eigen::MatrixXd acov;
  /// Per bucket, |A| x (|R_k| |B_k|) Jacobian with respect to vec(Lambda_k)
  /// (column-major vec).
  std::vector<Eigen::MatrixXd> gradients;
};

/// Plug-in delta-method covariance: sum_k H_k (Omega_k kron Sigma_{R_k}^{-1}) H_k^T
/// for a mode-G model fitted to `cov`.
DeltaMethodResult delta_method_acov(const BlockRecursiveModel& model, const IdentificationPlan& plan,
                                    const Eigen::MatrixXd& cov);

/// Efficiency bound sum_k h_k^T (Omega_k kron Sigma_{Pa(B_k)}^{-1}) h_k evaluated
/// from a saturated (mode Gbar) fit: gradients and residual covariances come
/// from `gbar`, parent sets from `g`. Meaningful at population covariances.
double efficiency_bound(const BlockRecursiveModel& gbar, const BlockRecursiveModel& g,
                        const IdentificationPlan& plan, const Eigen::MatrixXd& cov, const Eigen::VectorXd& w);
Eigen::MatrixXd efficiency_bound_matrix(const BlockRecursiveModel& gbar, const BlockRecursiveModel& g,
                                        const IdentificationPlan& plan, const Eigen::MatrixXd& cov);

enum class EstimationMethod { g_regression, adjustment };

const char* to_string(EstimationMethod m);

struct ConfidenceInterval {
  double level = 0.95;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

struct EffectEstimate {
  VertexSet treatment;
  Vertex outcome = -1;
  Eigen::VectorXd tau;
  /// Asymptotic covariance of sqrt(n) (tau_hat - tau); acov / n estimates the
  /// sampling covariance.
  Eigen::MatrixXd acov;
  /// Empty for the adjustment method.
  std::vector<Eigen::MatrixXd> gradients;
  EstimationMethod method = EstimationMethod::g_regression;
  long n = 0;
  std::optional<ConfidenceInterval> ci;
  /// Bootstrap bookkeeping, present when intervals were requested.
  std::optional<Eigen::MatrixXd> bootstrap_acov;
  int bootstrap_rejected = 0;

  /// sqrt(diag(acov) / n).
  Eigen::VectorXd standard_errors() const;
};

struct EstimateOptions {
  /// Subtract column means before forming the second-moment matrix.
  bool center = false;
  /// Bootstrap replicates; 0 disables intervals.
  int bootstrap = 0;
  double level = 0.95;
  std::uint64_t seed = 0;
  /// Worker threads for the bootstrap; 0 picks the hardware concurrency.
  int threads = 0;
};

/// G-regression estimate from a second-moment matrix.
EffectEstimate estimate_total_effect(const SampleCovariance& cov, const Pdag& g, const VertexSet& a, Vertex y);
EffectEstimate estimate_total_effect(const SampleCovariance& cov, const Pdag& g, const IdentificationPlan& plan);

/// Full pipeline from an n x |V| data matrix (columns in graph vertex order).
EffectEstimate estimate_total_effect(const Eigen::MatrixXd& data, const Pdag& g, const VertexSet& a, Vertex y,
                                     const EstimateOptions& options = {});

}  // namespace causal
