#include "causal/estimator/effect.hpp"

#include "causal/errors.hpp"
#include "causal/estimator/bootstrap.hpp"

namespace causal {

namespace {

struct EffectPieces {
  Eigen::MatrixXd lambda_ad;   // |A| x |D|
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;  // of I - Lambda_{D,D}
  Eigen::VectorXd x;           // (I - Lambda_{D,D})^{-1} e_y
};

EffectPieces effect_pieces(const Eigen::MatrixXd& lambda, const IdentificationPlan& plan) {
  const auto& d = plan.d_set;
  const auto m = static_cast<Eigen::Index>(d.size());
  if (lambda.rows() != lambda.cols() || plan.outcome < 0 || plan.outcome >= lambda.rows()) {
    throw InputError("coefficient matrix does not match the identification plan");
  }
  auto y_pos = std::lower_bound(d.begin(), d.end(), plan.outcome) - d.begin();
  if (y_pos == m || d[static_cast<std::size_t>(y_pos)] != plan.outcome) {
    throw InputError("identification plan does not contain its outcome");
  }
  Eigen::MatrixXd i_minus = Eigen::MatrixXd::Identity(m, m) - lambda(d, d);
  EffectPieces out{lambda(plan.treatment, d), Eigen::PartialPivLU<Eigen::MatrixXd>(i_minus), {}};
  Eigen::VectorXd e_y = Eigen::VectorXd::Unit(m, y_pos);
  out.x = out.lu.solve(e_y);
  // I - Lambda_{D,D} is block triangular with identity diagonal blocks.
  if (!out.x.allFinite()) throw Error("internal error: I - Lambda_DD is singular");
  return out;
}

}  // namespace

Eigen::VectorXd effect_from_lambda(const Eigen::MatrixXd& lambda, const IdentificationPlan& plan) {
  auto pieces = effect_pieces(lambda, plan);
  return pieces.lambda_ad * pieces.x;
}

Eigen::VectorXd effect_from_lambda(const BlockRecursiveModel& model, const IdentificationPlan& plan) {
  return effect_from_lambda(model.lambda_matrix(), plan);
}

std::vector<Eigen::MatrixXd> effect_jacobian(const Eigen::MatrixXd& lambda, const IdentificationPlan& plan) {
  // d tau / d lambda_ij = x_j ([i = a] + U_{a,i}) for j in D, where
  // U = Lambda_{A,D} (I - Lambda_{D,D})^{-1}; zero for j outside D.
  auto pieces = effect_pieces(lambda, plan);
  const auto& d = plan.d_set;
  const auto& a = plan.treatment;
  const Eigen::MatrixXd u = pieces.lambda_ad * pieces.lu.inverse();
  const auto p = lambda.rows();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t c = 0; c < d.size(); ++c) {
      const double xj = pieces.x(static_cast<Eigen::Index>(c));
      j(a[m], d[c]) += xj;
      for (std::size_t r = 0; r < d.size(); ++r) {
        j(d[r], d[c]) += xj * u(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(r));
      }
    }
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

// Stacks vec(J_m(rows, cols)) for every treatment coordinate m.
Eigen::MatrixXd block_gradient(const std::vector<Eigen::MatrixXd>& jac, const VertexSet& rows, const VertexSet& cols) {
  const auto len = static_cast<Eigen::Index>(rows.size() * cols.size());
  Eigen::MatrixXd h(static_cast<Eigen::Index>(jac.size()), len);
  for (std::size_t m = 0; m < jac.size(); ++m) {
    Eigen::MatrixXd block = jac[m](rows, cols);
    h.row(static_cast<Eigen::Index>(m)) = Eigen::Map<const Eigen::RowVectorXd>(block.data(), len);
  }
  return h;
}

void check_model(const BlockRecursiveModel& model, const IdentificationPlan& plan) {
  if (model.buckets.buckets != plan.buckets.buckets) {
    throw InputError("model and identification plan use different bucket decompositions");
  }
}

}  // namespace

DeltaMethodResult delta_method_acov(const BlockRecursiveModel& model, const IdentificationPlan& plan,
                                    const Eigen::MatrixXd& cov) {
  check_model(model, plan);
  const auto jac = effect_jacobian(model.lambda_matrix(), plan);
  const auto q = static_cast<Eigen::Index>(plan.treatment.size());
  DeltaMethodResult out{Eigen::MatrixXd::Zero(q, q), {}};
  for (int k = 0; k < model.buckets.size(); ++k) {
    const auto& regs = model.regressors[static_cast<std::size_t>(k)];
    const auto& bucket = model.buckets.buckets[static_cast<std::size_t>(k)];
    Eigen::MatrixXd h = block_gradient(jac, regs, bucket);
    if (!regs.empty() && !h.isZero(0.0)) {
      // h^T (Omega kron S^{-1}) h' = <G, S^{-1} G' Omega> for h = vec(G).
      const auto& omega = model.omega_blocks[static_cast<std::size_t>(k)];
      auto llt = checked_cholesky(cov(regs, regs), "regressor covariance");
      const auto rows = static_cast<Eigen::Index>(regs.size());
      const auto cols = static_cast<Eigen::Index>(bucket.size());
      std::vector<Eigen::MatrixXd> transformed;
      for (Eigen::Index m = 0; m < q; ++m) {
        const Eigen::RowVectorXd hm = h.row(m);
        const Eigen::Map<const Eigen::MatrixXd> g(hm.data(), rows, cols);
        transformed.push_back(llt.solve(Eigen::MatrixXd(g)) * omega);
      }
      for (Eigen::Index m = 0; m < q; ++m) {
        Eigen::RowVectorXd hm = h.row(m);
        Eigen::Map<const Eigen::MatrixXd> gm(hm.data(), rows, cols);
        for (Eigen::Index l = 0; l < q; ++l) {
          out.acov(m, l) += gm.cwiseProduct(transformed[static_cast<std::size_t>(l)]).sum();
        }
      }
    }
    out.gradients.push_back(std::move(h));
  }
  out.acov = (0.5 * (out.acov + out.acov.transpose())).eval();
  return out;
}

Eigen::MatrixXd efficiency_bound_matrix(const BlockRecursiveModel& gbar, const BlockRecursiveModel& g,
                                        const IdentificationPlan& plan, const Eigen::MatrixXd& cov) {
  if (gbar.mode != RegressionMode::gbar || g.mode != RegressionMode::g) {
    throw InputError("efficiency_bound expects a saturated fit and a G fit");
  }
  check_model(gbar, plan);
  check_model(g, plan);
  const auto jac = effect_jacobian(gbar.lambda_matrix(), plan);
  const auto q = static_cast<Eigen::Index>(plan.treatment.size());
  Eigen::MatrixXd bound = Eigen::MatrixXd::Zero(q, q);
  for (int k = 0; k < g.buckets.size(); ++k) {
    const auto& parents = g.regressors[static_cast<std::size_t>(k)];
    if (parents.empty()) continue;
    const auto& bucket = g.buckets.buckets[static_cast<std::size_t>(k)];
    const Eigen::MatrixXd h = block_gradient(jac, parents, bucket);
    const auto& omega = gbar.omega_blocks[static_cast<std::size_t>(k)];
    const auto np = static_cast<Eigen::Index>(parents.size());
    const Eigen::MatrixXd s_inv = checked_cholesky(cov(parents, parents), "parent covariance")
                                      .solve(Eigen::MatrixXd::Identity(np, np));
    // Explicit Kronecker product Omega kron S^{-1}.
    Eigen::MatrixXd kron(omega.rows() * np, omega.cols() * np);
    for (Eigen::Index r = 0; r < omega.rows(); ++r) {
      for (Eigen::Index c = 0; c < omega.cols(); ++c) {
        kron.block(r * np, c * np, np, np) = omega(r, c) * s_inv;
      }
    }
    bound += h * kron * h.transpose();
  }
  return 0.5 * (bound + bound.transpose());
}

double efficiency_bound(const BlockRecursiveModel& gbar, const BlockRecursiveModel& g, const IdentificationPlan& plan,
                        const Eigen::MatrixXd& cov, const Eigen::VectorXd& w) {
  if (w.size() != static_cast<Eigen::Index>(plan.treatment.size())) {
    throw InputError("weight vector length differs from the treatment count");
  }
  if (w.isZero(0.0)) return 0.0;
  return w.dot(efficiency_bound_matrix(gbar, g, plan, cov) * w);
}

const char* to_string(EstimationMethod m) {
  switch (m) {
    case EstimationMethod::g_regression:
      return "g_regression";
    case EstimationMethod::adjustment:
      return "adjustment";
  }
  return "unknown";
}

Eigen::VectorXd EffectEstimate::standard_errors() const {
  return (acov.diagonal() / static_cast<double>(n)).cwiseMax(0.0).cwiseSqrt();
}

EffectEstimate estimate_total_effect(const SampleCovariance& cov, const Pdag& g, const IdentificationPlan& plan) {
  if (cov.matrix.rows() != g.size()) throw InputError("covariance dimension differs from the graph size");
  const auto model = g_regression(cov.matrix, plan.buckets);
  EffectEstimate est;
  est.treatment = plan.treatment;
  est.outcome = plan.outcome;
  est.method = EstimationMethod::g_regression;
  est.n = cov.n;
  est.tau = effect_from_lambda(model, plan);
  auto delta = delta_method_acov(model, plan, cov.matrix);
  est.acov = std::move(delta.acov);
  est.gradients = std::move(delta.gradients);
  return est;
}

EffectEstimate estimate_total_effect(const SampleCovariance& cov, const Pdag& g, const VertexSet& a, Vertex y) {
  return estimate_total_effect(cov, g, build_plan(g, a, y));
}

EffectEstimate estimate_total_effect(const Eigen::MatrixXd& data, const Pdag& g, const VertexSet& a, Vertex y,
                                     const EstimateOptions& options) {
  if (data.cols() != g.size()) throw InputError("data column count differs from the graph size");
  const auto plan = build_plan(g, a, y);
  const Eigen::MatrixXd used = options.center ? center_columns(data) : data;
  auto est = estimate_total_effect(sample_covariance(used, g.labels()), g, plan);
  if (options.bootstrap > 0) {
    auto boot = bootstrap_ci(data, g, plan, BootstrapOptions{options.bootstrap, options.level, options.seed,
                                                              options.center, options.threads});
    est.ci = std::move(boot.ci);
    est.bootstrap_acov = std::move(boot.acov);
    est.bootstrap_rejected = boot.rejected;
  }
  return est;
}

}  // namespace causal
