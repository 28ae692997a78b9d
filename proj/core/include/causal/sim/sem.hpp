#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "causal/graph/pdag.hpp"
#include "causal/random.hpp"

namespace causal {

enum class ErrorFamily { gaussian, t5, logistic, uniform };

inline constexpr ErrorFamily kAllErrorFamilies[] = {ErrorFamily::gaussian, ErrorFamily::t5, ErrorFamily::logistic,
                                                     ErrorFamily::uniform};

const char* to_string(ErrorFamily f);
/// Throws InputError for an unknown name.
ErrorFamily error_family_from_string(const std::string& name);

/// Zero-mean error. `param` is the variance v for gaussian, the scale v of
/// sqrt(v) * t_5 for t5, the scale s for logistic and the half-width a for
/// uniform.
struct ErrorSpec {
  ErrorFamily family = ErrorFamily::gaussian;
  double param = 1.0;

  double variance() const;
  double draw(CounterRng& rng) const;
  /// Parameter drawn from the family's default range.
  static ErrorSpec random(ErrorFamily family, CounterRng& rng);
};

/// X_j = sum_i gamma(i, j) X_i + eps_j over the DAG's edges.
struct LinearSem {
  Pdag dag;
  Eigen::MatrixXd gamma;
  std::vector<ErrorSpec> errors;

  int size() const noexcept { return dag.size(); }
};

struct SemOptions {
  /// Shrink incoming coefficients so implied variances stay bounded.
  bool rescale = false;
  /// Draw an error family per vertex instead of one per SEM.
  bool per_vertex_family = false;
  /// Fixes the family instead of drawing it.
  std::optional<ErrorFamily> family;
  /// Ceiling on implied variances under `rescale`.
  double target_variance = 6.0;
};

/// Erdos-Renyi graph with edge probability k / (p - 1), oriented along a
/// uniformly random permutation.
Pdag random_dag(int p, double k, CounterRng& rng);

/// Coefficients uniform on [-2, -0.1] u [0.1, 2]; errors per `options`.
LinearSem random_sem(const Pdag& dag, CounterRng& rng, const SemOptions& options = {});

/// Throws InputError if gamma has support outside the DAG's edges or an
/// error variance is not positive.
void validate_sem(const LinearSem& sem);

/// n x |V| sample, generated vertex by vertex in topological order.
Eigen::MatrixXd sample(const LinearSem& sem, long n, CounterRng& rng);

/// Population covariance (I - Gamma)^{-T} diag(var) (I - Gamma)^{-1}, built
/// recursively in topological order.
Eigen::MatrixXd implied_covariance(const LinearSem& sem);

/// Sum over directed paths from a_i to y avoiding other treatment vertices of
/// the product of coefficients.
Eigen::VectorXd true_effect_pathsum(const LinearSem& sem, const VertexSet& a, Vertex y);

/// Same quantity through the identification formula on the DAG itself.
Eigen::VectorXd true_effect_blockform(const LinearSem& sem, const VertexSet& a, Vertex y);

/// Graph format plus "gamma": [[from, to, value], ...] and
/// "errors": [{"vertex", "family", "param"}, ...].
nlohmann::json sem_to_json(const LinearSem& sem);
LinearSem sem_from_json(const nlohmann::json& j);

}  // namespace causal
