#include "causal/estimator/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "causal/errors.hpp"
#include "causal/parallel.hpp"
#include "causal/random.hpp"

namespace causal {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

constexpr int kMaxAttemptsPerReplicate = 64;

}  // namespace

BootstrapResult bootstrap_ci(const Eigen::MatrixXd& data, const Pdag& g, const IdentificationPlan& plan,
                             const BootstrapOptions& options) {
  if (options.replicates < 2) throw InputError("bootstrap needs at least two replicates");
  if (!(options.level > 0.0 && options.level < 1.0)) throw InputError("confidence level must lie in (0, 1)");
  if (data.cols() != g.size()) throw InputError("data column count differs from the graph size");
  const auto n = data.rows();
  const auto q = static_cast<Eigen::Index>(plan.treatment.size());
  const auto reps = static_cast<std::size_t>(options.replicates);

  BootstrapResult out;
  out.replicates.resize(options.replicates, q);
  std::vector<int> rejected(reps, 0);
  const CounterRng master(options.seed);

  parallel_for(reps, options.threads, [&](std::size_t b) {
    const CounterRng stream = master.substream(b);
    Eigen::MatrixXd resampled(n, data.cols());
    for (int attempt = 0; attempt < kMaxAttemptsPerReplicate; ++attempt) {
      CounterRng rng = stream.substream(static_cast<std::uint64_t>(attempt));
      for (Eigen::Index i = 0; i < n; ++i) {
        resampled.row(i) = data.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
      }
      try {
        const Eigen::MatrixXd used = options.center ? center_columns(resampled) : resampled;
        const auto cov = sample_covariance(used, g.labels());
        const auto model = g_regression(cov.matrix, plan.buckets);
        out.replicates.row(static_cast<Eigen::Index>(b)) = effect_from_lambda(model, plan).transpose();
        return;
      } catch (const IllConditioned&) {
      } catch (const DegenerateSample&) {
      }
      ++rejected[b];
    }
    throw IllConditioned("bootstrap: replicate " + std::to_string(b) + " kept producing singular resamples",
                         std::numeric_limits<double>::infinity());
  });

  for (int r : rejected) out.rejected += r;
  if (out.rejected * 10 > options.replicates) {
    throw IllConditioned("bootstrap: " + std::to_string(out.rejected) + " of " +
                             std::to_string(options.replicates + out.rejected) + " resamples were singular",
                         std::numeric_limits<double>::infinity());
  }

  const double alpha = 0.5 * (1.0 - options.level);
  out.ci.level = options.level;
  out.ci.lower.resize(q);
  out.ci.upper.resize(q);
  for (Eigen::Index m = 0; m < q; ++m) {
    std::vector<double> col(out.replicates.col(m).data(), out.replicates.col(m).data() + out.replicates.rows());
    std::sort(col.begin(), col.end());
    out.ci.lower(m) = quantile_sorted(col, alpha);
    out.ci.upper(m) = quantile_sorted(col, 1.0 - alpha);
  }
  const Eigen::MatrixXd centered = out.replicates.rowwise() - out.replicates.colwise().mean();
  out.acov = (centered.transpose() * centered) * (static_cast<double>(n) / static_cast<double>(reps - 1));
  return out;
}

BootstrapResult bootstrap_ci(const Eigen::MatrixXd& data, const Pdag& g, const VertexSet& a, Vertex y,
                             const BootstrapOptions& options) {
  return bootstrap_ci(data, g, build_plan(g, a, y), options);
}

}  // namespace causal
