#include "causal/sim/sem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "causal/errors.hpp"
#include "causal/estimator/effect.hpp"
#include "causal/graph/graph_io.hpp"
#include "causal/identification.hpp"

namespace causal {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vertex> topo_or_throw(const Pdag& dag) {
  if (dag.num_undirected() != 0) throw InputError("SEM graph must be fully directed");
  auto order = topological_order(dag);
  if (!order) throw GraphError("SEM graph has a directed cycle");
  return *order;
}

}  // namespace

const char* to_string(ErrorFamily f) {
  switch (f) {
    case ErrorFamily::gaussian:
      return "gaussian";
    case ErrorFamily::t5:
      return "t5";
    case ErrorFamily::logistic:
      return "logistic";
    case ErrorFamily::uniform:
      return "uniform";
  }
  return "unknown";
}

ErrorFamily error_family_from_string(const std::string& name) {
  for (ErrorFamily f : kAllErrorFamilies) {
    if (name == to_string(f)) return f;
  }
  throw InputError("unknown error family '" + name + "'");
}

double ErrorSpec::variance() const {
  switch (family) {
    case ErrorFamily::gaussian:
      return param;
    case ErrorFamily::t5:
      return param * 5.0 / 3.0;
    case ErrorFamily::logistic:
      return param * param * kPi * kPi / 3.0;
    case ErrorFamily::uniform:
      return param * param / 3.0;
  }
  return 0.0;
}

double ErrorSpec::draw(CounterRng& rng) const {
  switch (family) {
    case ErrorFamily::gaussian:
      return std::sqrt(param) * rng.normal();
    case ErrorFamily::t5: {
      double chi2 = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double z = rng.normal();
        chi2 += z * z;
      }
      return std::sqrt(param) * rng.normal() / std::sqrt(chi2 / 5.0);
    }
    case ErrorFamily::logistic: {
      const double u = rng.uniform();
      return param * std::log(u / (1.0 - u));
    }
    case ErrorFamily::uniform:
      return param * (2.0 * rng.uniform() - 1.0);
  }
  return 0.0;
}

ErrorSpec ErrorSpec::random(ErrorFamily family, CounterRng& rng) {
  switch (family) {
    case ErrorFamily::gaussian:
      return {family, rng.uniform(0.5, 6.0)};
    case ErrorFamily::t5:
      return {family, rng.uniform(0.5, 1.5)};
    case ErrorFamily::logistic:
      return {family, rng.uniform(0.4, 0.7)};
    case ErrorFamily::uniform:
      return {family, rng.uniform(1.2, 2.1)};
  }
  return {};
}

Pdag random_dag(int p, double k, CounterRng& rng) {
  if (p < 2) throw InputError("random_dag: need at least two vertices");
  if (!(k > 0.0 && k < p)) throw InputError("random_dag: average degree must lie in (0, p)");
  const double q = std::min(1.0, k / (p - 1));
  std::vector<Vertex> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = p - 1; i > 0; --i) {
    std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  Pdag g = Pdag::with_size(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      if (rng.bernoulli(q)) g.add_directed(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

LinearSem random_sem(const Pdag& dag, CounterRng& rng, const SemOptions& options) {
  const auto order = topo_or_throw(dag);
  const int p = dag.size();
  LinearSem sem{dag, Eigen::MatrixXd::Zero(p, p), {}};
  for (auto [i, j] : dag.directed_edges()) {
    const double mag = rng.uniform(0.1, 2.0);
    sem.gamma(i, j) = rng.bernoulli(0.5) ? mag : -mag;
  }
  const ErrorFamily shared = options.family ? *options.family : kAllErrorFamilies[rng.below(4)];
  for (int v = 0; v < p; ++v) {
    const ErrorFamily f = options.per_vertex_family && !options.family ? kAllErrorFamilies[rng.below(4)] : shared;
    sem.errors.push_back(ErrorSpec::random(f, rng));
  }
  if (options.rescale) {
    // Walk the topological order keeping the implied covariance of processed
    // vertices; shrink a vertex's incoming coefficients when the explained
    // part would push its variance above the target.
    const double target = options.target_variance;
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(p, p);
    std::vector<Vertex> done;
    for (Vertex j : order) {
      const auto& pa = dag.parents(j);
      const double e = sem.errors[static_cast<std::size_t>(j)].variance();
      if (!pa.empty()) {
        Eigen::VectorXd g = sem.gamma(pa, j);
        const double explained = g.dot(sigma(pa, pa) * g);
        if (explained + e > target && explained > 0.0) {
          const double room = std::max(target - e, 0.05 * target);
          const double c = std::sqrt(room / explained);
          for (Vertex i : pa) sem.gamma(i, j) *= c;
        }
        const Eigen::VectorXd gj = sem.gamma(pa, j);
        if (!done.empty()) {
          const Eigen::VectorXd cross = sigma(done, pa) * gj;
          for (std::size_t t = 0; t < done.size(); ++t) {
            sigma(done[t], j) = sigma(j, done[t]) = cross(static_cast<Eigen::Index>(t));
          }
        }
        sigma(j, j) = gj.dot(sigma(pa, pa) * gj) + e;
      } else {
        sigma(j, j) = e;
      }
      done.push_back(j);
    }
  }
  return sem;
}

void validate_sem(const LinearSem& sem) {
  const int p = sem.size();
  if (sem.gamma.rows() != p || sem.gamma.cols() != p) throw InputError("SEM: gamma has the wrong shape");
  if (static_cast<int>(sem.errors.size()) != p) throw InputError("SEM: one error spec per vertex required");
  topo_or_throw(sem.dag);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (sem.gamma(i, j) != 0.0 && !sem.dag.has_directed(i, j)) {
        throw InputError("SEM: coefficient on " + sem.dag.label(i) + " -> " + sem.dag.label(j) +
                         " which is not an edge");
      }
    }
  }
  for (const auto& e : sem.errors) {
    if (!(e.param > 0.0) || !std::isfinite(e.param)) throw InputError("SEM: error parameter must be positive");
  }
}

Eigen::MatrixXd sample(const LinearSem& sem, long n, CounterRng& rng) {
  if (n < 1) throw InputError("sample: n must be positive");
  const auto order = topo_or_throw(sem.dag);
  Eigen::MatrixXd x(n, sem.size());
  for (Vertex j : order) {
    const auto& err = sem.errors[static_cast<std::size_t>(j)];
    for (long i = 0; i < n; ++i) x(i, j) = err.draw(rng);
    const auto& pa = sem.dag.parents(j);
    if (!pa.empty()) x.col(j) += x(Eigen::all, pa) * sem.gamma(pa, j);
  }
  return x;
}

Eigen::MatrixXd implied_covariance(const LinearSem& sem) {
  const auto order = topo_or_throw(sem.dag);
  const int p = sem.size();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(p, p);
  std::vector<Vertex> done;
  for (Vertex j : order) {
    const auto& pa = sem.dag.parents(j);
    const double e = sem.errors[static_cast<std::size_t>(j)].variance();
    if (pa.empty()) {
      sigma(j, j) = e;
    } else {
      const Eigen::VectorXd g = sem.gamma(pa, j);
      const Eigen::VectorXd cross = sigma(done, pa) * g;
      for (std::size_t t = 0; t < done.size(); ++t) {
        sigma(done[t], j) = sigma(j, done[t]) = cross(static_cast<Eigen::Index>(t));
      }
      sigma(j, j) = g.dot(sigma(pa, pa) * g) + e;
    }
    done.push_back(j);
  }
  return sigma;
}

Eigen::VectorXd true_effect_pathsum(const LinearSem& sem, const VertexSet& a, Vertex y) {
  const int p = sem.size();
  if (y < 0 || y >= p) throw InputError("true_effect_pathsum: outcome out of range");
  if (contains(a, y)) throw InputError("true_effect_pathsum: outcome belongs to the treatment set");
  const auto order = topo_or_throw(sem.dag);
  Eigen::VectorXd tau(static_cast<Eigen::Index>(a.size()));
  for (std::size_t m = 0; m < a.size(); ++m) {
    // w[v]: sum over paths a_m -> ... -> v whose interior avoids the treatment.
    std::vector<double> w(static_cast<std::size_t>(p), 0.0);
    w[static_cast<std::size_t>(a[m])] = 1.0;
    for (Vertex v : order) {
      if (v == a[m] || contains(a, v)) continue;
      double s = 0.0;
      for (Vertex u : sem.dag.parents(v)) {
        if (u == a[m] || !contains(a, u)) s += w[static_cast<std::size_t>(u)] * sem.gamma(u, v);
      }
      w[static_cast<std::size_t>(v)] = s;
    }
    tau(static_cast<Eigen::Index>(m)) = w[static_cast<std::size_t>(y)];
  }
  return tau;
}

Eigen::VectorXd true_effect_blockform(const LinearSem& sem, const VertexSet& a, Vertex y) {
  // In a DAG every bucket is a singleton and Lambda coincides with Gamma.
  return effect_from_lambda(sem.gamma, build_plan(sem.dag, a, y));
}

nlohmann::json sem_to_json(const LinearSem& sem) {
  auto j = graph_to_json(sem.dag);
  auto gamma = nlohmann::json::array();
  for (auto [i, k] : sem.dag.directed_edges()) {
    gamma.push_back({sem.dag.label(i), sem.dag.label(k), sem.gamma(i, k)});
  }
  j["gamma"] = std::move(gamma);
  auto errors = nlohmann::json::array();
  for (int v = 0; v < sem.size(); ++v) {
    const auto& e = sem.errors[static_cast<std::size_t>(v)];
    errors.push_back({{"vertex", sem.dag.label(v)}, {"family", to_string(e.family)}, {"param", e.param}});
  }
  j["errors"] = std::move(errors);
  return j;
}

LinearSem sem_from_json(const nlohmann::json& j) {
  LinearSem sem;
  sem.dag = graph_from_json(j);
  const int p = sem.dag.size();
  sem.gamma = Eigen::MatrixXd::Zero(p, p);
  sem.errors.assign(static_cast<std::size_t>(p), ErrorSpec{});
  try {
    for (const auto& t : j.at("gamma")) {
      if (!t.is_array() || t.size() != 3) throw InputError("SEM: gamma entries must be [from, to, value]");
      sem.gamma(sem.dag.index_of(t[0].get<std::string>()), sem.dag.index_of(t[1].get<std::string>())) =
          t[2].get<double>();
    }
    std::vector<char> seen(static_cast<std::size_t>(p), 0);
    for (const auto& e : j.at("errors")) {
      const Vertex v = sem.dag.index_of(e.at("vertex").get<std::string>());
      if (seen[static_cast<std::size_t>(v)]) throw InputError("SEM: duplicate error entry for a vertex");
      seen[static_cast<std::size_t>(v)] = 1;
      sem.errors[static_cast<std::size_t>(v)] = {error_family_from_string(e.at("family").get<std::string>()),
                                                 e.at("param").get<double>()};
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InputError("SEM: missing error entries");
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("SEM: malformed JSON: ") + ex.what());
  }
  validate_sem(sem);
  return sem;
}

}  // namespace causal
