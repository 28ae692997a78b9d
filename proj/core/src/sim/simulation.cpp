#include "causal/sim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "causal/errors.hpp"
#include "causal/estimator/adjustment.hpp"
#include "causal/estimator/effect.hpp"
#include "causal/graph/meek.hpp"
#include "causal/graph/paths.hpp"
#include "causal/identification.hpp"
#include "causal/parallel.hpp"
#include "causal/random.hpp"

namespace causal {

namespace {

VertexSet random_subset(int p, int m, CounterRng& rng) {
  std::vector<Vertex> all(static_cast<std::size_t>(p));
  for (int v = 0; v < p; ++v) all[static_cast<std::size_t>(v)] = v;
  for (int i = 0; i < m; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(p - i));
    std::swap(all[static_cast<std::size_t>(i)], all[j]);
  }
  all.resize(static_cast<std::size_t>(m));
  return make_vertex_set(std::move(all));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string family_name(const LinearSem& sem) {
  const auto f = sem.errors.front().family;
  for (const auto& e : sem.errors) {
    if (e.family != f) return "mixed";
  }
  return to_string(f);
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t master, int index) {
  return mix64(master ^ mix64(static_cast<std::uint64_t>(index) + 0x5851f42d4c957f2dULL));
}

ReplicationInstance draw_instance(const SimConfig& config, std::uint64_t seed) {
  if (config.nodes < 2) throw InputError("simulation needs at least two vertices");
  if (config.treat_size < 1 || config.treat_size >= config.nodes) {
    throw InputError("treatment size must lie in [1, nodes - 1]");
  }
  if (config.degrees.empty()) throw InputError("no average degrees configured");
  CounterRng rng = CounterRng(seed).substream(0);
  SemOptions sem_options;
  sem_options.rescale = config.rescale;
  sem_options.per_vertex_family = config.per_vertex_family;
  sem_options.family = config.family;

  VertexSet everything;
  for (int v = 0; v < config.nodes; ++v) everything.push_back(v);
  ReplicationInstance inst;
  inst.seed = seed;
  for (;;) {
    inst.degree = config.degrees[rng.below(config.degrees.size())];
    const double k = std::min(inst.degree, config.nodes - 1.0);
    Pdag dag = random_dag(config.nodes, k, rng);
    inst.sem = random_sem(dag, rng, sem_options);
    inst.cpdag = cpdag_from_dag(dag);
    for (int draw = 0; draw < config.max_pair_draws; ++draw) {
      ++inst.pair_draws;
      VertexSet a = random_subset(config.nodes, config.treat_size, rng);
      const auto rest = set_difference(everything, a);
      const Vertex y = rest[rng.below(rest.size())];
      if (!is_identified(inst.cpdag, a, y)) continue;
      if (!contains(possible_descendants(inst.cpdag, a), y)) continue;
      inst.treatment = std::move(a);
      inst.outcome = y;
      return inst;
    }
    if (++inst.dag_redraws >= config.max_dag_redraws) {
      throw InputError("no identified treatment/outcome pair after " + std::to_string(inst.dag_redraws) +
                       " DAG draws; increase nodes or lower the degree");
    }
  }
}

ReplicationRecord run_replication(const SimConfig& config, int index) {
  const std::uint64_t seed = replication_seed(config.seed, index);
  const auto inst = draw_instance(config, seed);
  CounterRng data_rng = CounterRng(seed).substream(1);
  const Eigen::MatrixXd data = sample(inst.sem, config.n, data_rng);
  const auto truth = true_effect_blockform(inst.sem, inst.treatment, inst.outcome);

  ReplicationRecord rec;
  rec.index = index;
  rec.seed = seed;
  rec.nodes = config.nodes;
  rec.degree = inst.degree;
  rec.treat_size = config.treat_size;
  rec.n = config.n;
  rec.family = family_name(inst.sem);
  for (Vertex a : inst.treatment) rec.treatment.push_back(inst.cpdag.label(a));
  rec.outcome = inst.cpdag.label(inst.outcome);
  rec.pair_draws = inst.pair_draws;
  rec.dag_redraws = inst.dag_redraws;

  const auto est = estimate_total_effect(data, inst.cpdag, inst.treatment, inst.outcome);
  rec.sq_err_g = (est.tau - truth).squaredNorm();

  if (inst.treatment.size() == 1 && inst.cpdag.neighbors(inst.treatment.front()).empty()) {
    const Vertex a = inst.treatment.front();
    const VertexSet& z = inst.cpdag.parents(a);
    const auto adj = adjustment_estimate(data, inst.treatment, inst.outcome, z);
    rec.sq_err_adj = (adj.tau - truth).squaredNorm();

    const Eigen::MatrixXd sigma = implied_covariance(inst.sem);
    const auto plan = build_plan(inst.cpdag, inst.treatment, inst.outcome);
    const auto model = g_regression(sigma, plan.buckets);
    const double efficient = delta_method_acov(model, plan, sigma).acov(0, 0);
    const double baseline = adjustment_from_covariance(sigma, config.n, inst.treatment, inst.outcome, z).acov(0, 0);
    if (efficient > 0.0) rec.avar_ratio = baseline / efficient;
  }
  return rec;
}

SummaryRow summarise(const std::string& estimator, const std::vector<double>& ratios) {
  SummaryRow row;
  row.estimator = estimator;
  row.count = static_cast<int>(ratios.size());
  if (ratios.empty()) {
    row.geometric_mean = row.median = std::nan("");
    return row;
  }
  double log_sum = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw Error("summary for '" + estimator + "': relative squared error " + format_double(r) +
                  " is not a positive finite number");
    }
    log_sum += std::log(r);
  }
  row.geometric_mean = std::exp(log_sum / static_cast<double>(ratios.size()));
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  row.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return row;
}

SimReport run_simulation(const SimConfig& config) {
  if (config.reps < 1) throw InputError("simulation needs at least one replication");
  if (config.n <= config.nodes) throw InputError("sample size must exceed the vertex count");
  SimReport report;
  report.config = config;
  report.records.resize(static_cast<std::size_t>(config.reps));
  parallel_for(report.records.size(), config.threads, [&](std::size_t i) {
    report.records[i] = run_replication(config, static_cast<int>(i));
  });

  std::vector<double> self, adj;
  for (const auto& r : report.records) {
    report.dag_redraws += r.dag_redraws;
    if (!(r.sq_err_g > 0.0)) {
      throw Error("replication " + std::to_string(r.index) + " (seed " + std::to_string(r.seed) +
                  "): G-regression squared error is zero, relative errors undefined");
    }
    self.push_back(r.sq_err_g / r.sq_err_g);
    if (r.sq_err_adj) adj.push_back(*r.sq_err_adj / r.sq_err_g);
  }
  report.summary.push_back(summarise("g_regression", self));
  report.summary.push_back(summarise("adjustment", adj));
  return report;
}

void write_report_csv(std::ostream& out, const SimReport& report) {
  out << "# causal-effects simreport v1\n";
  out << "index,seed,nodes,degree,treat_size,n,family,treatment,outcome,identified,pair_draws,dag_redraws,"
         "sq_err_g_regression,sq_err_adjustment,adj.O,IDA.M,IDA.R,rel_adjustment,avar_ratio\n";
  for (const auto& r : report.records) {
    std::string treat;
    for (std::size_t i = 0; i < r.treatment.size(); ++i) treat += (i ? ";" : "") + r.treatment[i];
    out << r.index << ',' << r.seed << ',' << r.nodes << ',' << format_double(r.degree) << ',' << r.treat_size
        << ',' << r.n << ',' << r.family << ',' << treat << ',' << r.outcome << ",1," << r.pair_draws << ','
        << r.dag_redraws << ',' << format_double(r.sq_err_g) << ',';
    if (r.sq_err_adj) out << format_double(*r.sq_err_adj);
    out << ",,,,";
    if (r.sq_err_adj) out << format_double(*r.sq_err_adj / r.sq_err_g);
    out << ',';
    if (r.avar_ratio) out << format_double(*r.avar_ratio);
    out << '\n';
  }
}

nlohmann::json report_summary_json(const SimReport& report) {
  const auto& c = report.config;
  nlohmann::json j;
  j["format"] = "causal-effects simreport v1";
  j["config"] = {{"nodes", c.nodes}, {"treat_size", c.treat_size}, {"n", c.n},
                 {"reps", c.reps},   {"seed", c.seed},             {"rescale", c.rescale},
                 {"degrees", c.degrees}};
  if (c.family) j["config"]["family"] = to_string(*c.family);
  j["dag_redraws"] = report.dag_redraws;
  auto rows = nlohmann::json::array();
  for (const auto& r : report.summary) {
    nlohmann::json row{{"estimator", r.estimator}, {"count", r.count}};
    if (r.count > 0) {
      row["geometric_mean"] = r.geometric_mean;
      row["median"] = r.median;
    } else {
      row["geometric_mean"] = nullptr;
      row["median"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  j["summary"] = std::move(rows);
  return j;
}

std::string format_summary_table(const SimReport& report) {
  std::ostringstream out;
  const auto& c = report.config;
  out << "|V|=" << c.nodes << " |A|=" << c.treat_size << " n=" << c.n << " reps=" << c.reps << '\n';
  char buf[128];
  for (const auto& r : report.summary) {
    if (r.count == 0) {
      std::snprintf(buf, sizeof buf, "%-14s  -  (n/a)   [0 reps]\n", r.estimator.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%-14s %6.3g (%.3g)   [%d reps]\n", r.estimator.c_str(), r.geometric_mean,
                    r.median, r.count);
    }
    out << buf;
  }
  return out.str();
}

}  // namespace causal
