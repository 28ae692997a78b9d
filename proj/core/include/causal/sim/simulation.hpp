#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "causal/graph/pdag.hpp"
#include "causal/sim/sem.hpp"

namespace causal {

struct SimConfig {
  int nodes = 20;
  int treat_size = 1;
  long n = 1000;
  int reps = 100;
  std::uint64_t seed = 0;
  bool rescale = false;
  bool per_vertex_family = false;
  std::optional<ErrorFamily> family;
  /// Average degree drawn uniformly from this list per replication.
  std::vector<double> degrees{2, 3, 4, 5};
  /// Treatment/outcome draws before the DAG itself is redrawn.
  int max_pair_draws = 200;
  /// DAG redraws before giving up; tiny dense graphs may never yield an
  /// identified pair (a complete DAG has a fully undirected CPDAG).
  int max_dag_redraws = 1000;
  int threads = 0;
};

/// One simulated problem: ground-truth SEM, the CPDAG handed to the
/// estimators and an identified (A, Y) with Y a possible descendant of A.
struct ReplicationInstance {
  std::uint64_t seed = 0;
  double degree = 0.0;
  LinearSem sem;
  Pdag cpdag;
  VertexSet treatment;
  Vertex outcome = -1;
  int pair_draws = 0;
  /// Times the pair budget ran out and the DAG was redrawn.
  int dag_redraws = 0;
};

struct ReplicationRecord {
  int index = 0;
  std::uint64_t seed = 0;
  int nodes = 0;
  double degree = 0.0;
  int treat_size = 0;
  long n = 0;
  std::string family;
  std::vector<std::string> treatment;
  std::string outcome;
  int pair_draws = 0;
  int dag_redraws = 0;
  double sq_err_g = 0.0;
  /// Absent unless |A| = 1 and the treatment's parents are determined by the CPDAG.
  std::optional<double> sq_err_adj;
  /// Population asymptotic variance of the baseline over the efficient one.
  std::optional<double> avar_ratio;
};

struct SummaryRow {
  std::string estimator;
  int count = 0;
  double geometric_mean = 0.0;
  double median = 0.0;
};

struct SimReport {
  SimConfig config;
  std::vector<ReplicationRecord> records;
  std::vector<SummaryRow> summary;
  int dag_redraws = 0;
};

/// Seed of replication `index`; also what replay needs.
std::uint64_t replication_seed(std::uint64_t master, int index);

/// Draws the problem for a replication seed. Pure function of its inputs.
ReplicationInstance draw_instance(const SimConfig& config, std::uint64_t seed);

ReplicationRecord run_replication(const SimConfig& config, int index);

/// Runs all replications (in parallel) and summarises them.
SimReport run_simulation(const SimConfig& config);

/// Geometric mean and median of the positive ratios; throws Error on a
/// non-positive entry.
SummaryRow summarise(const std::string& estimator, const std::vector<double>& ratios);

void write_report_csv(std::ostream& out, const SimReport& report);
nlohmann::json report_summary_json(const SimReport& report);
/// Table layout: one line per estimator, "geo (median)".
std::string format_summary_table(const SimReport& report);

}  // namespace causal
