// Command-line front end. Exit codes: 0 ok / identified, 1 not identified,
// 2 invalid graph, 3 input error, 4 numeric failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "causal/data_io.hpp"
#include "causal/errors.hpp"
#include "causal/estimator/effect.hpp"
#include "causal/graph/buckets.hpp"
#include "causal/graph/graph_io.hpp"
#include "causal/graph/meek.hpp"
#include "causal/identification.hpp"
#include "causal/sim/simulation.hpp"

namespace {

using namespace causal;

enum Exit { kOk = 0, kNotIdentified = 1, kInvalidGraph = 2, kInputError = 3, kNumericFailure = 4 };

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

VertexSet resolve(const Pdag& g, const std::vector<std::string>& labels) {
  if (labels.empty()) throw InputError("empty treatment list");
  VertexSet out;
  for (const auto& l : labels) out.push_back(g.index_of(l));
  return make_vertex_set(std::move(out));
}

nlohmann::json labels_json(const Pdag& g, const VertexSet& s) {
  auto out = nlohmann::json::array();
  for (Vertex v : s) out.push_back(g.label(v));
  return out;
}

struct GraphArgs {
  std::string graph;
  bool strict = false;
  bool with_parents = false;
};

int cmd_graph(const std::string& sub, const GraphArgs& args) {
  const Pdag g = load_graph(args.graph, args.strict);
  if (sub == "validate") {
    const auto violations = find_rule_violations(g);
    nlohmann::json j{{"valid", violations.empty()}, {"violations", nlohmann::json::array()}};
    for (const auto& v : violations) j["violations"].push_back(describe(v, g));
    std::cout << j.dump() << '\n';
    return violations.empty() ? kOk : kInvalidGraph;
  }
  if (sub == "buckets") {
    const auto bd = bucket_decomposition(g);
    auto out = nlohmann::json::array();
    for (int k = 0; k < bd.size(); ++k) {
      const auto& b = bd.buckets[static_cast<std::size_t>(k)];
      if (args.with_parents) {
        out.push_back({{"bucket", labels_json(g, b)},
                       {"parents", labels_json(g, bd.external_parents[static_cast<std::size_t>(k)])}});
      } else {
        out.push_back(labels_json(g, b));
      }
    }
    std::cout << out.dump() << '\n';
    return kOk;
  }
  if (sub == "saturate") {
    validate_mpdag(g);
    std::cout << graph_to_json(saturated_mpdag(g)).dump() << '\n';
    return kOk;
  }
  // cpdag
  std::cout << graph_to_json(cpdag_from_dag(g)).dump() << '\n';
  return kOk;
}

struct QueryArgs {
  std::string graph;
  std::string treat;
  std::string outcome;
};

int cmd_id(const QueryArgs& args) {
  const Pdag g = load_graph(args.graph, true);
  const VertexSet a = resolve(g, split_list(args.treat));
  const Vertex y = g.index_of(args.outcome);
  const bool ok = is_identified(g, a, y);
  std::cout << nlohmann::json{{"identified", ok}}.dump() << '\n';
  return ok ? kOk : kNotIdentified;
}

struct EstimateArgs {
  QueryArgs query;
  std::string data;
  int bootstrap = 0;
  double level = 0.95;
  std::uint64_t seed = 0;
  bool center = false;
  int threads = 0;
};

int cmd_estimate(const EstimateArgs& args) {
  const Pdag g = load_graph(args.query.graph, true);
  const VertexSet a = resolve(g, split_list(args.query.treat));
  const Vertex y = g.index_of(args.query.outcome);
  const Eigen::MatrixXd x = align_columns(load_csv(args.data), g);
  EstimateOptions opt;
  opt.center = args.center;
  opt.bootstrap = args.bootstrap;
  opt.level = args.level;
  opt.seed = args.seed;
  opt.threads = args.threads;
  if (opt.bootstrap != 0 && opt.bootstrap < 100) throw InputError("--bootstrap needs at least 100 replicates");
  const auto est = estimate_total_effect(x, g, a, y, opt);
  std::cout << estimate_to_json(est, g, args.seed).dump() << '\n';
  return kOk;
}

struct SimulateArgs {
  SimConfig config;
  std::string estimated_graph = "none";
  std::string family;
  std::string out;
  std::string summary;
};

int cmd_simulate(SimulateArgs args) {
  if (args.estimated_graph != "none") {
    std::cerr << "error: --estimated-graph " << args.estimated_graph
              << " is reserved; structure learning is not part of this tool\n";
    return kInputError;
  }
  if (!args.family.empty()) args.config.family = error_family_from_string(args.family);
  const auto report = run_simulation(args.config);
  if (args.out.empty()) {
    write_report_csv(std::cout, report);
  } else {
    std::ofstream f(args.out);
    if (!f) throw InputError("cannot write '" + args.out + "'");
    write_report_csv(f, report);
  }
  std::string summary_path = args.summary;
  if (summary_path.empty() && !args.out.empty()) summary_path = args.out + ".summary.json";
  if (!summary_path.empty()) {
    std::ofstream f(summary_path);
    if (!f) throw InputError("cannot write '" + summary_path + "'");
    f << report_summary_json(report).dump(2) << '\n';
  }
  std::cerr << format_summary_table(report);
  return kOk;
}

struct ReplayArgs {
  SimConfig config;
  std::uint64_t rep_seed = 0;
  std::string family;
  std::string data_out;
};

int cmd_replay(ReplayArgs args) {
  if (!args.family.empty()) args.config.family = error_family_from_string(args.family);
  const auto inst = draw_instance(args.config, args.rep_seed);
  nlohmann::json j{{"seed", inst.seed},
                   {"degree", inst.degree},
                   {"sem", sem_to_json(inst.sem)},
                   {"cpdag", graph_to_json(inst.cpdag)},
                   {"treatment", labels_json(inst.cpdag, inst.treatment)},
                   {"outcome", inst.cpdag.label(inst.outcome)}};
  std::cout << j.dump(2) << '\n';
  if (!args.data_out.empty()) {
    CounterRng rng = CounterRng(args.rep_seed).substream(1);
    std::ofstream f(args.data_out);
    if (!f) throw InputError("cannot write '" + args.data_out + "'");
    write_csv(f, DataTable{inst.sem.dag.labels(), sample(inst.sem, args.config.n, rng)});
  }
  return kOk;
}

void add_sim_options(CLI::App* app, SimConfig& c, std::string& family) {
  app->add_option("--nodes", c.nodes, "Number of vertices")->check(CLI::Range(2, 100000));
  app->add_option("--treat-size", c.treat_size, "Number of treatment vertices")->check(CLI::PositiveNumber);
  app->add_option("--n", c.n, "Sample size")->check(CLI::PositiveNumber);
  app->add_flag("--rescale", c.rescale, "Shrink coefficients so variances stay bounded");
  app->add_flag("--per-vertex-family", c.per_vertex_family, "Draw the error family per vertex");
  app->add_option("--family", family, "Fix the error family")
      ->check(CLI::IsMember({"gaussian", "t5", "logistic", "uniform"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identification and efficient estimation of total causal effects from MPDAGs"};
  app.require_subcommand(1);

  GraphArgs graph_args;
  auto* graph = app.add_subcommand("graph", "Graph validation and queries");
  graph->require_subcommand(1);
  std::string graph_sub;
  for (const char* name : {"validate", "buckets", "saturate", "cpdag"}) {
    auto* sub = graph->add_subcommand(name);
    sub->add_option("--graph", graph_args.graph, "Graph JSON file")->required();
    sub->add_flag("--strict", graph_args.strict, "Require closure under the orientation rules when loading");
    if (std::string(name) == "buckets") {
      sub->add_flag("--with-parents", graph_args.with_parents, "Include each bucket's external parents");
    }
    sub->callback([&graph_sub, name] { graph_sub = name; });
  }

  QueryArgs id_args;
  auto* id = app.add_subcommand("id", "Is the total effect identified?");
  id->add_option("--graph", id_args.graph, "MPDAG JSON file")->required();
  id->add_option("--treat", id_args.treat, "Comma-separated treatment labels")->required();
  id->add_option("--outcome", id_args.outcome, "Outcome label")->required();

  EstimateArgs est_args;
  auto* est = app.add_subcommand("estimate", "G-regression estimate from a CSV file");
  est->add_option("--graph", est_args.query.graph, "MPDAG JSON file")->required();
  est->add_option("--data", est_args.data, "CSV with a header of vertex labels")->required();
  est->add_option("--treat", est_args.query.treat, "Comma-separated treatment labels")->required();
  est->add_option("--outcome", est_args.query.outcome, "Outcome label")->required();
  est->add_option("--bootstrap", est_args.bootstrap, "Bootstrap replicates (0 = none, otherwise >= 100)");
  est->add_option("--level", est_args.level, "Interval level")->check(CLI::Range(0.0, 1.0));
  est->add_option("--seed", est_args.seed, "Bootstrap seed");
  est->add_flag("--center", est_args.center, "Subtract column means first");
  est->add_option("--threads", est_args.threads, "Worker threads (0 = all cores)");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo comparison against parent adjustment");
  add_sim_options(sim, sim_args.config, sim_args.family);
  sim->add_option("--reps", sim_args.config.reps, "Replications")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_args.config.seed, "Master seed");
  sim->add_option("--estimated-graph", sim_args.estimated_graph, "none (true is reserved)")
      ->check(CLI::IsMember({"none", "true"}));
  sim->add_option("--out", sim_args.out, "Per-replication CSV (default: stdout)");
  sim->add_option("--summary", sim_args.summary, "Summary JSON (default: <out>.summary.json)");
  sim->add_option("--threads", sim_args.config.threads, "Worker threads (0 = all cores)");

  ReplayArgs replay_args;
  auto* replay = app.add_subcommand("replay", "Rebuild one simulated instance from its replication seed");
  add_sim_options(replay, replay_args.config, replay_args.family);
  replay->add_option("--rep-seed", replay_args.rep_seed, "Seed column of the simulation report")->required();
  replay->add_option("--data-out", replay_args.data_out, "Also write the sample as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*graph) return cmd_graph(graph_sub, graph_args);
    if (*id) return cmd_id(id_args);
    if (*est) return cmd_estimate(est_args);
    if (*sim) return cmd_simulate(sim_args);
    if (*replay) return cmd_replay(replay_args);
  } catch (const NotIdentified& e) {
    std::cerr << "not identified: " << e.what() << '\n';
    return kNotIdentified;
  } catch (const GraphError& e) {
    std::cerr << "invalid graph: " << e.what() << '\n';
    return kInvalidGraph;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const IllConditioned& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const DegenerateSample& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kInputError;
}
