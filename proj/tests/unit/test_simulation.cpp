#include <sstream>

#include "doctest.h"

#include "causal/errors.hpp"
#include "causal/graph/paths.hpp"
#include "causal/identification.hpp"
#include "causal/sim/simulation.hpp"

using namespace causal;

TEST_CASE("instances are identified and replayable") {
  SimConfig cfg;
  cfg.nodes = 10;
  cfg.treat_size = 2;
  for (int i = 0; i < 20; ++i) {
    const auto seed = replication_seed(cfg.seed, i);
    const auto inst = draw_instance(cfg, seed);
    CHECK(inst.treatment.size() == 2);
    CHECK(is_identified(inst.cpdag, inst.treatment, inst.outcome));
    CHECK(contains(possible_descendants(inst.cpdag, inst.treatment), inst.outcome));
    const auto again = draw_instance(cfg, seed);
    CHECK(again.sem.gamma == inst.sem.gamma);
    CHECK(again.treatment == inst.treatment);
  }
}

TEST_CASE("small simulation report") {
  SimConfig cfg;
  cfg.nodes = 8;
  cfg.n = 200;
  cfg.reps = 12;
  cfg.seed = 99;
  const auto report = run_simulation(cfg);
  REQUIRE(report.records.size() == 12);
  REQUIRE(report.summary.size() == 2);
  CHECK(report.summary[0].estimator == "g_regression");
  CHECK(report.summary[0].geometric_mean == 1.0);
  CHECK(report.summary[0].median == 1.0);
  CHECK(report.summary[0].count == 12);
  for (std::size_t i = 0; i < report.records.size(); ++i) CHECK(report.records[i].index == static_cast<int>(i));

  std::ostringstream a, b;
  write_report_csv(a, report);
  cfg.threads = 3;
  write_report_csv(b, run_simulation(cfg));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("# causal-effects simreport v1\n", 0) == 0);
  const auto j = report_summary_json(report);
  CHECK(j["summary"][0]["geometric_mean"] == 1.0);
}

TEST_CASE("summary statistics") {
  auto row = summarise("x", {1.0, 4.0, 16.0});
  CHECK(row.geometric_mean == doctest::Approx(4.0));
  CHECK(row.median == 4.0);
  CHECK(summarise("x", {1.0, 3.0}).median == 2.0);
  CHECK(summarise("x", {}).count == 0);
  CHECK_THROWS_AS(summarise("x", {1.0, 0.0}), Error);
}

TEST_CASE("simulation rejects bad configurations") {
  SimConfig cfg;
  cfg.nodes = 5;
  cfg.treat_size = 5;
  CHECK_THROWS_AS(draw_instance(cfg, 1), InputError);
  cfg.treat_size = 1;
  cfg.n = 5;
  CHECK_THROWS_AS(run_simulation(cfg), InputError);
  // three vertices: every degree clamps to a complete DAG, never identified
  SimConfig tiny;
  tiny.nodes = 3;
  CHECK_THROWS_AS(draw_instance(tiny, 1), InputError);
}
