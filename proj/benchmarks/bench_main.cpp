#include <benchmark/benchmark.h>

#include "causal/estimator/effect.hpp"
#include "causal/graph/buckets.hpp"
#include "causal/graph/meek.hpp"
#include "causal/graph/paths.hpp"
#include "causal/identification.hpp"
#include "causal/sim/sem.hpp"

using namespace causal;

namespace {

// CPDAG with a fraction of its undirected edges fixed from the DAG.
struct Fixture {
  Pdag dag;
  Pdag cpdag;
  std::vector<DirectedEdge> knowledge;
};

Fixture make_fixture(int p, std::uint64_t seed) {
  CounterRng rng(seed);
  Fixture f{random_dag(p, 3.0, rng), {}, {}};
  f.cpdag = cpdag_from_dag(f.dag);
  for (auto [i, j] : f.cpdag.undirected_edges()) {
    if (rng.bernoulli(0.3)) f.knowledge.emplace_back(f.dag.has_directed(i, j) ? DirectedEdge{i, j} : DirectedEdge{j, i});
  }
  return f;
}

void BM_CpdagFromDag(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(cpdag_from_dag(f.dag));
}
BENCHMARK(BM_CpdagFromDag)->Arg(20)->Arg(50)->Arg(100);

void BM_ConstructMpdag(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(construct_mpdag(f.cpdag, f.knowledge));
}
BENCHMARK(BM_ConstructMpdag)->Arg(20)->Arg(50)->Arg(100);

void BM_Identification(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)), 3);
  const int p = f.cpdag.size();
  for (auto _ : state) {
    for (Vertex a = 0; a < p; a += 7) benchmark::DoNotOptimize(is_identified(f.cpdag, {a}, (a + p / 2) % p));
  }
}
BENCHMARK(BM_Identification)->Arg(20)->Arg(50);

void BM_PossibleDescendants(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(possible_descendants(f.cpdag, {0}));
}
BENCHMARK(BM_PossibleDescendants)->Arg(20)->Arg(100);

// Full estimate from a sample: covariance, G-regression, effect and delta method.
void BM_Estimate(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  CounterRng rng(5);
  const Pdag dag = random_dag(p, 3.0, rng);
  SemOptions opts;
  opts.rescale = true;
  const auto sem = random_sem(dag, rng, opts);
  const Eigen::MatrixXd x = sample(sem, state.range(1), rng);
  // topological first and last vertex keeps the pair identified in the DAG
  const auto order = *topological_order(dag);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_total_effect(x, dag, {order.front()}, order.back(), {}));
  }
}
BENCHMARK(BM_Estimate)->Args({20, 1000})->Args({50, 1000})->Args({20, 10000});

}  // namespace

BENCHMARK_MAIN();
