#include <cmath>

#include "doctest.h"

#include "builders.hpp"
#include "causal/errors.hpp"
#include "causal/sim/sem.hpp"

using namespace causal;

TEST_CASE("counter rng is reproducible and streams differ") {
  CounterRng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CounterRng s1 = CounterRng(5).substream(1), s2 = CounterRng(5).substream(2);
  CHECK(s1.next_u64() != s2.next_u64());
  CounterRng u(9);
  double lo = 1, hi = 0, sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  for (int i = 0; i < 1000; ++i) CHECK(u.below(7) < 7);
}

TEST_CASE("random dag edge density") {
  CounterRng rng(71);
  auto two = random_dag(2, 1.0, rng);
  CHECK(two.num_directed() == 1);
  double total = 0, total_sq = 0;
  const int draws = 1000;
  for (int i = 0; i < draws; ++i) {
    auto g = random_dag(20, 3.0, rng);
    CHECK_FALSE(has_directed_cycle(g));
    CHECK(g.num_undirected() == 0);
    const double deg = 2.0 * g.num_directed() / 20.0;
    total += deg;
    total_sq += deg * deg;
  }
  const double mean = total / draws;
  const double se = std::sqrt((total_sq / draws - mean * mean) / draws);
  CHECK(std::abs(mean - 3.0) < 3 * se);
  CHECK_THROWS_AS(random_dag(1, 0.5, rng), InputError);
}

TEST_CASE("random sem coefficients and errors") {
  CounterRng rng(72);
  for (int rep = 0; rep < 50; ++rep) {
    auto dag = random_dag(12, 3.0, rng);
    auto sem = random_sem(dag, rng);
    CHECK_NOTHROW(validate_sem(sem));
    for (auto [i, j] : dag.directed_edges()) {
      CHECK(std::abs(sem.gamma(i, j)) >= 0.1);
      CHECK(std::abs(sem.gamma(i, j)) <= 2.0);
    }
    const auto fam = sem.errors.front().family;
    for (const auto& e : sem.errors) {
      CHECK(e.family == fam);
      CHECK(e.variance() > 0.0);
    }
    const Eigen::MatrixXd s = implied_covariance(sem);
    CHECK(Eigen::LLT<Eigen::MatrixXd>(s).info() == Eigen::Success);
  }
  SemOptions mixed;
  mixed.per_vertex_family = true;
  auto sem = random_sem(random_dag(40, 2.0, rng), rng, mixed);
  bool differs = false;
  for (const auto& e : sem.errors) differs = differs || e.family != sem.errors.front().family;
  CHECK(differs);
}

TEST_CASE("error families have the stated variance") {
  CounterRng rng(73);
  for (ErrorFamily f : kAllErrorFamilies) {
    const auto spec = ErrorSpec::random(f, rng);
    const int n = 200000;
    double s1 = 0, s2 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
      const double x = spec.draw(rng);
      s1 += x;
      s2 += x * x;
      s4 += x * x * x * x;
    }
    const double var = s2 / n;
    CAPTURE(to_string(f));
    CHECK(std::abs(s1 / n) < 5 * std::sqrt(spec.variance() / n));
    CHECK(var == doctest::Approx(spec.variance()).epsilon(0.03));
    const double kurt = (s4 / n) / (var * var);
    if (f == ErrorFamily::t5) CHECK(kurt > 3.0);
    if (f == ErrorFamily::uniform) CHECK(kurt == doctest::Approx(1.8).epsilon(0.02));
  }
}

TEST_CASE("rescaled chain keeps variances in a narrow band") {
  CounterRng rng(74);
  Pdag chain = Pdag::with_size(100);
  for (int i = 0; i + 1 < 100; ++i) chain.add_directed(i, i + 1);
  for (int rep = 0; rep < 20; ++rep) {
    auto sem = random_sem(chain, rng, {.rescale = true});
    const Eigen::VectorXd v = implied_covariance(sem).diagonal();
    CHECK(v.maxCoeff() / v.minCoeff() <= 20.0);
    // a vertex whose own error variance nearly fills the target keeps 5% of it for its parents
    CHECK(v.maxCoeff() <= 6.0 * 1.05 + 1e-9);
  }
  // without rescaling the variance of a long chain typically explodes
  auto raw = random_sem(chain, rng, {.family = ErrorFamily::gaussian});
  const Eigen::VectorXd v = implied_covariance(raw).diagonal();
  CHECK(v.maxCoeff() / v.minCoeff() > 20.0);
}

TEST_CASE("sampling") {
  CounterRng rng(75);
  auto dag = random_dag(6, 2.5, rng);
  auto sem = random_sem(dag, rng, {.family = ErrorFamily::logistic});
  SUBCASE("deterministic for a fixed seed") {
    CounterRng r1(3), r2(3);
    CHECK(sample(sem, 50, r1) == sample(sem, 50, r2));
  }
  SUBCASE("zero coefficients give raw errors") {
    auto zero = sem;
    zero.gamma.setZero();
    CounterRng r1(4), r2(4);
    const Eigen::MatrixXd x = sample(zero, 20, r1);
    const Eigen::MatrixXd y = sample(sem, 20, r2);
    // the first vertex in topological order has no parents in either model
    const Vertex first = topological_order(dag)->front();
    CHECK(x.col(first) == y.col(first));
    CHECK(x.allFinite());
  }
  SUBCASE("moments converge to the implied covariance") {
    const long n = 400000;
    const Eigen::MatrixXd x = sample(sem, n, rng);
    const Eigen::MatrixXd s = (x.transpose() * x) / double(n);
    const Eigen::MatrixXd sigma = implied_covariance(sem);
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(x.col(i).mean()) < 5 * std::sqrt(sigma(i, i) / n));
      for (int j = 0; j < 6; ++j) {
        CHECK(std::abs(s(i, j) - sigma(i, j)) <= 0.05 * std::sqrt(sigma(i, i) * sigma(j, j)));
      }
    }
  }
}

TEST_CASE("true effect oracles") {
  auto chain = build::graph({"a", "m", "y"}, "a->m m->y");
  LinearSem sem{chain, Eigen::MatrixXd::Zero(3, 3), std::vector<ErrorSpec>(3)};
  sem.gamma(0, 1) = 2;
  sem.gamma(1, 2) = 3;
  CHECK(true_effect_pathsum(sem, {0}, 2)(0) == 6.0);
  CHECK(true_effect_blockform(sem, {0}, 2)(0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(true_effect_pathsum(sem, {2}, 0)(0) == 0.0);

  // a1 -> a2 -> y: the path through a2 is cut by the intervention on a2
  auto joint = build::graph({"a1", "a2", "y"}, "a1->a2 a2->y");
  LinearSem js{joint, Eigen::MatrixXd::Zero(3, 3), std::vector<ErrorSpec>(3)};
  js.gamma(0, 1) = 1;
  js.gamma(1, 2) = 1;
  CHECK(true_effect_pathsum(js, {0, 1}, 2) == Eigen::Vector2d(0, 1));
  CHECK(true_effect_blockform(js, {0, 1}, 2).isApprox(Eigen::Vector2d(0, 1)));

  auto parents = build::graph({"p1", "p2", "y"}, "p1->y p2->y");
  LinearSem ps{parents, Eigen::MatrixXd::Zero(3, 3), std::vector<ErrorSpec>(3)};
  ps.gamma(0, 2) = 0.3;
  ps.gamma(1, 2) = -1.1;
  CHECK(true_effect_blockform(ps, {0, 1}, 2).isApprox(Eigen::Vector2d(0.3, -1.1)));
  CHECK_THROWS_AS(true_effect_pathsum(ps, {2}, 2), InputError);
}

TEST_CASE("true effect oracles agree on random SEMs") {
  CounterRng rng(76);
  for (int rep = 0; rep < 500; ++rep) {
    const int p = 3 + static_cast<int>(rng.below(10));
    auto sem = random_sem(random_dag(p, rng.uniform(1.0, std::min(4.0, p - 1.0)), rng), rng);
    const int m = 1 + static_cast<int>(rng.below(3));
    VertexSet a;
    while (static_cast<int>(a.size()) < std::min(m, p - 1)) a = set_union(a, {static_cast<Vertex>(rng.below(p))});
    Vertex y = static_cast<Vertex>(rng.below(p));
    while (contains(a, y)) y = static_cast<Vertex>(rng.below(p));
    const auto t1 = true_effect_pathsum(sem, a, y);
    const auto t2 = true_effect_blockform(sem, a, y);
    CHECK((t1 - t2).lpNorm<Eigen::Infinity>() <= 1e-10 * std::max(1.0, t1.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("sem json round trip") {
  CounterRng rng(77);
  auto sem = random_sem(random_dag(7, 3.0, rng), rng, {.per_vertex_family = true});
  const auto back = sem_from_json(nlohmann::json::parse(sem_to_json(sem).dump()));
  CHECK(back.dag == sem.dag);
  CHECK(back.gamma == sem.gamma);
  for (int v = 0; v < 7; ++v) {
    CHECK(back.errors[static_cast<std::size_t>(v)].family == sem.errors[static_cast<std::size_t>(v)].family);
    CHECK(back.errors[static_cast<std::size_t>(v)].param == sem.errors[static_cast<std::size_t>(v)].param);
  }
  auto j = sem_to_json(sem);
  j["gamma"].push_back({"0", "0", 1.0});
  CHECK_THROWS_AS(sem_from_json(j), Error);
  CHECK_THROWS_AS(error_family_from_string("cauchy"), InputError);
}
