// Greedy activation-order analysis: enumeration against hand-worked
// graphs, exact path probabilities, the sampling algorithm against the
// enumerated law, regime classification, and the mean-time predictors.

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "radyn/activation_order.hpp"
#include "radyn/oracles.hpp"

using namespace radyn;

namespace {

BipartiteGraph graph_from(int m, int n, std::vector<std::pair<int, int>> edges) {
  BipartiteGraph g(m, n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

uint64_t lcm64(uint64_t a, uint64_t b) {
  uint64_t x = a, y = b;
  while (y) {
    const uint64_t t = x % y;
    x = y;
    y = t;
  }
  return a / x * b;
}

// Exact rational check that the enumerated path probabilities sum to 1.
void check_total_probability(const PathEnsemble& ensemble) {
  uint64_t den = 1;
  for (const ActivationPath& p : ensemble.paths) den = lcm64(den, p.prob_den);
  uint64_t total = 0;
  for (const ActivationPath& p : ensemble.paths)
    total += p.prob_num * (den / p.prob_den);
  CHECK(total == den);
}

}  // namespace

TEST_CASE("complete graphs peel one V node at full degree") {
  const PathEnsemble e = enumerate_paths(BipartiteGraph::complete(2, 2));
  REQUIRE(e.paths.size() == 2);
  CHECK(e.d_star == 2);
  for (const ActivationPath& p : e.paths) {
    CHECK(p.d_star == 2);
    CHECK(p.prob_num == 1);
    CHECK(p.prob_den == 2);
    REQUIRE(p.steps.size() == 2);
    CHECK(p.steps[0].residual_degree == 2);
    CHECK(p.steps[0].tie_count == 2);
    CHECK(p.steps[0].removed_u == std::vector<int>{0, 1});
    CHECK(p.steps[1].residual_degree == 0);
    CHECK(p.steps[1].tie_count == 1);
    CHECK(p.steps[1].removed_u.empty());
  }
  CHECK(e.paths[0].order() == std::vector<int>{0, 1});
  CHECK(e.paths[1].order() == std::vector<int>{1, 0});
  check_total_probability(e);

  const PathEnsemble tall = enumerate_paths(BipartiteGraph::complete(3, 2));
  CHECK(tall.d_star == 3);
  CHECK(tall.paths.size() == 2);
  const PathEnsemble wide = enumerate_paths(BipartiteGraph::complete(2, 3));
  CHECK(wide.d_star == 2);
  CHECK(wide.paths.size() == 6);  // 3! tie-break orders
  check_total_probability(wide);
}

TEST_CASE("shared hub collapses after the first pick") {
  // u0 carries both v0 and v1; u1 is isolated. Either first pick removes
  // u0 and frees the other V node, so d* = 1 with two equal paths.
  const BipartiteGraph g = graph_from(2, 2, {{0, 0}, {0, 1}});
  const PathEnsemble e = enumerate_paths(g);
  CHECK(e.d_star == 1);
  CHECK(e.paths.size() == 2);
  for (const ActivationPath& p : e.paths) {
    CHECK(p.steps[0].residual_degree == 1);
    CHECK(p.steps[0].tie_count == 2);
    CHECK(p.steps[1].residual_degree == 0);
  }
  check_total_probability(e);
}

TEST_CASE("chain graph forces a unique path") {
  // v0 ~ {u0, u1}, v1 ~ {u1}: v1 is the unique first pick, removing u1
  // leaves v0 at degree one.
  const BipartiteGraph g = graph_from(2, 2, {{0, 0}, {1, 0}, {1, 1}});
  const PathEnsemble e = enumerate_paths(g);
  REQUIRE(e.paths.size() == 1);
  const ActivationPath& p = e.paths[0];
  CHECK(e.d_star == 1);
  CHECK(p.order() == std::vector<int>{1, 0});
  CHECK(p.prob_num == 1);
  CHECK(p.prob_den == 1);
  CHECK(p.steps[0].residual_degree == 1);
  CHECK(p.steps[0].removed_u == std::vector<int>{1});
  CHECK(p.steps[1].residual_degree == 1);
  CHECK(p.steps[1].removed_u == std::vector<int>{0});
  CHECK(path_prefactor(p) == doctest::Approx(2.0));
}

TEST_CASE("isolated V nodes are picked first at degree zero") {
  const BipartiteGraph g = graph_from(2, 2, {{0, 0}, {1, 0}});  // v1 isolated
  const PathEnsemble e = enumerate_paths(g);
  REQUIRE(e.paths.size() == 1);
  CHECK(e.paths[0].order() == std::vector<int>{1, 0});
  CHECK(e.paths[0].steps[0].residual_degree == 0);
  CHECK(e.d_star == 2);
}

TEST_CASE("disjoint edges give two symmetric paths at degree one") {
  const BipartiteGraph g = graph_from(2, 2, {{0, 0}, {1, 1}});
  const PathEnsemble e = enumerate_paths(g);
  CHECK(e.paths.size() == 2);
  CHECK(e.d_star == 1);
  for (const ActivationPath& p : e.paths) CHECK(p.probability() == 0.5);
  check_total_probability(e);
}

TEST_CASE("steps remove exactly the residual neighborhood") {
  Rng rng(0xA11ull);
  for (int trial = 0; trial < 20; ++trial) {
    const BipartiteGraph g = BipartiteGraph::random(5, 6, 0.4, 300 + trial);
    const PathEnsemble e = enumerate_paths(g);
    check_total_probability(e);
    for (const ActivationPath& p : e.paths) {
      CHECK(p.d_star == e.d_star);
      uint64_t den = 1;
      int max_degree = 0;
      size_t removed_total = 0;
      for (const AlgorithmStep& s : p.steps) {
        CHECK(s.removed_u.size() == static_cast<size_t>(s.residual_degree));
        den *= static_cast<uint64_t>(s.tie_count);
        max_degree = std::max(max_degree, s.residual_degree);
        removed_total += s.removed_u.size();
      }
      CHECK(den == p.prob_den);
      CHECK(max_degree == p.d_star);
      CHECK(p.steps.size() == 6);
      CHECK(removed_total <= 5);
    }
    // The sampler only ever produces enumerated paths with the same d*.
    for (int run = 0; run < 20; ++run) {
      const ActivationPath sample = run_algorithm(g, rng);
      CHECK(sample.d_star == e.d_star);
      bool found = false;
      for (const ActivationPath& p : e.paths)
        if (p.order() == sample.order()) {
          found = true;
          CHECK(p.prob_den == sample.prob_den);
          break;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("greedy d* equals the exhaustive minimax elimination degree") {
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 6;
    const int n = 1 + (trial * 7) % 6;
    const BipartiteGraph g = BipartiteGraph::random(m, n, 0.45, 9000 + trial);
    CAPTURE(trial);
    CHECK(enumerate_paths(g).d_star == minimax_elimination_degree(g));
  }
}

TEST_CASE("sampled tie-breaks reproduce the enumerated law") {
  Rng rng(0xC41ull);
  const int n = 100000;

  // Uniform case: K_{2,3} has six equally likely orders.
  {
    const BipartiteGraph g = BipartiteGraph::complete(2, 3);
    const PathEnsemble e = enumerate_paths(g);
    REQUIRE(e.paths.size() == 6);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < e.paths.size(); ++i) index[e.paths[i].order()] = i;
    std::vector<int> counts(e.paths.size(), 0);
    for (int i = 0; i < n; ++i) ++counts[index.at(run_algorithm(g, rng).order())];
    double chi2 = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
      const double expected = n * e.paths[i].probability();
      chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    CHECK(chi2 < 20.5);  // df 5, far tail
  }

  // Skewed case: one first pick collapses the ties, giving probabilities
  // {1/6, 1/6, 1/3, 1/3}.
  {
    const BipartiteGraph g = graph_from(2, 3, {{0, 0}, {1, 1}, {1, 2}});
    const PathEnsemble e = enumerate_paths(g);
    REQUIRE(e.paths.size() == 4);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < e.paths.size(); ++i) index[e.paths[i].order()] = i;
    std::vector<int> counts(e.paths.size(), 0);
    for (int i = 0; i < n; ++i) ++counts[index.at(run_algorithm(g, rng).order())];
    double chi2 = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
      const double expected = n * e.paths[i].probability();
      chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    CHECK(chi2 < 16.3);  // df 3
  }
}

TEST_CASE("regime classification compares beta with 1/(d*-1)") {
  CHECK(classify_regime(2, 0.5) == Regime::Subcritical);
  CHECK(classify_regime(2, 1.0) == Regime::Critical);
  CHECK(classify_regime(2, 1.5) == Regime::Supercritical);
  CHECK(classify_regime(3, 0.5) == Regime::Critical);
  CHECK(classify_regime(3, 1.0) == Regime::Supercritical);
  CHECK(classify_regime(1, 100.0) == Regime::Subcritical);
  CHECK(classify_regime(0, 1.0) == Regime::Subcritical);
  CHECK(regime_name(Regime::Critical) == std::string("critical"));
  CHECK_THROWS_AS(classify_regime(2, 0.0), std::invalid_argument);
}

TEST_CASE("complete-graph prediction covers all three regimes") {
  QueueParams q;  // gamma_u = 1, drain 1, no arrivals: drain bound r

  const RegimePrediction sub = predict_fixed_complete(2, 0.5, q);
  CHECK(sub.regime == Regime::Subcritical);
  CHECK(sub.prefactor == doctest::Approx(0.5));
  CHECK(sub.exponent == doctest::Approx(0.5));
  CHECK_FALSE(sub.uses_drain_time);
  CHECK_FALSE(sub.order_only);
  CHECK(sub.source == "complete-fixed");
  CHECK(sub.evaluate(100.0) == doctest::Approx(5.0));

  const RegimePrediction trivial = predict_fixed_complete(1, 0.5, q);
  CHECK(trivial.exponent == 0.0);
  CHECK(trivial.prefactor == doctest::Approx(1.0));

  const RegimePrediction critical = predict_fixed_complete(2, 1.0, q);
  CHECK(critical.regime == Regime::Critical);
  CHECK(critical.prefactor == doctest::Approx(0.5));
  CHECK(critical.exponent == 1.0);
  CHECK_FALSE(critical.uses_drain_time);  // drain bound 1 exceeds 1/2

  QueueParams tight = q;
  tight.gamma_u = tight.gamma_v = 0.4;  // drain bound 0.4 r clips 0.5 r
  const RegimePrediction clipped = predict_fixed_complete(2, 1.0, tight);
  CHECK(clipped.prefactor == doctest::Approx(0.4));
  CHECK(clipped.uses_drain_time);

  QueueParams loaded = q;
  loaded.arrival_rate = 0.5;  // rho = 0.5: drain bound 2 r
  const RegimePrediction super = predict_fixed_complete(2, 2.0, loaded);
  CHECK(super.regime == Regime::Supercritical);
  CHECK(super.prefactor == doctest::Approx(2.0));
  CHECK(super.exponent == 1.0);
  CHECK(super.uses_drain_time);

  CHECK_THROWS_AS(predict_fixed_complete(0, 1.0, q), std::invalid_argument);
  QueueParams unstable = q;
  unstable.arrival_rate = 0.5;
  unstable.drain_speed = 0.5;
  CHECK_THROWS_AS(predict_fixed_complete(2, 1.0, unstable), std::domain_error);
}

TEST_CASE("path prefactor sums ties at the top degree") {
  const PathEnsemble e = enumerate_paths(BipartiteGraph::complete(2, 2));
  CHECK(path_prefactor(e.paths[0]) == doctest::Approx(0.25));  // 1/(2*2)
  ActivationPath degenerate;
  degenerate.d_star = 0;
  CHECK_THROWS_AS(path_prefactor(degenerate), std::invalid_argument);
}

TEST_CASE("arbitrary-graph prediction weights paths by probability") {
  QueueParams q;

  const PathEnsemble two = enumerate_paths(BipartiteGraph::complete(2, 2));
  const RegimePrediction sub = predict_fixed_arbitrary(two, 0.5, q);
  CHECK(sub.regime == Regime::Subcritical);
  CHECK(sub.prefactor == doctest::Approx(0.25));
  CHECK(sub.exponent == doctest::Approx(0.5));
  CHECK(sub.source == "path-sum-fixed");
  CHECK_FALSE(sub.order_only);

  const PathEnsemble one = enumerate_paths(BipartiteGraph::complete(1, 1));
  const RegimePrediction flat = predict_fixed_arbitrary(one, 0.5, q);
  CHECK(flat.exponent == 0.0);
  CHECK(flat.prefactor == doctest::Approx(1.0));
  CHECK(flat.evaluate(1e6) == doctest::Approx(1.0));

  // No edges at all: every pick is at degree zero, no nucleation scale.
  const PathEnsemble empty = enumerate_paths(BipartiteGraph(1, 1));
  const RegimePrediction degenerate = predict_fixed_arbitrary(empty, 0.5, q);
  CHECK(degenerate.source == "path-sum-degenerate");
  CHECK(degenerate.order_only);
  CHECK(degenerate.exponent == 0.0);

  // Critical with a drain bound below the path prefactor: clamped.
  QueueParams tight = q;
  tight.gamma_u = tight.gamma_v = 0.1;
  tight.arrival_rate = 0.5;  // drain bound 0.2 r, path prefactor 0.25
  const RegimePrediction clamped = predict_fixed_arbitrary(two, 1.0, tight);
  CHECK(clamped.regime == Regime::Critical);
  CHECK(clamped.prefactor == doctest::Approx(0.2));
  CHECK(clamped.uses_drain_time);

  QueueParams loaded = q;
  loaded.arrival_rate = 0.5;
  const RegimePrediction super =
      predict_fixed_arbitrary(enumerate_paths(BipartiteGraph::complete(3, 3)), 1.0,
                              loaded);
  CHECK(super.regime == Regime::Supercritical);
  CHECK(super.prefactor == doctest::Approx(2.0));
  CHECK(super.exponent == 1.0);
  CHECK(super.uses_drain_time);

  CHECK_THROWS_AS(predict_fixed_arbitrary(PathEnsemble{}, 0.5, q),
                  std::invalid_argument);
}

TEST_CASE("dynamic predictions pick the faster of flips and nucleation") {
  QueueParams q;

  const RegimePrediction fast =
      predict_dynamic(DynamicsSpec{DynamicsKind::Fast, 1.0}, 2, 0.5, q);
  CHECK(fast.exponent == doctest::Approx(-1.0));
  CHECK(fast.order_only);
  CHECK(fast.source == "dynamic-fast");

  const RegimePrediction regular =
      predict_dynamic(DynamicsSpec{DynamicsKind::Regular, 4.0}, 2, 0.5, q);
  CHECK(regular.prefactor == doctest::Approx(0.25));
  CHECK(regular.exponent == 0.0);
  CHECK(regular.order_only);
  CHECK(regular.source == "dynamic-regular");

  const RegimePrediction competitive =
      predict_dynamic(DynamicsSpec{DynamicsKind::Slow, 0.3}, 2, 0.5, q);
  CHECK(competitive.exponent == doctest::Approx(0.3));
  CHECK(competitive.order_only);
  CHECK(competitive.source == "dynamic-slow-competitive");

  // Boundary alpha = beta (d* - 1) still competes.
  const RegimePrediction boundary =
      predict_dynamic(DynamicsSpec{DynamicsKind::Slow, 0.5}, 2, 0.5, q);
  CHECK(boundary.source == "dynamic-slow-competitive");
  CHECK(boundary.exponent == doctest::Approx(0.5));

  // Too slow against a supercritical graph: exact drain bound.
  const RegimePrediction drained =
      predict_dynamic(DynamicsSpec{DynamicsKind::Slow, 2.0}, 2, 2.0, q);
  CHECK(drained.source == "dynamic-slow-static-drain");
  CHECK(drained.uses_drain_time);
  CHECK(drained.exponent == 1.0);
  CHECK(drained.prefactor == doctest::Approx(1.0));
  CHECK_FALSE(drained.order_only);

  // Too slow against a subcritical graph: static order, open constant.
  const RegimePrediction deferred =
      predict_dynamic(DynamicsSpec{DynamicsKind::Slow, 2.0}, 2, 0.5, q);
  CHECK(deferred.source == "dynamic-slow-static-order");
  CHECK(deferred.exponent == doctest::Approx(0.5));
  CHECK(deferred.order_only);

  // d* <= 1 has no nucleation scale; slow flips never compete.
  const RegimePrediction flat =
      predict_dynamic(DynamicsSpec{DynamicsKind::Slow, 0.5}, 1, 0.5, q);
  CHECK(flat.source == "dynamic-slow-static-order");
  CHECK(flat.exponent == 0.0);

  CHECK_THROWS_AS(predict_dynamic(DynamicsSpec{}, 2, 0.5, q),
                  std::invalid_argument);
}

TEST_CASE("d_hat counts degrees whose nucleation beats slow flips") {
  CHECK(d_hat(0.5, 0.8) == 2);
  CHECK(d_hat(1.0, 0.5) == 1);
  CHECK(d_hat(0.3, 1.0) == 4);
  CHECK(d_hat(0.5, 1.0) == 2);  // strict inequality at the boundary
  CHECK_THROWS_AS(d_hat(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(d_hat(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("enumeration guards against blowups") {
  CHECK_THROWS_AS(enumerate_paths(BipartiteGraph(1, 13)), std::length_error);
  CHECK_THROWS_AS(enumerate_paths(BipartiteGraph::complete(3, 3), 2),
                  std::length_error);
  CHECK_THROWS_AS(enumerate_paths(BipartiteGraph::complete(3, 3), 12, 2),
                  std::length_error);
  try {
    enumerate_paths(BipartiteGraph(1, 13));
    FAIL("expected length_error");
  } catch (const std::length_error& e) {
    CHECK(std::string(e.what()).find("run_algorithm") != std::string::npos);
  }
}
