#include "doctest.h"

#include <cmath>

#include "evocut/ls_curve.hpp"
#include "evocut/oracles.hpp"
#include "support.hpp"

using namespace evocut;

namespace {

using Points = std::vector<std::pair<double, double>>;

}  // namespace

TEST_CASE("curve of the stationary distribution is the straight line") {
  const auto c4 = make_cycle(4);
  const auto curve = build_curve(c4, stationary(c4));
  CHECK(curve.points == Points{{0, 0}, {2, 0.25}, {4, 0.5}, {6, 0.75}, {8, 1}});
  CHECK(evaluate_curve(curve, 4.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("curve of a point mass") {
  const auto c4 = make_cycle(4);
  const auto curve = build_curve(c4, Distribution::point_mass(0));
  CHECK(curve.points == Points{{0, 0}, {2, 1}, {8, 1}});
  CHECK(evaluate_curve(curve, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(evaluate_curve(curve, 0.0) == 0.0);
}

TEST_CASE("curve after one lazy step breaks ties lexicographically") {
  const auto c4 = make_cycle(4);
  const WalkOperator walk(c4);
  const auto p = walk.step(Distribution::point_mass(0));  // (1/2, 1/4, 0, 1/4)
  const auto sweep = threshold_sweep(c4, p);
  CHECK(sweep.order == std::vector<Vertex>{0, 1, 3, 2});
  const auto curve = build_curve(c4, p);
  CHECK(curve.points == Points{{0, 0}, {2, 0.5}, {4, 0.75}, {6, 1}, {8, 1}});
  CHECK(evaluate_curve(curve, 3.0) == doctest::Approx(0.625).epsilon(1e-15));
}

TEST_CASE("curve argument range errors") {
  const auto c4 = make_cycle(4);
  const auto curve = build_curve(c4, stationary(c4));
  CHECK_THROWS_AS(evaluate_curve(curve, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_curve(curve, 8.5), std::invalid_argument);
}

TEST_CASE("sweep: dumbbell(5) five-step walk from an interior vertex") {
  const auto db = make_dumbbell(5);
  const WalkOperator walk(db);
  Distribution p = Distribution::point_mass(0);
  for (int t = 0; t < 5; ++t) p = walk.step(p);
  const auto result = sweep_min_conductance(db, p, 42.0, 0.5);
  REQUIRE(result.has_value());
  // The three-interior prefix {0,1,2} (vol 12, phi exactly 0.5) undercuts the
  // clique side's volume 21; verified against exhaustive threshold-set
  // enumeration.
  CHECK(result->set == VertexSet(db, {0, 1, 2}));
  CHECK(result->volume == 12.0);
  CHECK(result->phi == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(result->threshold_index == 3);
}

TEST_CASE("sweep tie-break on the stationary distribution") {
  const auto c4 = make_cycle(4);
  const auto result = sweep_min_conductance(c4, stationary(c4), 8.0, 1.0);
  REQUIRE(result.has_value());
  CHECK(result->set == VertexSet(c4, {0}));
  CHECK(result->phi == 1.0);
  CHECK(result->threshold_index == 1);
}

TEST_CASE("sweep returns absent when the cap cannot be met") {
  const auto c4 = make_cycle(4);
  CHECK_FALSE(sweep_min_conductance(c4, stationary(c4), 8.0, 0.0).has_value());
}

TEST_CASE("threshold algorithm on dumbbell(5)") {
  const auto db = make_dumbbell(5);
  const auto result = threshold_algorithm(db, 0.1, 0.5);
  REQUIRE(result.has_value());
  CHECK(result->phi <= std::sqrt(2.0 * 0.1 / 0.5) + 1e-12);
  CHECK(result->volume <= 2.0 * std::pow(21.0, 1.5));
  CHECK(result->set == VertexSet(db, {0, 1, 2}));
  CHECK(result->volume == 12.0);
  CHECK(result->seed == 0);
  CHECK(result->step == 1);
  CHECK(result->threshold_index == 3);
  // recomputed conductance agrees with the reported one
  CHECK(conductance(db, result->set).phi == result->phi);

  // deterministic under threading
  const auto threaded = threshold_algorithm(db, 0.1, 0.5, {}, 4);
  REQUIRE(threaded.has_value());
  CHECK(threaded->set == result->set);
  CHECK(threaded->seed == result->seed);
  CHECK(threaded->step == result->step);
}

TEST_CASE("threshold algorithm finds a zero-conductance component") {
  // cap sqrt(2 phi/eps) = 0.2 rules out every positive-conductance prefix
  // (the cheapest is a within-clique triple at 1/3), leaving the component.
  const auto g = testing::two_k4s();
  const auto result = threshold_algorithm(g, 0.01, 0.5);
  REQUIRE(result.has_value());
  CHECK(result->phi == 0.0);
  CHECK(result->volume == 12.0);
}

TEST_CASE("threshold algorithm with a vacuous cap returns the smallest set") {
  const auto c4 = make_cycle(4);
  const auto result = threshold_algorithm(c4, 0.5, 0.4);
  REQUIRE(result.has_value());
  CHECK(result->volume == 2.0);  // any singleton qualifies under cap sqrt(2.5) > 1
}

TEST_CASE("threshold algorithm parameter validation") {
  const auto c4 = make_cycle(4);
  CHECK_THROWS_AS(threshold_algorithm(c4, 0.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(threshold_algorithm(c4, 0.2, 0.51), std::invalid_argument);
  CHECK_THROWS_AS(threshold_algorithm(c4, 0.2, 0.3, {9}), std::invalid_argument);
}

TEST_CASE("restricted seed list still finds the planted cut") {
  const auto db = make_dumbbell(10);
  const double phi = 1.0 / 91.0;
  const auto result = threshold_algorithm(db, phi, 0.5, {0});
  REQUIRE(result.has_value());
  CHECK(result->phi <= std::sqrt(2.0 * phi / 0.5) + 1e-12);
  CHECK(result->volume <= 2.0 * std::pow(91.0, 1.5));
}

TEST_CASE("walk steps never raise the curve") {
  for (const auto& fixture : testing::standard_fixtures()) {
    const WalkOperator walk(fixture.graph);
    for (int seed = 0; seed < fixture.graph.vertex_count(); ++seed) {
      Distribution p = Distribution::point_mass(seed);
      LSCurve prev = build_curve(fixture.graph, p);
      for (int t = 1; t <= 10; ++t) {
        p = walk.step(p);
        const auto curve = build_curve(fixture.graph, p);
        for (const auto& [x, y] : curve.points) CHECK(y <= evaluate_curve(prev, x) + 1e-9);
        for (const auto& [x, y] : prev.points) CHECK(evaluate_curve(curve, x) <= y + 1e-9);
        prev = curve;
      }
    }
  }
}

TEST_CASE("chord inequality at expanding threshold breakpoints") {
  for (const auto& fixture : testing::standard_fixtures()) {
    const Graph& g = fixture.graph;
    const double mu = g.total_volume();
    const WalkOperator walk(g);
    for (int seed = 0; seed < g.vertex_count(); ++seed) {
      Distribution p = Distribution::point_mass(seed);
      for (int t = 1; t <= 20; ++t) {
        const auto prev_curve = build_curve(g, p);
        const Distribution q = walk.step(p);
        const auto curve = build_curve(g, q);
        const auto sweep = threshold_sweep(g, q);
        for (std::size_t i = 0; i + 1 < sweep.order.size(); ++i) {
          // Phi is the chain conductance of the half-lazy walk, phi(T_i)/2;
          // the graph-phi spread is falsified by (C_4, 1_0, t=1, {0,1}).
          const double cap = 0.5 * sweep.prefix_phi[i];
          if (cap <= 0.0) continue;
          const double x = sweep.prefix_volume[i];
          const double spread = 2.0 * cap * std::min(x, mu - x);
          const double chord = 0.5 * (evaluate_curve(prev_curve, x - spread) +
                                      evaluate_curve(prev_curve, x + spread));
          CHECK(evaluate_curve(curve, x) <= chord + 1e-9);
        }
        p = q;
      }
    }
  }
}

TEST_CASE("curve bound check: base case dominates at t = 0") {
  const auto c8 = make_cycle(8);
  const auto report = curve_bound_check(c8, 0, 0, c8.total_volume(), 0.3);
  REQUIRE(report.steps.size() == 1);
  CHECK(report.steps[0].bound_held);
}

TEST_CASE("curve bound check on C_4 records the premise failure") {
  const auto c4 = make_cycle(4);
  const auto report = curve_bound_check(c4, 0, 6, 8.0, 0.5);
  REQUIRE(report.steps.size() == 7);
  // {0,1,2} has volume 6 < 8 and phi 1/3 < 0.5 already at t=0
  REQUIRE(report.first_premise_failure.has_value());
  CHECK(*report.first_premise_failure == 0);
  for (const auto& step : report.steps) CHECK_FALSE(step.premise_held);
}

TEST_CASE("curve bound check on dumbbell(5): premise holds throughout") {
  // No threshold set of volume < 10 dips below phi = 0.3 (singletons and
  // pairs all have phi >= 0.7), so the bound must hold at every step.
  const auto db = make_dumbbell(5);
  const auto report = curve_bound_check(db, 0, 25, 10.0, 0.3);
  CHECK_FALSE(report.first_premise_failure.has_value());
  CHECK(report.all_bounds_held);
  for (const auto& step : report.steps) {
    CHECK(step.premise_held);
    CHECK(step.bound_held);
  }
}

TEST_CASE("curve bound check parameter validation") {
  const auto c4 = make_cycle(4);
  CHECK_THROWS_AS(curve_bound_check(c4, 0, 5, 8.0, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(curve_bound_check(c4, 0, 5, 9.0, 0.3), std::invalid_argument);
}

TEST_CASE("threshold rank examples") {
  const auto c4 = make_cycle(4);
  CHECK(threshold_rank(c4, 0.5) == 1);  // spectrum {1, 0, 0, -1}
  CHECK(threshold_rank(testing::two_k4s(), 0.1) == 2);
  CHECK(threshold_rank(testing::k2(), 0.5) == 1);
  CHECK_THROWS_AS(threshold_rank(c4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(threshold_rank(c4, 2.5), std::invalid_argument);
}

TEST_CASE("threshold rank agrees with the Sturm bisection counter") {
  for (const auto& fixture : testing::standard_fixtures()) {
    const auto dense = testing::dense_normalized_adjacency(fixture.graph);
    for (double eta : {0.3, 0.55, 0.9, 1.2})
      CHECK(threshold_rank(fixture.graph, eta) ==
            testing::sturm_count_above(dense, 1.0 - eta));
  }
  const auto ring = make_ring_of_cliques(6, 4);
  const auto dense = testing::dense_normalized_adjacency(ring);
  for (double eta : {0.05, 0.3, 0.9})
    CHECK(threshold_rank(ring, eta) == testing::sturm_count_above(dense, 1.0 - eta));
}

TEST_CASE("structural check on eight disjoint K_4s") {
  const auto g = testing::disjoint_k4s(8);
  const auto report = abs_structural_check(g, 0.1, 1.0);
  CHECK(report.premise_satisfied);
  CHECK(report.eta_star == doctest::Approx(0.03));
  CHECK(report.rank == 8);
  REQUIRE(report.found.has_value());
  CHECK(report.conclusion_volume_ok);
  CHECK(report.conclusion_phi_ok);
  CHECK(report.witness_ok);
}

TEST_CASE("structural check premise unmet on the complete graph") {
  const auto g = make_complete(6);
  const auto report = abs_structural_check(g, 0.4, 1.0);
  CHECK_FALSE(report.premise_satisfied);
}

TEST_CASE("structural check on the ring of cliques") {
  const auto g = make_ring_of_cliques(8, 5);
  const auto report = abs_structural_check(g, 0.25, 1.0);
  CHECK(report.premise_satisfied);
  REQUIRE(report.found.has_value());
  CHECK(report.conclusion_volume_ok);
  CHECK(report.conclusion_phi_ok);
  CHECK(report.witness_ok);
}

TEST_CASE("oracle cross-check of algorithmic cuts") {
  const auto db = make_dumbbell(5);
  const auto result = threshold_algorithm(db, 0.1, 0.5);
  REQUIRE(result.has_value());
  const auto opt = exact_expansion_profile(db, result->volume);
  CHECK(result->phi >= opt.phi - 1e-12);
}
