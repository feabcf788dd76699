#include "doctest.h"

#include <cmath>

#include "evocut/rng.hpp"
#include "evocut/walks.hpp"
#include "support.hpp"

using namespace evocut;

TEST_CASE("lazy step examples") {
  const auto g2 = testing::k2();
  const WalkOperator w2(g2);
  const auto p2 = lazy_step(w2, Distribution::point_mass(0));
  CHECK(p2.mass(0) == 0.5);
  CHECK(p2.mass(1) == 0.5);

  const auto c4 = make_cycle(4);
  const WalkOperator w4(c4);
  const auto p4 = lazy_step(w4, Distribution::point_mass(0));
  CHECK(p4.mass(0) == 0.5);
  CHECK(p4.mass(1) == 0.25);
  CHECK(p4.mass(2) == 0.0);
  CHECK(p4.mass(3) == 0.25);
  CHECK(p4.total() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("stationary distribution is a fixed point") {
  for (const auto& fixture : testing::standard_fixtures()) {
    const WalkOperator walk(fixture.graph);
    const auto pi = stationary(fixture.graph);
    const auto next = walk.step(pi);
    for (int v = 0; v < fixture.graph.vertex_count(); ++v)
      CHECK(next.mass(v) == doctest::Approx(pi.mass(v)).epsilon(1e-12));
  }
}

TEST_CASE("remain probability examples") {
  const auto g2 = testing::k2();
  const WalkOperator w2(g2);
  const VertexSet s0(g2, {0});
  CHECK(remain_probability(w2, 0, 3, s0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(remain_probability(w2, 0, 0, s0) == 1.0);

  const auto c4 = make_cycle(4);
  const WalkOperator w4(c4);
  const VertexSet s01(c4, {0, 1});
  CHECK(remain_probability(w4, 0, 2, s01) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK_THROWS_AS(remain_probability(w4, 2, 1, s01), std::invalid_argument);
}

TEST_CASE("remain matches the dense matrix-power oracle") {
  for (const auto& fixture : testing::standard_fixtures()) {
    const WalkOperator walk(fixture.graph);
    for (const auto& [name, members] : fixture.sets) {
      const VertexSet s(fixture.graph, members);
      for (int t : {1, 3, 7}) {
        const auto profile = remain_profile(walk, s, t);
        for (std::size_t i = 0; i < s.members().size(); ++i) {
          const double oracle =
              testing::oracle_remain(fixture.graph, s, s.members()[i], t, true);
          CHECK(profile[i] == doctest::Approx(oracle).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("expected remain examples") {
  const auto c4 = make_cycle(4);
  const WalkOperator w4(c4);
  const VertexSet s01(c4, {0, 1});
  CHECK(expected_remain(w4, s01, 1) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(expected_remain(w4, s01, 5) == doctest::Approx(0.2373046875).epsilon(1e-12));

  const auto g2 = testing::k2();
  const WalkOperator w2(g2);
  const VertexSet s0(g2, {0});
  const double er = expected_remain(w2, s0, 4);
  CHECK(er == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(er >= std::pow(0.5, 4) - 1e-15);  // tight against (1 - phi/2)^t
}

TEST_CASE("monotone remain chain") {
  for (const auto& fixture : testing::standard_fixtures()) {
    const WalkOperator walk(fixture.graph);
    for (const auto& [name, members] : fixture.sets) {
      const VertexSet s(fixture.graph, members);
      const double phi = conductance(fixture.graph, s).phi;
      double prev = 1.0;
      for (int t = 1; t <= 50; ++t) {
        const double cur = expected_remain(walk, s, t);
        CHECK(cur >= (1.0 - phi / 2.0) * prev - 1e-9);
        CHECK(cur >= std::pow(1.0 - phi / 2.0, t) - 1e-9);
        prev = cur;
      }
      CHECK(std::abs(expected_remain(walk, s, 1) - (1.0 - phi / 2.0)) <= 1e-10);
    }
  }
}

TEST_CASE("symmetrized power inequality") {
  // x' P^t x >= (x' P^{t-1} x)(x' P x) for the PSD restricted operator.
  for (const auto& fixture : testing::standard_fixtures()) {
    for (const auto& [name, members] : fixture.sets) {
      const VertexSet s(fixture.graph, members);
      const auto p = testing::dense_symmetrized(fixture.graph, s, true);
      const auto x = testing::sqrt_stationary(fixture.graph, s);
      const double first = x.dot(p * x);
      Eigen::VectorXd prev = x;
      double prev_val = 1.0;
      for (int t = 1; t <= 20; ++t) {
        prev = p * prev;
        const double cur = x.dot(prev);
        CHECK(cur >= prev_val * first - 1e-9);
        prev_val = cur;
      }
    }
  }
}

TEST_CASE("good core") {
  const auto g2 = testing::k2();
  const WalkOperator w2(g2);
  // phi = 1 clamps the threshold base to zero
  CHECK(good_core(w2, VertexSet(g2, {0}), 2) == VertexSet(g2, {0}));

  const auto db = make_dumbbell(5);
  const WalkOperator wdb(db);
  const VertexSet side(db, {0, 1, 2, 3, 4});
  CHECK(good_core(wdb, side, 10).volume() >= 10.5);

  // disconnected component keeps everything: rem = 1
  const auto kk = testing::two_k4s();
  const WalkOperator wkk(kk);
  const VertexSet comp(kk, {0, 1, 2, 3});
  CHECK(good_core(wkk, comp, 7) == comp);

  CHECK_THROWS_AS(good_core(w2, VertexSet(g2, {0}), 2, 0.0), std::invalid_argument);
}

TEST_CASE("good core half-volume guarantee") {
  for (const auto& fixture : testing::standard_fixtures()) {
    const WalkOperator walk(fixture.graph);
    for (const auto& [name, members] : fixture.sets) {
      const VertexSet s(fixture.graph, members);
      for (int t : {1, 5, 20, 50})
        CHECK(good_core(walk, s, t).volume() >= s.volume() / 2.0);
    }
  }
}

TEST_CASE("sampled walks are graph paths") {
  const auto db = make_dumbbell(5);
  const WalkOperator walk(db);
  auto rng = make_stream(42, 0);
  const auto path = sample_lazy_walk(walk, 0, 200, rng);
  REQUIRE(path.size() == 201);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const bool held = path[i] == path[i - 1];
    CHECK((held || db.edge_weight(path[i - 1], path[i]) > 0.0));
  }
  auto rng_a = make_stream(7, 3), rng_b = make_stream(7, 3);
  CHECK(sample_lazy_walk(walk, 2, 50, rng_a) == sample_lazy_walk(walk, 2, 50, rng_b));

  const auto g2 = testing::k2();
  const WalkOperator w2(g2);
  auto rng0 = make_stream(0, 0);
  CHECK(sample_lazy_walk(w2, 0, 0, rng0) == std::vector<Vertex>{0});
}

TEST_CASE("monte carlo remain frequency matches the exact value") {
  const auto c4 = make_cycle(4);
  const WalkOperator walk(c4);
  const VertexSet s(c4, {0, 1});
  const int trials = 100000;
  auto rng = make_stream(2024, 0);
  int stayed = 0;
  for (int i = 0; i < trials; ++i) {
    const auto path = sample_lazy_walk(walk, 0, 2, rng);
    bool inside = true;
    for (Vertex v : path) inside = inside && s.contains(v);
    stayed += inside ? 1 : 0;
  }
  const double freq = static_cast<double>(stayed) / trials;
  const double exact = 0.5625;
  CHECK(std::abs(freq - exact) <= 0.01);
  const double se = std::sqrt(exact * (1 - exact) / trials);
  CHECK(std::abs(freq - exact) <= 3 * se);
}
