#include <doctest.h>

#include <cmath>

#include "graphlim/canonical.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/homcount.hpp"
#include "oracles.hpp"

using namespace graphlim;

TEST_SUITE("graphon") {
  TEST_CASE("step graphon validation") {
    CHECK_THROWS_AS(StepGraphon(Eigen::Vector2d(0.5, 0.4), Eigen::Matrix2d::Zero()),
                    std::invalid_argument);
    Eigen::Matrix2d asym;
    asym << 0, 1, 0.5, 0;
    CHECK_THROWS_AS(StepGraphon(Eigen::Vector2d(0.5, 0.5), asym), std::invalid_argument);
    Eigen::Matrix2d big;
    big << 0, 1.5, 1.5, 0;
    CHECK_THROWS_AS(StepGraphon(Eigen::Vector2d(0.5, 0.5), big), std::invalid_argument);
  }

  TEST_CASE("step_from_weighted examples") {
    const auto W = step_from_graph(gen::complete(2));
    CHECK(W.blocks() == 2);
    CHECK(W.p(0) == doctest::Approx(0.5));
    CHECK(W.B(0, 1) == 1.0);
    CHECK(W.B(0, 0) == 0.0);
    // One node of weight 1 with a loop of weight 1/2.
    Eigen::MatrixXd half(1, 1);
    half << 0.5;
    const auto K = step_from_weighted(WeightedGraph(Eigen::VectorXd::Ones(1), half));
    CHECK(K.blocks() == 1);
    CHECK(K.B(0, 0) == 0.5);
    const auto T = gen::turan(4, 2);
    const auto WT = step_from_graph(T);
    for (int k = 1; k <= 4; ++k)
      for (const auto& F : all_graphs(k))
        CHECK(t_graphon(F, WT).value == doctest::Approx(density(DensityKind::t, F, T)).epsilon(1e-13));
  }

  TEST_CASE("t(F, W_G) equals t(F, G)") {
    Rng rng(41);
    std::vector<SimpleGraph> patterns;
    for (int k = 1; k <= 4; ++k)
      for (const auto& F : all_graphs(k)) patterns.push_back(F);
    for (int i = 0; i < 100; ++i) {
      const auto G = gen::erdos_renyi(1 + static_cast<int>(uniform_index(rng, 7)), uniform01(rng), rng());
      const auto& F = patterns[uniform_index(rng, patterns.size())];
      CHECK(std::abs(t_graphon(F, step_from_graph(G)).value - density(DensityKind::t, F, G)) <= 1e-12);
    }
  }

  TEST_CASE("exact step densities match brute force") {
    Rng rng(42);
    for (int i = 0; i < 20; ++i) {
      const auto W = random_step(3, rng);
      for (const auto& F : all_graphs(3)) {
        CHECK(t_graphon(F, W).value == doctest::Approx(oracle::t_step(F, W.p, W.B)).epsilon(1e-12));
        CHECK(t_ind_graphon(F, W).value ==
              doctest::Approx(oracle::t_step(F, W.p, W.B, true)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("t_graphon examples") {
    CHECK(t_graphon(gen::complete(3), StepGraphon::constant(0.5)).value == doctest::Approx(0.125));
    const auto ua = t_graphon(gen::complete(2), builtin::ua_limit(), DensityMethod::mc, 400000, 3);
    CHECK(std::abs(ua.value - 1.0 / 3) <= 4 * ua.std_error);
    CHECK_THROWS_AS(t_graphon(gen::complete(2), builtin::ua_limit(), DensityMethod::exact),
                    std::invalid_argument);
  }

  TEST_CASE("t_ind_graphon examples") {
    const auto W = StepGraphon::constant(0.3);
    CHECK(t_ind_graphon(gen::complete(2), W).value == doctest::Approx(0.3));
    CHECK(t_ind_graphon(gen::empty(2), W).value == doctest::Approx(0.7));
    Rng rng(43);
    for (int i = 0; i < 10; ++i) {
      const auto R = random_step(4, rng);
      double total = 0.0;
      for (const auto& F : all_labeled_graphs(3)) total += t_ind_graphon(F, R).value;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("graphon-level inclusion-exclusion") {
    Rng rng(44);
    for (int i = 0; i < 5; ++i) {
      const auto W = random_step(3, rng);
      for (int k = 2; k <= 3; ++k) {
        for (const auto& F : all_graphs(k)) {
          const auto missing = missing_pairs(F);
          double sum = 0.0;
          for (std::uint32_t m = 0; m < (1u << missing.size()); ++m) {
            sum += t_ind_graphon(supergraph(F, m), W).value;
          }
          CHECK(sum == doctest::Approx(t_graphon(F, W).value).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("MC step estimates fall within 4 standard errors") {
    Rng rng(45);
    int inside = 0;
    const int runs = 100;
    for (int i = 0; i < runs; ++i) {
      const auto W = random_step(3, rng);
      const auto exact = t_graphon(gen::cycle(4), W).value;
      const auto mc = t_graphon(gen::cycle(4), W, DensityMethod::mc, 20000, rng());
      inside += std::abs(mc.value - exact) <= 4 * mc.std_error;
    }
    CHECK(inside >= 99);
  }

  TEST_CASE("w_random") {
    const auto G = w_random(400, builtin::constant(0.3), 7);
    const double pairs = 400.0 * 399 / 2;
    const double sd = std::sqrt(0.3 * 0.7 / pairs);
    CHECK(std::abs(static_cast<double>(G.graph.num_edges()) / pairs - 0.3) <= 3 * sd);
    CHECK(w_random(50, builtin::constant(0.0), 8).graph.num_edges() == 0);
    const auto U = w_random(2000, builtin::ua_limit(), 9);
    CHECK(std::abs(density(DensityKind::t, gen::complete(2), U.graph) - 1.0 / 3) <= 0.02);
    const auto again = w_random(2000, builtin::ua_limit(), 9);
    CHECK(again.graph == U.graph);
    CHECK(again.points == U.points);
    const auto step = w_random(100, StepGraphon::constant(0.5), 10);
    CHECK(step.graph == w_random(100, StepGraphon::constant(0.5), 10).graph);
  }

  TEST_CASE("edge decisions depend only on the endpoints' points and the pair") {
    // Sub-sampling: a smaller W-random graph from the same seed is the
    // induced subgraph on its first nodes.
    const auto big = w_random(60, builtin::ua_limit(), 11);
    const auto small = w_random(30, builtin::ua_limit(), 11);
    for (int i = 0; i < 30; ++i) CHECK(small.points[i] == big.points[i]);
    std::vector<Node> first(30);
    std::iota(first.begin(), first.end(), 0);
    CHECK(induce(big.graph, first) == small.graph);
  }

  TEST_CASE("builtins") {
    const auto th = builtin::threshold();
    CHECK(th.eval({0.3, 0}, {0.6, 0}) == 1.0);
    CHECK(th.eval({0.7, 0}, {0.6, 0}) == 0.0);
    const auto pfx = builtin::pfx_limit();
    CHECK(pfx.space() == PointSpace::unit_square);
    Rng rng(46);
    for (int i = 0; i < 100000; ++i) {
      const Point a = pfx.sample(rng);
      const Point b = pfx.sample(rng);
      REQUIRE(pfx.eval(a, b) == pfx.eval(b, a));
    }
    // 0.5 = 0.1000..., 0.25 = 0.0100...: they differ first at digit 1 (odd).
    const auto bp = builtin::bit_parity();
    CHECK(bp.eval({0.5, 0}, {0.25, 0}) == 1.0);
    // 0.5 and 0.75 = 0.11 differ first at digit 2 (even).
    CHECK(bp.eval({0.5, 0}, {0.75, 0}) == 0.0);
    const auto ps = builtin::poly_sign();
    CHECK(ps.eval({0.7, 0}, {0.6, 0}) == 1.0);
    CHECK(ps.eval({0.2, 0}, {0.6, 0}) == 0.0);
    const auto naive = builtin::pfx_naive();
    CHECK(naive.eval({0.2, 0}, {0.8, 0}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(builtin::by_name("nope"), std::invalid_argument);
    for (const auto& name : builtin::names()) {
      const auto W = builtin::by_name(name);
      for (int i = 0; i < 1000; ++i) {
        const Point a = W.sample(rng);
        const Point b = W.sample(rng);
        const double v = W.eval(a, b);
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
        REQUIRE(v == W.eval(b, a));
      }
    }
  }
}
