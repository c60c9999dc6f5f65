#include <doctest.h>

#include <cmath>
#include <set>

#include "graphlim/cutmetric.hpp"
#include "graphlim/error.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/homcount.hpp"
#include "graphlim/oracle.hpp"
#include "graphlim/regularity.hpp"
#include "oracles.hpp"

using namespace graphlim;

namespace {

SimpleGraph two_cliques(int m) { return disjoint_union(gen::complete(m), gen::complete(m)); }

}  // namespace

TEST_SUITE("regularity") {
  TEST_CASE("d2_exact matches the direct double sum") {
    Rng rng(61);
    for (int i = 0; i < 20; ++i) {
      const int n = 2 + static_cast<int>(uniform_index(rng, 11));
      const auto G = gen::erdos_renyi(n, uniform01(rng), rng());
      const Node u = static_cast<Node>(uniform_index(rng, n));
      const Node v = static_cast<Node>(uniform_index(rng, n));
      CHECK(d2_exact(G, u, v) == doctest::Approx(oracle::d2(G, u, v)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(d2_exact(gen::empty(0), 0, 0), std::invalid_argument);
  }

  TEST_CASE("d2_matrix is a pseudometric") {
    const auto G = gen::erdos_renyi(15, 0.4, 62);
    const auto D = d2_matrix(G);
    for (int u = 0; u < 15; ++u) {
      CHECK(D(u, u) == 0.0);
      for (int v = 0; v < 15; ++v) {
        CHECK(D(u, v) == D(v, u));
        CHECK(D(u, v) == doctest::Approx(d2_exact(G, u, v)).epsilon(1e-12));
        for (int w = 0; w < 15; ++w) CHECK(D(u, w) <= D(u, v) + D(v, w) + 1e-12);
      }
    }
  }

  TEST_CASE("twins are at distance zero") {
    const auto K = gen::complete_bipartite(4, 5);
    CHECK(d2_exact(K, 0, 3) == 0.0);
    CHECK(d2_exact(K, 4, 8) == 0.0);
    CHECK(d2_exact(K, 0, 4) > 0.0);
  }

  TEST_CASE("d2 sample sizes") {
    const auto s = d2_sample_sizes(0.1, 0.1);
    const double L = std::log(2.0 / 0.05);
    CHECK(s.outer == static_cast<std::int64_t>(std::ceil(2 * L / 0.01)));
    CHECK(s.inner == static_cast<std::int64_t>(std::ceil(4 * std::pow(1 + std::sqrt(2 * L), 2) / 0.01)));
    CHECK_THROWS_AS(d2_sample_sizes(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(d2_sample_sizes(0.1, 1.0), std::invalid_argument);
  }

  TEST_CASE("d2_estimate is within eps of d2") {
    const auto G = gen::erdos_renyi(2000, 0.5, 63);
    auto O = SamplingOracle::from_graph(G);
    const double eps = 0.1;
    int within = 0;
    Rng rng(64);
    for (int i = 0; i < 10; ++i) {
      const Node u = static_cast<Node>(uniform_index(rng, 2000));
      const Node v = static_cast<Node>(uniform_index(rng, 2000));
      const double est = d2_estimate(O, O.handle_of_node(u), O.handle_of_node(v), eps, rng());
      within += std::abs(est - d2_exact(G, u, v)) <= eps;
    }
    CHECK(within >= 9);
  }

  TEST_CASE("sketch grouping preserves the z sample") {
    auto O = SamplingOracle::from_graph(gen::erdos_renyi(30, 0.5, 65));
    Rng rng(66);
    D2Sketch sk(O, 0.2, 0.1, rng);
    std::int64_t total = 0;
    for (int m : sk.z_multiplicity()) total += m;
    CHECK(total == sk.sizes().outer);
    const Handle a = O.sample(rng);
    CHECK(sk.distance(a, a) == 0.0);
    const Handle b = O.sample(rng);
    CHECK(sk.distance(a, b) == sk.distance(b, a));
  }

  TEST_CASE("build_reps") {
    auto two = SamplingOracle::from_graph(two_cliques(50));
    const auto R = build_reps(two, 0.3, 67);
    CHECK(R.reps.size() == 2);
    CHECK_FALSE(R.capped);
    CHECK(R.rejection_limit == 12);
    CHECK(*two.node(R.reps[0]) / 50 != *two.node(R.reps[1]) / 50);
    auto full = SamplingOracle::from_graph(gen::complete(100));
    CHECK(build_reps(full, 0.3, 68).reps.size() == 1);
    CHECK_THROWS_AS(build_reps(full, 0.6, 68), std::invalid_argument);
    // Accepted candidates are far from all earlier representatives.
    for (const auto& e : R.trace)
      if (e.accepted)
        for (double d : e.estimates) CHECK(d > 0.15);
  }

  TEST_CASE("classify and voronoi on two cliques") {
    auto O = SamplingOracle::from_graph(two_cliques(40));
    const auto R = build_reps(O, 0.3, 69);
    REQUIRE(R.reps.size() == 2);
    const int side0 = *O.node(R.reps[0]) / 40;
    for (Node v = 0; v < 80; ++v) {
      const int c = classify(O, R, O.handle_of_node(v), 0.3, 70);
      CHECK((c == 0) == (v / 40 == side0));
    }
    std::vector<int> rep_of;
    const auto P = voronoi_partition(O, R, 0.3, &rep_of);
    CHECK(P.num_blocks() == 2);
    CHECK(rep_of.size() == 2);
    for (Node v = 0; v < 80; ++v) CHECK(P.block_of(v) == P.block_of(v < 40 ? 0 : 40));
  }

  TEST_CASE("quotient") {
    const auto G = two_cliques(5);
    const auto P = Partition::from_assignment(std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1});
    const auto Q = quotient(G, P);
    CHECK(Q.alpha(0) == doctest::Approx(0.5));
    CHECK(Q.beta(0, 0) == doctest::Approx(20.0 / 25));
    CHECK(Q.beta(0, 1) == 0.0);
    Rng rng(71);
    for (int i = 0; i < 20; ++i) {
      const int n = 3 + static_cast<int>(uniform_index(rng, 20));
      const auto H = gen::erdos_renyi(n, uniform01(rng), rng());
      std::vector<int> a(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) a[v] = v == 0 ? 0 : static_cast<int>(uniform_index(rng, 4));
      const auto part = Partition::from_assignment(a);
      const auto W = quotient(H, part);
      // Edge mass is preserved.
      const double mass = W.alpha.transpose() * W.beta * W.alpha;
      CHECK(mass == doctest::Approx(2.0 * H.num_edges() / (double(n) * n)).epsilon(1e-12));
      const auto K = partition_kernel(H, part);
      CHECK(K.sum() == doctest::Approx(2.0 * H.num_edges()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(quotient(G, Partition::from_assignment(std::vector<int>{0, 1})), std::invalid_argument);
  }

  TEST_CASE("regularity_quality") {
    const auto G = gen::erdos_renyi(12, 0.5, 72);
    const auto one = Partition::from_assignment(std::vector<int>(12, 0));
    const auto q = regularity_quality(G, one);
    CHECK(q.exact);
    const Eigen::MatrixXd D = G.adjacency_matrix() - partition_kernel(G, one);
    CHECK(q.cut_distance == doctest::Approx(oracle::cut_norm(Eigen::VectorXd::Constant(12, 1.0 / 12), D))
                                .epsilon(1e-12));
    std::vector<int> ids(12);
    std::iota(ids.begin(), ids.end(), 0);
    const auto discrete = regularity_quality(G, Partition::from_assignment(ids));
    CHECK(discrete.cut_distance == doctest::Approx(0.0));
    for (double d : discrete.class_diameters) CHECK(d == 0.0);
    CHECK(discrete.delta == 0.0);
    // Exceptional set and delta are consistent.
    CHECK(q.exceptional.size() <= q.delta * 12 + 1e-9);
    CHECK(q.bound_24delta == doctest::Approx(24 * q.delta));
  }

  TEST_CASE("maxcut_pipeline") {
    auto E = SamplingOracle::from_graph(gen::empty(100));
    const auto r = maxcut_pipeline(E, 0.3, 73);
    CHECK(r.estimate == 0.0);
    CHECK(r.sampled_nodes == static_cast<int>(std::ceil(8 / 0.09)));
    CHECK_THROWS_AS(maxcut_pipeline(E, 0.1, 73), std::invalid_argument);
    auto K = SamplingOracle::from_graph(gen::complete_bipartite(100, 100));
    const auto c = maxcut_pipeline(K, 0.2, 74);
    CHECK(std::abs(c.estimate - 0.25) <= 0.2);
    Rng rng(75);
    int left = 0;
    for (int i = 0; i < 50; ++i) left += cut_side_left(K, c, K.handle_of_node(i));
    // One side of the bipartition lands on one side of the cut.
    CHECK((left == 0 || left == 50));
  }

  TEST_CASE("sampling oracle") {
    const auto G = gen::erdos_renyi(20, 0.5, 76);
    auto O = SamplingOracle::from_graph(G);
    for (Node u = 0; u < 20; ++u)
      for (Node v = 0; v < 20; ++v)
        CHECK(O.adjacent(O.handle_of_node(u), O.handle_of_node(v)) == G.adjacent(u, v));
    CHECK(O.identity(O.handle_of_node(3)) == O.identity(O.handle_of_node(3)));
    Rng rng(77);
    std::vector<int> hits(20, 0);
    for (int i = 0; i < 20000; ++i) ++hits[*O.node(O.sample(rng))];
    for (int h : hits) CHECK(std::abs(h - 1000) <= 4 * std::sqrt(1000.0));
    auto W = SamplingOracle::from_graphon(builtin::ua_limit(), 78);
    const Handle a = W.sample(rng);
    const Handle b = W.sample(rng);
    CHECK(W.adjacent(a, b) == W.adjacent(b, a));
    CHECK(W.adjacent(a, b) == W.adjacent(a, b));
    CHECK_FALSE(W.has_graph());
    CHECK_THROWS(W.handle_of_node(0));
  }
}
