#include <doctest.h>

#include <cmath>

#include "graphlim/energy.hpp"
#include "graphlim/error.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/homcount.hpp"
#include "oracles.hpp"

using namespace graphlim;

namespace {

Eigen::MatrixXd random_sym(Rng& rng, int q) {
  Eigen::MatrixXd b(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = i; j < q; ++j) b(i, j) = b(j, i) = uniform01(rng);
  return b;
}

}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("maxcut examples") {
    CHECK(maxcut(gen::complete(4)).value == doctest::Approx(4.0 / 16));
    CHECK(maxcut(gen::cycle(5)).value == doctest::Approx(4.0 / 25));
    CHECK(maxcut(gen::complete_bipartite(3, 4)).value == doctest::Approx(12.0 / 49));
    CHECK(maxcut(gen::empty(5)).value == 0.0);
    CHECK_THROWS_AS(maxcut(gen::empty(25)), BoundExceeded);
    Rng rng(81);
    for (int i = 0; i < 30; ++i) {
      const auto G = gen::erdos_renyi(2 + static_cast<int>(uniform_index(rng, 9)), uniform01(rng), rng());
      const auto r = maxcut(G);
      CHECK(r.value == doctest::Approx(oracle::maxcut(G)).epsilon(1e-12));
      Eigen::MatrixXd half(2, 2);
      half << 0, 0.5, 0.5, 0;
      CHECK(multicut_value(G, half, r.assignment) == doctest::Approx(r.value));
      EnergyOptions local;
      local.mode = EnergyMode::local;
      local.seed = rng();
      CHECK(maxcut(G, local).value <= r.value + 1e-12);
    }
  }

  TEST_CASE("mmcut and rmcut against enumeration") {
    Rng rng(82);
    for (int i = 0; i < 30; ++i) {
      const int n = 2 + static_cast<int>(uniform_index(rng, 6));
      const int q = 2 + static_cast<int>(uniform_index(rng, 2));
      const auto G = gen::erdos_renyi(n, uniform01(rng), rng());
      const auto beta = random_sym(rng, q);
      const auto m = mmcut(G, beta);
      CHECK(m.value == doctest::Approx(oracle::multicut(G, beta)).epsilon(1e-12));
      Eigen::VectorXd alpha(q);
      for (int a = 0; a < q; ++a) alpha(a) = 0.2 + uniform01(rng);
      const WeightedGraph H(alpha, beta);
      const auto sizes = balanced_size_range(alpha, n);
      const auto r = rmcut(G, H);
      CHECK(r.value == doctest::Approx(oracle::multicut(G, beta, &sizes)).epsilon(1e-12));
      CHECK(r.value <= m.value + 1e-12);
    }
  }

  TEST_CASE("mmcut with the cut matrix is twice maxcut") {
    Eigen::MatrixXd cut(2, 2);
    cut << 0, 1, 1, 0;
    Rng rng(83);
    for (int i = 0; i < 10; ++i) {
      const auto G = gen::erdos_renyi(8, 0.5, rng());
      CHECK(mmcut(G, cut).value == doctest::Approx(2 * maxcut(G).value));
    }
  }

  TEST_CASE("balanced size range") {
    const auto r = balanced_size_range(Eigen::Vector2d(0.5, 0.5), 5);
    CHECK(r[0] == std::pair<int, int>{2, 3});
    const auto e = balanced_size_range(Eigen::Vector2d(1, 3), 8);
    CHECK(e[0] == std::pair<int, int>{2, 2});
    CHECK(e[1] == std::pair<int, int>{6, 6});
    CHECK_THROWS_AS(balanced_size_range(Eigen::Vector2d(0, 1), 4), std::invalid_argument);
  }

  TEST_CASE("hom_star") {
    // All-ones weights count balanced maps: binom(4, 2) for two halves.
    const WeightedGraph ones(Eigen::Vector2d(0.5, 0.5), Eigen::Matrix2d::Ones());
    CHECK(hom_star(gen::cycle(4), ones).value() == doctest::Approx(6.0));
    // Balanced proper 2-colorings of C4: 2.
    const WeightedGraph k2(Eigen::Vector2d(0.5, 0.5), gen::complete(2).adjacency_matrix());
    CHECK(hom_star(gen::cycle(4), k2).value() == doctest::Approx(2.0));
    CHECK(hom_star(gen::cycle(5), k2).log == -INFINITY);
    CHECK_THROWS_AS(hom_star(gen::cycle(4), WeightedGraph(Eigen::Vector2d(0.5, 0.5), -Eigen::Matrix2d::Ones())),
                    std::invalid_argument);
  }

  TEST_CASE("partition function") {
    Rng rng(84);
    for (int i = 0; i < 10; ++i) {
      const auto G = gen::erdos_renyi(6, 0.5, rng());
      const Eigen::MatrixXd J = random_sym(rng, 2) * 3.0;
      const auto hard = partition_function(G, J, SpinVariant::hard);
      CHECK(hard.Z.value() == doctest::Approx(oracle::partition_function(G, J, 1.0)).epsilon(1e-12));
      const auto mf = partition_function(G, J, SpinVariant::meanfield);
      CHECK(mf.Z.value() == doctest::Approx(oracle::partition_function(G, J, 6.0)).epsilon(1e-12));
      CHECK(hard.free_energy == doctest::Approx(-hard.Z.log / 6));
      CHECK(hard.ground_state == doctest::Approx(-oracle::multicut(G, -J)).epsilon(1e-12));
    }
    // J = 0: Z = q^n.
    CHECK(partition_function(gen::cycle(5), Eigen::MatrixXd::Zero(3, 3), SpinVariant::hard).Z.value() ==
          doctest::Approx(243.0));
    // Large couplings stay finite in log space.
    const Eigen::MatrixXd big = Eigen::MatrixXd::Constant(2, 2, -5000.0);
    const auto z = partition_function(gen::complete(3), big, SpinVariant::meanfield);
    CHECK(std::isfinite(z.Z.log));
    CHECK(z.Z.log == doctest::Approx(3 * 5000.0 * 2 * 3 / 9.0 + 3 * std::log(2.0)).epsilon(1e-12));
  }

  TEST_CASE("freedom and right quantities") {
    for (int q = 2; q <= 6; ++q)
      CHECK(freedom(WeightedGraph::from_graph(gen::complete(q))) == doctest::Approx(1.0 / q));
    const auto c5 = right_quantities(gen::cycle(5), WeightedGraph::from_graph(gen::complete(2)));
    CHECK(c5.u == -INFINITY);
    const auto k3 = right_quantities(gen::cycle(4), WeightedGraph::from_graph(gen::complete(3)));
    CHECK(k3.hom.value() == doctest::Approx(18.0));
    CHECK(k3.u == doctest::Approx(std::log(18.0) / 4));
    CHECK(k3.log2_hom_density == doctest::Approx(std::log2(18.0) / 16));
    CHECK_THROWS_AS(freedom(WeightedGraph(Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Zero(1, 1))),
                    std::invalid_argument);
  }

  TEST_CASE("hom sandwiches") {
    Rng rng(85);
    const WeightedGraph H = cut_hom_target();
    for (int i = 0; i < 40; ++i) {
      const int n = 2 + static_cast<int>(uniform_index(rng, 7));
      const auto G = gen::erdos_renyi(n, uniform01(rng), rng());
      const auto M = std::llround(maxcut(G).value * n * n);
      const double h = hom_weighted(G.to_multigraph(), H);
      CHECK(h >= std::ldexp(1.0, static_cast<int>(M)));
      CHECK(h <= std::ldexp(1.0, static_cast<int>(M) + n));
      const int q = 2 + static_cast<int>(uniform_index(rng, 2));
      const auto beta = random_sym(rng, q);
      const WeightedGraph Hexp(Eigen::VectorXd::Ones(q), beta.unaryExpr([](double b) { return std::exp2(b); }));
      const double dev = std::abs(right_quantities(G, Hexp).log2_hom_density - mmcut(G, beta).value / 2);
      CHECK(dev <= std::log2(q) / n + 1e-12);
    }
  }

  TEST_CASE("energy_graphon") {
    // Constant W: every split gives c * sum alpha_c alpha_d beta_cd.
    const auto W = StepGraphon::constant(0.4);
    Eigen::MatrixXd beta(2, 2);
    beta << 0, 1, 1, 0;
    const WeightedGraph H(Eigen::Vector2d(0.5, 0.5), beta);
    const auto r = energy_graphon(W, H, 86);
    CHECK(r.value == doctest::Approx(0.4 * 0.5));
    CHECK(r.split.sum() == doctest::Approx(1.0));
    // Bipartite step graphon: the aligned split attains 1/2.
    Eigen::MatrixXd B(2, 2);
    B << 0, 1, 1, 0;
    const StepGraphon K(Eigen::Vector2d(0.5, 0.5), B);
    CHECK(energy_graphon(K, H, 87).value == doctest::Approx(0.5));
    // Scaling alpha does not change the value.
    const WeightedGraph H3(Eigen::Vector2d(3, 3), beta);
    CHECK(energy_graphon(K, H3, 87).value == doctest::Approx(0.5));
  }

  TEST_CASE("energy_graphon split is feasible and realizes the value") {
    Rng rng(88);
    for (int i = 0; i < 10; ++i) {
      const auto W = random_step(3, rng);
      const auto beta = random_sym(rng, 2);
      Eigen::Vector2d alpha(0.2 + uniform01(rng), 0.2 + uniform01(rng));
      const WeightedGraph H(alpha, beta);
      const auto r = energy_graphon(W, H, rng());
      const Eigen::VectorXd a = alpha / alpha.sum();
      for (int b = 0; b < 3; ++b) CHECK(r.split.row(b).sum() == doctest::Approx(W.p(b)));
      for (int c = 0; c < 2; ++c) CHECK(r.split.col(c).sum() == doctest::Approx(a(c)));
      CHECK((r.split.array() >= -1e-12).all());
      const Eigen::MatrixXd m = r.split.transpose() * W.B * r.split;
      CHECK(r.value == doctest::Approx((beta.array() * m.array()).sum()).epsilon(1e-12));
    }
  }
}
