#include <doctest.h>

#include <cmath>

#include "graphlim/canonical.hpp"
#include "graphlim/cutmetric.hpp"
#include "graphlim/error.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/homcount.hpp"
#include "oracles.hpp"

using namespace graphlim;

namespace {

StepKernel random_kernel(Rng& rng, int m) {
  Eigen::VectorXd p(m);
  for (int i = 0; i < m; ++i) p(i) = 0.1 + uniform01(rng);
  p /= p.sum();
  Eigen::MatrixXd D(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) D(i, j) = D(j, i) = 2 * uniform01(rng) - 1;
  return {p, D};
}

}  // namespace

TEST_SUITE("cutmetric") {
  TEST_CASE("cut norm examples") {
    const auto zero = cut_norm(StepKernel::uniform(Eigen::MatrixXd::Zero(3, 3)), CutMode::exact);
    CHECK(zero.value == 0.0);
    CHECK(zero.S.empty());
    Eigen::MatrixXd c(1, 1);
    c << -0.7;
    CHECK(cut_norm(StepKernel::uniform(c), CutMode::exact).value == doctest::Approx(0.7));
    Eigen::MatrixXd off(2, 2);
    off << 0, 0.6, 0.6, 0;
    const Eigen::Vector2d half(0.5, 0.5);
    CHECK(cut_norm(StepKernel::uniform(off), CutMode::exact).value ==
          doctest::Approx(oracle::cut_norm(half, off)));
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(23, 23);
    CHECK_THROWS_AS(cut_norm(StepKernel::uniform(big), CutMode::exact), BoundExceeded);
  }

  TEST_CASE("exact cut norm equals full enumeration") {
    Rng rng(51);
    for (int i = 0; i < 40; ++i) {
      const int m = 1 + static_cast<int>(uniform_index(rng, 8));
      const auto K = random_kernel(rng, m);
      const auto r = cut_norm(K, CutMode::exact);
      CHECK(r.exact);
      CHECK(r.value == doctest::Approx(oracle::cut_norm(K.p, K.D)).epsilon(1e-12));
      // Witness reproduces the value.
      double v = 0.0;
      for (int s : r.S)
        for (int t : r.T) v += K.p(s) * K.p(t) * K.D(s, t);
      CHECK(std::abs(v) == doctest::Approx(r.value).epsilon(1e-12));
    }
  }

  TEST_CASE("heuristic cut norm is a certified bracket") {
    Rng rng(52);
    for (int i = 0; i < 20; ++i) {
      const auto K = random_kernel(rng, 10);
      const double exact = oracle::cut_norm(K.p, K.D);
      CutOptions opt;
      opt.seed = rng();
      const auto r = cut_norm(K, CutMode::heuristic, opt);
      CHECK(r.value <= exact + 1e-12);
      CHECK(r.upper_bound >= exact - 1e-12);
      CHECK(cut_norm_upper_bound(K) >= exact - 1e-12);
    }
  }

  TEST_CASE("thread count does not change exact results") {
    Rng rng(53);
    const auto K = random_kernel(rng, 16);
    CutOptions one;
    CutOptions four;
    four.threads = 4;
    const auto a = cut_norm(K, CutMode::exact, one);
    const auto b = cut_norm(K, CutMode::exact, four);
    CHECK(a.value == b.value);
    CHECK(a.S == b.S);
    CHECK(a.T == b.T);
  }

  TEST_CASE("d_cut_aligned examples") {
    const auto G = gen::petersen();
    CHECK(d_cut_aligned(G, G, CutMode::exact).value == 0.0);
    const auto r = d_cut_aligned(gen::complete(6), gen::empty(6), CutMode::exact);
    CHECK(r.value == doctest::Approx(5.0 / 6));
    CHECK(r.value == doctest::Approx(oracle::d_cut(gen::complete(6), gen::empty(6))));
    const auto a = gen::erdos_renyi(20, 0.5, 1);
    const auto b = gen::erdos_renyi(20, 0.5, 2);
    CHECK(d_cut_aligned(a, b, CutMode::exact).value < 0.25);
    CutOptions opt;
    opt.seed = 3;
    const auto c = d_cut_aligned(gen::erdos_renyi(200, 0.5, 4), gen::erdos_renyi(200, 0.5, 5),
                                 CutMode::heuristic, opt);
    CHECK(c.value < 0.08);
    CHECK(c.value <= c.upper_bound);
    // Spectral bound on a random +-1/0 matrix: about 2 sqrt(n/2) / n.
    CHECK(c.upper_bound < 1.2 * 2 * std::sqrt(100.0) / 200);
    CHECK_THROWS_AS(d_cut_aligned(gen::complete(3), gen::complete(4), CutMode::exact),
                    std::invalid_argument);
  }

  TEST_CASE("d_cut_aligned triangle inequality") {
    Rng rng(54);
    for (int i = 0; i < 30; ++i) {
      const auto a = gen::erdos_renyi(8, uniform01(rng), rng());
      const auto b = gen::erdos_renyi(8, uniform01(rng), rng());
      const auto c = gen::erdos_renyi(8, uniform01(rng), rng());
      const double ab = d_cut_aligned(a, b, CutMode::exact).value;
      const double bc = d_cut_aligned(b, c, CutMode::exact).value;
      const double ac = d_cut_aligned(a, c, CutMode::exact).value;
      CHECK(ac <= ab + bc + 1e-12);
    }
  }

  TEST_CASE("delta_hat") {
    const auto C5 = gen::cycle(5);
    const std::vector<Node> perm{3, 1, 4, 0, 2};
    CHECK(delta_hat(C5, relabel(C5, perm), CutMode::exact).value == doctest::Approx(0.0));
    // C5 vs P5 against the permutation oracle.
    const auto P5 = gen::path(5);
    std::vector<Node> p(5);
    std::iota(p.begin(), p.end(), 0);
    double best = INFINITY;
    do {
      best = std::min(best, oracle::d_cut(C5, relabel(P5, p)));
    } while (std::next_permutation(p.begin(), p.end()));
    const auto r = delta_hat(C5, P5, CutMode::exact);
    CHECK(r.exact);
    CHECK(r.value == doctest::Approx(best).epsilon(1e-12));
    CHECK(oracle::d_cut(C5, relabel(P5, r.perm)) == doctest::Approx(best).epsilon(1e-12));
    CHECK_THROWS_AS(delta_hat(gen::cycle(9), gen::cycle(9), CutMode::exact), BoundExceeded);
  }

  TEST_CASE("delta_hat dominates delta_cut's lower bound") {
    Rng rng(55);
    for (int i = 0; i < 20; ++i) {
      const auto a = gen::erdos_renyi(6, uniform01(rng), rng());
      const auto b = gen::erdos_renyi(6, uniform01(rng), rng());
      const auto dh = delta_hat(a, b, CutMode::exact).value;
      const auto br = delta_cut(a, b);
      CHECK(br.lower <= dh + 1e-12);
      CHECK(br.lower <= br.upper + 1e-12);
    }
  }

  TEST_CASE("delta_cut examples") {
    const auto G = gen::erdos_renyi(6, 0.5, 56);
    const auto blown = delta_cut(G, blow_up(G, 2));
    CHECK(blown.lower == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(blown.lower <= blown.upper);
    const auto same = delta_cut(G, G);
    CHECK(same.lower == doctest::Approx(0.0));
    CHECK(same.upper == doctest::Approx(0.0));
    const auto er = gen::erdos_renyi(50, 0.5, 57);
    const auto tu = gen::turan(50, 2);
    const auto br = delta_cut(er, tu);
    const double k3 = std::abs(density(DensityKind::t, gen::complete(3), er) -
                               density(DensityKind::t, gen::complete(3), tu));
    CHECK(br.lower >= k3 / 3 - 1e-12);
    CHECK(br.lower <= br.upper);
  }

  TEST_CASE("overlay is a valid coupling") {
    const auto br = delta_cut(gen::cycle(4), gen::cycle(6));
    const auto& X = br.overlay.X;
    for (Eigen::Index i = 0; i < X.rows(); ++i) CHECK(X.row(i).sum() == doctest::Approx(1.0 / 4));
    for (Eigen::Index j = 0; j < X.cols(); ++j) CHECK(X.col(j).sum() == doctest::Approx(1.0 / 6));
    CHECK((X.array() >= 0).all());
    CHECK_THROWS_AS(FractionalOverlay(Eigen::MatrixXd::Constant(2, 2, 0.5)), std::invalid_argument);
  }

  TEST_CASE("counting lemma direction on delta_cut upper bound") {
    Rng rng(58);
    std::vector<SimpleGraph> catalog;
    for (int k = 2; k <= 4; ++k)
      for (const auto& F : all_graphs(k))
        if (F.num_edges() > 0) catalog.push_back(F);
    for (int i = 0; i < 15; ++i) {
      const auto a = gen::erdos_renyi(5 + static_cast<int>(uniform_index(rng, 4)), uniform01(rng), rng());
      const auto b = gen::erdos_renyi(5 + static_cast<int>(uniform_index(rng, 4)), uniform01(rng), rng());
      const auto br = delta_cut(a, b);
      for (const auto& F : catalog) {
        const double diff = std::abs(density(DensityKind::t, F, a) - density(DensityKind::t, F, b));
        CHECK(diff <= F.num_edges() * br.upper + 1e-12);
      }
    }
  }

  TEST_CASE("d_sample") {
    const auto G = gen::petersen();
    CHECK(d_sample(G, G, 4).value == 0.0);
    const auto r = d_sample(gen::complete(3), gen::empty(3), 2);
    CHECK(r.value == doctest::Approx(0.25));
    CHECK(r.truncation_error == doctest::Approx(0.25));
    const auto a = gen::erdos_renyi(9, 0.5, 59);
    const auto b = gen::erdos_renyi(9, 0.3, 60);
    double prev = -1.0;
    for (int k = 1; k <= 5; ++k) {
      const auto s = d_sample(a, b, k);
      CHECK(s.value >= prev);
      CHECK(s.truncation_error == doctest::Approx(std::pow(2.0, -k)));
      prev = s.value;
    }
  }
}
