#include <doctest.h>

#include <cmath>

#include "graphlim/algebra.hpp"
#include "graphlim/canonical.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/graphon.hpp"
#include "oracles.hpp"

using namespace graphlim;

namespace {

double hom_simple(const Multigraph& g, const SimpleGraph& H) {
  return static_cast<double>(oracle::count(oracle::Kind::hom, SimpleGraph(simplify(g)), H));
}

RationalQuantumGraph random_quantum(Rng& rng, int k, const std::vector<LabeledGraph>& basis) {
  RationalQuantumGraph y(k);
  for (int i = 0; i < 4; ++i) {
    const auto& g = basis[uniform_index(rng, basis.size())];
    y.add(g, Rational(static_cast<long long>(uniform_index(rng, 7)) - 3));
  }
  return y;
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("connection matrix of a multiplicative parameter at k = 0 has rank 1") {
    const auto f = hom_parameter(WeightedGraph::from_graph(gen::complete(3)));
    const auto C = connection_submatrix(f, 0, labeled_basis(0, 3));
    const auto r = psd_rank_check(C.M);
    CHECK(r.rank == 1);
    CHECK(r.is_psd);
  }

  TEST_CASE("hom(., K2) connection entries") {
    const SimpleGraph K2 = gen::complete(2);
    const auto basis = labeled_basis(1, 3);
    const auto C = connection_submatrix(hom_parameter(WeightedGraph::from_graph(K2)), 1, basis);
    REQUIRE(C.basis.size() == basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b)
        CHECK(C.M(a, b) == doctest::Approx(hom_simple(unlabel(glue(basis[a], basis[b]), false), K2)));
    const auto r = psd_rank_check(C.M);
    CHECK(r.is_psd);
    CHECK(r.rank <= 2);
  }

  TEST_CASE("empty basis") {
    const auto C = connection_submatrix(pm_parameter(), 2, {});
    CHECK(C.M.rows() == 0);
    CHECK(psd_rank_check(C.M).rank == 0);
  }

  TEST_CASE("hom(., K3) at k = 2 is PSD with rank at most 9") {
    const auto C = connection_submatrix(hom_parameter(WeightedGraph::from_graph(gen::complete(3))), 2,
                                        labeled_basis(2, 4));
    const auto r = psd_rank_check(C.M);
    CHECK(r.is_psd);
    CHECK(r.rank <= 9);
  }

  TEST_CASE("step graphon densities give PSD connection matrices") {
    Rng rng(91);
    const auto basis = labeled_basis(1, 3);
    for (int i = 0; i < 10; ++i) {
      const auto W = random_step(3, rng);
      const auto r = psd_rank_check(connection_submatrix(density_parameter(W), 1, basis).M);
      CHECK(r.is_psd);
      CHECK(r.rank <= 3);
    }
  }

  TEST_CASE("signed pairs parameter is not reflection positive") {
    const auto f = signed_pairs_parameter();
    CHECK(f(gen::complete(3).to_multigraph()) == -1.0);
    CHECK(f(gen::cycle(4).to_multigraph()) == 1.0);
    // The doubled fully labeled edge still has one adjacent pair.
    const auto C = connection_submatrix(f, 2, labeled_basis(2, 3));
    CHECK_FALSE(psd_rank_check(C.M).is_psd);
  }

  TEST_CASE("perfect matchings") {
    CHECK(perfect_matchings(gen::complete(4).to_multigraph()) == 3);
    CHECK(perfect_matchings(gen::cycle(6).to_multigraph()) == 2);
    CHECK(perfect_matchings(gen::complete(3).to_multigraph()) == 0);
    CHECK(perfect_matchings(Multigraph(0)) == 1);
    Rng rng(92);
    for (int i = 0; i < 30; ++i) {
      const int n = 2 * (1 + static_cast<int>(uniform_index(rng, 4)));
      Multigraph g(n);
      for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v)
          if (uniform01(rng) < 0.5) g.add_edge(u, v, 1 + static_cast<int>(uniform_index(rng, 3)));
      CHECK(perfect_matchings(g) == oracle::perfect_matchings(g));
    }
  }

  TEST_CASE("hat examples") {
    const auto o2 = LabeledGraph::empty(2);
    const auto k2 = labeled(2, {{0, 1}}, {0, 1});
    const auto h = hat(o2);
    CHECK(h.size() == 2);
    CHECK(h.coefficient(o2) == Rational(1));
    CHECK(h.coefficient(k2) == Rational(-1));
    CHECK(hat(k2) == RationalQuantumGraph::single(k2));
    CHECK(hat(LabeledGraph::empty(3)).size() == 8);
  }

  TEST_CASE("t(hat F, W) = t_ind(F, W)") {
    Rng rng(93);
    for (int i = 0; i < 5; ++i) {
      const auto W = random_step(3, rng);
      const auto f = density_parameter(W);
      for (int k = 2; k <= 4; ++k) {
        for (const auto& F : all_graphs(k)) {
          std::vector<Node> labels(static_cast<std::size_t>(k));
          std::iota(labels.begin(), labels.end(), 0);
          const auto x = hat(LabeledGraph(F.to_multigraph(), labels)).unlabel(false);
          const double v = x.evaluate([&](const LabeledGraph& g) { return f(g.base); });
          CHECK(v == doctest::Approx(t_ind_graphon(F, W).value).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("kernel test with perfect matchings") {
    const auto basis = labeled_basis(2, 4);
    const auto p4 = RationalQuantumGraph::single(labeled(4, {{0, 1}, {1, 2}, {2, 3}}, {0, 3}));
    const auto p3 = RationalQuantumGraph::single(labeled(3, {{0, 1}, {1, 2}}, {0, 2}));
    const auto p2 = RationalQuantumGraph::single(labeled(2, {{0, 1}}, {0, 1}));
    CHECK(kernel_test(pm_parameter(), p4 - p2, basis));
    CHECK(kernel_test(pm_parameter(), RationalQuantumGraph(2), basis));
    CHECK_FALSE(kernel_test(pm_parameter(), p3 - p2, basis));
  }

  TEST_CASE("Goodman certificate") {
    const auto check = verify_certificate(goodman_certificate(), goodman_target());
    CHECK(check.matches);
    CHECK(check.residual.empty());
    const auto target = goodman_target();
    CHECK(target.coefficient(unlabeled(gen::complete(3))) == Rational(1));
    CHECK(target.coefficient(unlabeled(gen::complete(2))) == Rational(1));
    // A wrong weight leaves a residual.
    auto bad = goodman_certificate();
    bad[0].weight = Rational(3);
    CHECK_FALSE(verify_certificate(bad, goodman_target()).matches);
    Rng rng(94);
    for (int i = 0; i < 20; ++i) {
      const auto W = random_step(4, rng);
      const auto f = density_parameter(W);
      CHECK(target.evaluate([&](const LabeledGraph& g) { return f(g.base); }) >= -1e-12);
    }
  }

  TEST_CASE("sums of squares are nonnegative on graphs") {
    Rng rng(95);
    const auto b1 = labeled_basis(1, 3);
    const auto b2 = labeled_basis(2, 3);
    for (int i = 0; i < 20; ++i) {
      std::vector<SquareTerm> terms;
      terms.push_back({Rational(1), random_quantum(rng, 1, b1)});
      terms.push_back({Rational(2), random_quantum(rng, 2, b2)});
      const auto sos = square_sum_unlabel(terms);
      const auto f = density_parameter(step_from_graph(gen::erdos_renyi(7, uniform01(rng), rng())));
      CHECK(sos.evaluate([&](const LabeledGraph& g) { return f(g.base); }) >= -1e-12);
    }
    RationalQuantumGraph a(1);
    CHECK_THROWS_AS(a += RationalQuantumGraph(2), std::invalid_argument);
  }

  TEST_CASE("inequality battery") {
    Rng rng(96);
    for (int i = 0; i < 20; ++i) {
      const auto G = gen::erdos_renyi(8, uniform01(rng), rng());
      CHECK(inequality_battery(G, gen::cycle(4)).violations() == 0);
      CHECK(inequality_battery(random_step(3, rng), gen::path(4)).violations() == 0);
    }
    // Goodman is tight on K_2 blown up: t(K3) = 0, t(K2) = 1/2.
    const auto report = inequality_battery(gen::complete_bipartite(5, 5));
    bool found = false;
    for (const auto& r : report.results) {
      if (r.name.rfind("goodman", 0) == 0) {
        found = true;
        CHECK(r.margin == doctest::Approx(0.0).epsilon(1e-12));
      }
    }
    CHECK(found);
    const auto mc = inequality_battery(builtin::ua_limit(), 20000, 97);
    CHECK(mc.violations() == 0);
    for (const auto& r : mc.results) CHECK(r.sigma >= 0.0);
  }
}
