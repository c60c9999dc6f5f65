#include <doctest.h>

#include <set>
#include <stdexcept>

#include "graphlim/algebra.hpp"
#include "graphlim/canonical.hpp"
#include "graphlim/error.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/homcount.hpp"
#include "graphlim/random.hpp"
#include "oracles.hpp"

using namespace graphlim;

namespace {

LabeledGraph edge1() {
  // Edge with one endpoint labeled.
  return LabeledGraph(Multigraph(2, std::vector<std::pair<Node, Node>>{{0, 1}}), {0});
}

LabeledGraph random_labeled(Rng& rng, int k) {
  const int n = k + static_cast<int>(uniform_index(rng, 3));
  Multigraph g(n);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (uniform01(rng) < 0.4) g.add_edge(u, v, 1 + static_cast<int>(uniform_index(rng, 2)));
  std::vector<Node> labels(static_cast<std::size_t>(k));
  std::iota(labels.begin(), labels.end(), 0);
  return {g, labels};
}

}  // namespace

TEST_SUITE("graph-core") {
  TEST_CASE("multigraph and simple graph basics") {
    Multigraph m(3, std::vector<std::pair<Node, Node>>{{0, 1}, {1, 0}, {1, 2}});
    CHECK(m.multiplicity(0, 1) == 2);
    CHECK(m.num_edges() == 3);
    CHECK_FALSE(m.is_simple());
    CHECK_THROWS_AS(Multigraph(2).add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(Multigraph(2).add_edge(0, 2), std::out_of_range);
    CHECK_THROWS_AS(SimpleGraph{m}, std::invalid_argument);
    const SimpleGraph c5 = gen::cycle(5);
    CHECK(c5.num_edges() == 5);
    CHECK(c5.adjacent(0, 4));
    CHECK_FALSE(c5.adjacent(0, 2));
  }

  TEST_CASE("glue examples") {
    // Two 1-labeled edges give a path with the labeled node in the middle.
    const LabeledGraph p = glue(edge1(), edge1());
    CHECK(p.num_nodes() == 3);
    CHECK(p.base.degree(p.labels[0]) == 2);
    CHECK(oracle::isomorphic(SimpleGraph(p.base), gen::path(3)));
    // O_k is the unit.
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
      const auto F = random_labeled(rng, 2);
      CHECK(canonical_form(glue(F, LabeledGraph::empty(2))) == canonical_form(F));
    }
    // Fully labeled K2 squared is a double edge.
    const LabeledGraph k2(Multigraph(2, std::vector<std::pair<Node, Node>>{{0, 1}}), {0, 1});
    CHECK(glue(k2, k2).base.multiplicity(0, 1) == 2);
    CHECK_THROWS_AS(glue(edge1(), k2), std::invalid_argument);
  }

  TEST_CASE("glue is commutative and associative up to isomorphism") {
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
      const int k = static_cast<int>(uniform_index(rng, 3));
      const auto a = random_labeled(rng, k);
      const auto b = random_labeled(rng, k);
      const auto c = random_labeled(rng, k);
      CHECK(canonical_form(glue(a, b)) == canonical_form(glue(b, a)));
      CHECK(canonical_form(glue(glue(a, b), c)) == canonical_form(glue(a, glue(b, c))));
    }
  }

  TEST_CASE("unlabel of a fully labeled square doubles multiplicities") {
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
      const auto F = random_labeled(rng, 3);
      LabeledGraph full(F.base, {});
      for (Node v = 0; v < F.num_nodes(); ++v) full.labels.push_back(v);
      const Multigraph sq = unlabel(glue(full, full), false);
      for (const auto& e : F.base.edges()) CHECK(sq.multiplicity(e.u, e.v) == 2 * e.multiplicity);
      CHECK(sq.num_edges() == 2 * F.base.num_edges());
    }
  }

  TEST_CASE("tensor examples") {
    const LabeledGraph k1(Multigraph(1), {0});
    const auto t = tensor(k1, k1);
    CHECK(t.k() == 2);
    CHECK(t.num_nodes() == 2);
    CHECK(t.base.num_edges() == 0);
    const auto ee = tensor(edge1(), edge1());
    CHECK(ee.k() == 2);
    CHECK(ee.base.num_edges() == 2);
    CHECK(ee.base.multiplicity(ee.labels[0], ee.labels[1]) == 0);
    const LabeledGraph a = unlabeled(gen::cycle(4));
    const LabeledGraph b = unlabeled(gen::complete(3));
    CHECK(canonical_form(tensor(a, b)) == canonical_form(glue(a, b)));
  }

  TEST_CASE("unlabel examples") {
    const LabeledGraph tri(gen::complete(3).to_multigraph(), {0, 1});
    CHECK(unlabel(tri, false) == gen::complete(3).to_multigraph());
    // Labeled edge plus isolated labeled node.
    const LabeledGraph e(Multigraph(3, std::vector<std::pair<Node, Node>>{{0, 1}}), {0, 1, 2});
    CHECK(unlabel(e, true).num_nodes() == 2);
    CHECK(unlabel(e, false).num_nodes() == 3);
    CHECK(unlabel(LabeledGraph::empty(3), true).num_nodes() == 0);
  }

  TEST_CASE("blow_up") {
    CHECK(oracle::isomorphic(blow_up(gen::complete(2), 2), gen::cycle(4)));
    CHECK(blow_up(gen::complete(1), 5).num_edges() == 0);
    CHECK(blow_up(gen::complete(1), 5).num_nodes() == 5);
    CHECK(oracle::isomorphic(blow_up(gen::complete(3), 2), gen::turan(6, 3)));
    CHECK_THROWS_AS(blow_up(gen::complete(2), 0), std::invalid_argument);
    Rng rng(14);
    for (int i = 0; i < 20; ++i) {
      const auto G = gen::erdos_renyi(7, 0.5, rng());
      const int m = 1 + static_cast<int>(uniform_index(rng, 4));
      CHECK(blow_up(G, m).num_edges() == m * m * G.num_edges());
    }
  }

  TEST_CASE("induce") {
    const auto P = gen::petersen();
    std::vector<Node> all(10);
    std::iota(all.begin(), all.end(), 0);
    CHECK(induce(P, all) == P);
    const std::vector<Node> adj{2, 3};
    CHECK(induce(gen::cycle(5), adj).num_edges() == 1);
    int independent = 0;
    for (Node a = 0; a < 10; ++a)
      for (Node b = a + 1; b < 10; ++b)
        for (Node c = b + 1; c < 10; ++c) {
          if (P.adjacent(a, b) || P.adjacent(a, c) || P.adjacent(b, c)) continue;
          ++independent;
          const std::vector<Node> s{a, b, c};
          CHECK(induce(P, s).num_edges() == 0);
        }
    CHECK(independent > 0);
    const std::vector<Node> bad{0, 10};
    CHECK_THROWS(induce(P, bad));
  }

  TEST_CASE("generators") {
    CHECK(oracle::isomorphic(gen::paley(5), gen::cycle(5)));
    CHECK(oracle::isomorphic(gen::turan(6, 3), blow_up(gen::complete(3), 2)));
    CHECK_THROWS_AS(gen::paley(7), std::invalid_argument);
    CHECK_THROWS_AS(gen::paley(15), std::invalid_argument);
    const auto P13 = gen::paley(13);
    CHECK(P13.num_edges() == 13 * 6 / 2);
    CHECK(gen::threshold(4).num_edges() == 2);  // 1+2<=4 and 1+3<=4.
    CHECK(gen::grid(3).num_edges() == 12);
    CHECK(gen::petersen().num_edges() == 15);
    const auto S = gen::random_subcubic(30, 5);
    CHECK(S.max_degree() <= 3);
  }

  TEST_CASE("generators are reproducible") {
    for (const auto& fam : gen::family_names()) {
      gen::FamilyParams p;
      p.n = fam == "paley" ? 13 : 12;
      p.seed = 99;
      CHECK(gen::by_name(fam, p) == gen::by_name(fam, p));
    }
    CHECK_FALSE(gen::erdos_renyi(30, 0.5, 1) == gen::erdos_renyi(30, 0.5, 2));
  }

  TEST_CASE("uniform attachment non-adjacency frequency is j/n") {
    const int n = 8;
    const int seeds = 10000;
    std::vector<std::vector<int>> nonadj(n, std::vector<int>(n, 0));
    for (int s = 0; s < seeds; ++s) {
      const auto G = gen::uniform_attachment(n, derive_seed(77, static_cast<std::uint64_t>(s)));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (!G.adjacent(i, j)) ++nonadj[i][j];
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double p = static_cast<double>(j) / n;
        const double sd = std::sqrt(p * (1 - p) / seeds);
        CHECK(std::abs(nonadj[i][j] / static_cast<double>(seeds) - p) <= 4.5 * sd + 1e-12);
      }
  }

  TEST_CASE("uniform attachment expected edge count") {
    const int n = 40;
    const int seeds = 2000;
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
      total += static_cast<double>(gen::uniform_attachment(n, derive_seed(78, s)).num_edges());
    }
    const double expected = (n * n - 1) / 6.0;
    // Edge count variance is at most n^2/8 (independent pairs).
    CHECK(std::abs(total / seeds - expected) <= 4.0 * std::sqrt(n * n / 8.0 / seeds));
  }

  TEST_CASE("prefix attachment process") {
    const auto pa = gen::prefix_attachment_process(50, 3);
    for (int k = 0; k < 50; ++k) {
      CHECK(pa.prefix[k] <= k);
      for (int i = 0; i < k; ++i) CHECK(pa.graph.adjacent(i, k) == (i < pa.prefix[k]));
    }
  }

  TEST_CASE("canonical form") {
    const auto c4 = gen::cycle(4);
    const std::vector<Node> perm{2, 0, 3, 1};
    CHECK(canonical_form(c4) == canonical_form(relabel(c4, perm)));
    CHECK(canonical_form(gen::path(4)) != canonical_form(gen::star(3)));
    std::set<CanonicalCode> codes;
    for (const auto& g : all_labeled_graphs(4)) codes.insert(canonical_form(g));
    CHECK(codes.size() == 11);
    CHECK(all_graphs(5).size() == 34);
    CHECK_THROWS_AS(canonical_form(gen::empty(11)), BoundExceeded);
  }

  TEST_CASE("canonical form agrees with permutation isomorphism") {
    Rng rng(15);
    for (int i = 0; i < 200; ++i) {
      const int n = 2 + static_cast<int>(uniform_index(rng, 5));
      const auto a = gen::erdos_renyi(n, 0.5, rng());
      const auto b = gen::erdos_renyi(n, 0.5, rng());
      CHECK((canonical_form(a) == canonical_form(b)) == oracle::isomorphic(a, b));
    }
  }

  TEST_CASE("rooted canonical form respects the root") {
    const auto p3 = gen::path(3);
    CHECK(rooted_canonical_form(p3, 0) == rooted_canonical_form(p3, 2));
    CHECK(rooted_canonical_form(p3, 0) != rooted_canonical_form(p3, 1));
  }

  TEST_CASE("partition validation") {
    CHECK_THROWS_AS(Partition(3, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(3, {{0, 1, 2}, {}}), std::invalid_argument);
    const auto p = Partition::from_assignment(std::vector<int>{1, 0, 1});
    CHECK(p.num_blocks() == 2);
    CHECK(p.block_of(0) == p.block_of(2));
  }
}
