#include "graphlim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "graphlim/cutmetric.hpp"
#include "graphlim/error.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/homcount.hpp"
#include "graphlim/oracle.hpp"

namespace graphlim {

double SampleDistribution::total_mass() const {
  double s = 0.0;
  for (const auto& [code, p] : probabilities) s += p;
  return s;
}

double total_variation(const SampleDistribution& a, const SampleDistribution& b) {
  double s = 0.0;
  for (const auto& [code, p] : a.probabilities) {
    auto it = b.probabilities.find(code);
    s += std::abs(p - (it == b.probabilities.end() ? 0.0 : it->second));
  }
  for (const auto& [code, p] : b.probabilities) {
    if (!a.probabilities.contains(code)) s += p;
  }
  return s / 2.0;
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Maps the edge mask of a k-node graph (pairs in lexicographic order) to a
// class index, computing canonical forms lazily.
class MaskClassifier {
 public:
  explicit MaskClassifier(int k) : k_(k), pairs_(node_pairs(k)) {
    index_.assign(std::size_t{1} << pairs_.size(), -1);
  }

  std::uint32_t mask_of(const SimpleGraph& G, std::span<const Node> nodes) const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (G.adjacent(nodes[pairs_[i].first], nodes[pairs_[i].second])) mask |= 1u << i;
    }
    return mask;
  }

  int classify(std::uint32_t mask) {
    int& slot = index_[mask];
    if (slot >= 0) return slot;
    std::vector<std::pair<Node, Node>> edges;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (mask >> i & 1u) edges.push_back(pairs_[i]);
    }
    SimpleGraph g(k_, edges);
    auto code = canonical_form(g);
    auto it = class_of_code_.find(code);
    if (it == class_of_code_.end()) {
      it = class_of_code_.emplace(code, static_cast<int>(codes_.size())).first;
      codes_.push_back(code);
      reps_.push_back(canonical_representative(g));
    }
    slot = it->second;
    return slot;
  }

  const std::vector<CanonicalCode>& codes() const { return codes_; }
  const std::vector<SimpleGraph>& reps() const { return reps_; }

 private:
  int k_;
  std::vector<std::pair<Node, Node>> pairs_;
  std::vector<int> index_;
  std::map<CanonicalCode, int> class_of_code_;
  std::vector<CanonicalCode> codes_;
  std::vector<SimpleGraph> reps_;
};

SampleDistribution finish(SampleDistribution dist, const MaskClassifier& mc,
                          const std::vector<double>& weight) {
  for (std::size_t c = 0; c < weight.size(); ++c) {
    if (weight[c] <= 0.0) continue;
    dist.probabilities[mc.codes()[c]] = weight[c];
    dist.representatives.emplace(mc.codes()[c], mc.reps()[c]);
  }
  return dist;
}

}  // namespace

SampleDistribution sigma(const SimpleGraph& G, int k, SampleMode mode, std::int64_t trials,
                         std::uint64_t seed) {
  const int n = G.num_nodes();
  if (k < 1 || k > n) throw std::invalid_argument("sigma: need 1 <= k <= n");
  if (k > 6) throw BoundExceeded("sampling.sigma_k", "k <= 6 required");
  SampleDistribution dist;
  dist.kind = SampleKind::subgraph;
  dist.size = k;
  dist.mode = mode;
  MaskClassifier mc(k);
  // Integer counts, divided once at the end.
  std::vector<double> weight;
  auto add = [&](std::span<const Node> nodes, double w) {
    const int c = mc.classify(mc.mask_of(G, nodes));
    if (static_cast<int>(weight.size()) <= c) weight.resize(static_cast<std::size_t>(c) + 1, 0.0);
    weight[c] += w;
  };
  if (mode == SampleMode::exact) {
    const double total = binomial(n, k);
    if (total > 1e8) throw BoundExceeded("sampling.sigma_subsets", "at most 1e8 subsets");
    std::vector<Node> s(static_cast<std::size_t>(k));
    std::iota(s.begin(), s.end(), 0);
    while (true) {
      add(s, 1.0);
      int i = k - 1;
      while (i >= 0 && s[i] == n - k + i) --i;
      if (i < 0) break;
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    for (auto& w : weight) w /= total;
  } else {
    if (trials < 1) throw std::invalid_argument("sigma: empirical mode needs trials >= 1");
    dist.trials = trials;
    Rng rng(seed);
    for (std::int64_t t = 0; t < trials; ++t) {
      const auto s = sample_subset(rng, n, k);
      add(s, 1.0);
    }
    for (auto& w : weight) w /= static_cast<double>(trials);
  }
  return finish(std::move(dist), mc, weight);
}

RootedBall ball(const SimpleGraph& G, Node v, int r) {
  if (v < 0 || v >= G.num_nodes()) throw std::out_of_range("ball: root outside graph");
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  std::vector<int> dist(static_cast<std::size_t>(G.num_nodes()), -1);
  std::vector<Node> order{v};
  dist[v] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Node x = order[i];
    if (dist[x] == r) continue;
    for (Node y : G.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        order.push_back(y);
      }
    }
  }
  RootedBall b;
  b.graph = induce(G, order);
  b.root = 0;
  b.radius = r;
  b.degree_bound = b.graph.num_nodes() > 0 ? b.graph.max_degree() : 0;
  return b;
}

SampleDistribution rho(const SimpleGraph& G, int r, int d, SampleMode mode, std::int64_t trials,
                       std::uint64_t seed) {
  const int n = G.num_nodes();
  if (n == 0) throw std::invalid_argument("rho: empty graph");
  if (G.max_degree() > d) throw std::invalid_argument("rho: degree bound violated");
  SampleDistribution dist;
  dist.kind = SampleKind::ball;
  dist.size = r;
  dist.degree_bound = d;
  dist.mode = mode;
  std::map<CanonicalCode, std::int64_t> counts;
  auto add = [&](Node v) {
    auto b = ball(G, v, r);
    auto code = rooted_canonical_form(b.graph, 0);
    ++counts[code];
    dist.representatives.emplace(code, std::move(b.graph));
  };
  std::int64_t total = n;
  if (mode == SampleMode::exact) {
    for (Node v = 0; v < n; ++v) add(v);
  } else {
    if (trials < 1) throw std::invalid_argument("rho: empirical mode needs trials >= 1");
    dist.trials = trials;
    total = trials;
    Rng rng(seed);
    for (std::int64_t t = 0; t < trials; ++t) {
      add(static_cast<Node>(uniform_index(rng, static_cast<std::uint64_t>(n))));
    }
  }
  for (auto& [code, c] : counts) {
    dist.probabilities[code] = static_cast<double>(c) / static_cast<double>(total);
  }
  return dist;
}

namespace {

std::vector<int> bfs_distances(const SimpleGraph& g, Node root) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_nodes()), -1);
  std::queue<Node> q;
  dist[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const Node x = q.front();
    q.pop();
    for (Node y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

// Automorphisms of g fixing node 0, by backtracking over BFS order.
std::uint64_t rooted_automorphisms(const SimpleGraph& g) {
  const int n = g.num_nodes();
  const auto dist = bfs_distances(g, 0);
  std::vector<Node> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Node a, Node b) { return dist[a] < dist[b]; });
  std::vector<Node> image(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      ++count;
      return;
    }
    const Node x = order[i];
    for (Node y = 0; y < n; ++y) {
      if (used[y] || dist[y] != dist[x] || g.degree(y) != g.degree(x)) continue;
      if (i == 0 && y != 0) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        const Node z = order[j];
        ok = g.adjacent(x, z) == g.adjacent(y, image[z]);
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = 1;
      self(self, i + 1);
      used[y] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

void add_unique(std::vector<SimpleGraph>& out, std::set<CanonicalCode>& seen, const SimpleGraph& g) {
  if (seen.insert(rooted_canonical_form(g, 0)).second) out.push_back(g);
}

}  // namespace

std::vector<SimpleGraph> enumerate_balls(int r, int d) {
  if (r < 0 || r > 2 || d < 0 || d > 3) {
    throw BoundExceeded("sampling.ball_enumeration", "r <= 2 and d <= 3 required");
  }
  std::vector<SimpleGraph> out;
  std::set<CanonicalCode> seen;
  if (r == 0 || d == 0) {
    add_unique(out, seen, SimpleGraph(1));
    return out;
  }
  for (int a = 0; a <= d; ++a) {
    const auto inner_pairs = node_pairs(a);
    for (std::uint32_t m1 = 0; m1 < (1u << inner_pairs.size()); ++m1) {
      SimpleGraph base(1 + a);
      for (int i = 1; i <= a; ++i) base.add_edge(0, i);
      for (std::size_t e = 0; e < inner_pairs.size(); ++e) {
        if (m1 >> e & 1u) base.add_edge(inner_pairs[e].first + 1, inner_pairs[e].second + 1);
      }
      if (base.max_degree() > d) continue;
      if (r == 1 || a == 0) {
        add_unique(out, seen, base);
        continue;
      }
      // Level-2 nodes: multisets of nonempty parent sets within capacity.
      std::vector<int> cap(static_cast<std::size_t>(a));
      for (int i = 0; i < a; ++i) cap[i] = d - base.degree(i + 1);
      const int subsets = (1 << a) - 1;
      std::vector<int> chosen;
      auto emit = [&]() {
        const int b = static_cast<int>(chosen.size());
        const auto outer_pairs = node_pairs(b);
        for (std::uint32_t m2 = 0; m2 < (1u << outer_pairs.size()); ++m2) {
          SimpleGraph g(1 + a + b);
          for (const auto& [u, v] : base.edge_list()) g.add_edge(u, v);
          for (int w = 0; w < b; ++w) {
            for (int i = 0; i < a; ++i) {
              if (chosen[w] >> i & 1) g.add_edge(i + 1, 1 + a + w);
            }
          }
          bool ok = true;
          for (std::size_t e = 0; e < outer_pairs.size(); ++e) {
            if (m2 >> e & 1u) g.add_edge(1 + a + outer_pairs[e].first, 1 + a + outer_pairs[e].second);
          }
          for (Node v = 0; v < g.num_nodes() && ok; ++v) ok = g.degree(v) <= d;
          if (ok) add_unique(out, seen, g);
        }
      };
      auto rec = [&](auto&& self, int min_subset) -> void {
        emit();
        for (int s = min_subset; s <= subsets; ++s) {
          bool fits = true;
          for (int i = 0; i < a; ++i) {
            if ((s >> i & 1) && cap[i] == 0) fits = false;
          }
          if (!fits) continue;
          for (int i = 0; i < a; ++i) {
            if (s >> i & 1) --cap[i];
          }
          chosen.push_back(s);
          self(self, s);
          chosen.pop_back();
          for (int i = 0; i < a; ++i) {
            if (s >> i & 1) ++cap[i];
          }
        }
      };
      rec(rec, 1);
    }
  }
  return out;
}

SampleDistribution rho_from_s(const SimpleGraph& G, int r, int d) {
  const int n = G.num_nodes();
  if (n == 0) throw std::invalid_argument("rho_from_s: empty graph");
  if (n > 30) throw BoundExceeded("sampling.rho_from_s_nodes", "n <= 30 required");
  if (G.max_degree() > d) throw std::invalid_argument("rho_from_s: degree bound violated");
  SampleDistribution dist;
  dist.kind = SampleKind::ball;
  dist.size = r;
  dist.degree_bound = d;
  dist.mode = SampleMode::exact;
  for (const auto& B : enumerate_balls(r, d)) {
    if (B.num_nodes() > n) continue;
    const auto depth = bfs_distances(B, 0);
    std::vector<int> degrees(static_cast<std::size_t>(B.num_nodes()));
    for (Node x = 0; x < B.num_nodes(); ++x) degrees[x] = depth[x] < r ? B.degree(x) : -1;
    // Degree constraints keep the search linear in n; the nominal bound does not apply.
    const auto embeddings = ind_deg(B, degrees, G, std::numeric_limits<double>::infinity());
    if (embeddings == 0) continue;
    const auto aut = rooted_automorphisms(B);
    const auto code = rooted_canonical_form(B, 0);
    dist.probabilities[code] = static_cast<double>(embeddings) / (static_cast<double>(aut) * n);
    dist.representatives.emplace(code, B);
  }
  return dist;
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 == 1 ? v[m / 2] : (v[m / 2 - 1] + v[m / 2]) / 2.0;
}

double quantile_of(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

ConcentrationReport concentration_harness(const GraphParameter& f, const SimpleGraph& G, int k,
                                          std::int64_t trials, std::uint64_t seed, double t) {
  if (k < 1 || k > G.num_nodes()) throw std::invalid_argument("concentration_harness: 1 <= k <= n");
  if (trials < 1) throw std::invalid_argument("concentration_harness: trials >= 1");
  ConcentrationReport rep;
  rep.k = k;
  rep.trials = trials;
  rep.t = t;
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const auto S = sample_subset(rng, G.num_nodes(), k);
    rep.values.push_back(f(induce(G, S)));
  }
  const double m = static_cast<double>(trials);
  rep.mean = std::accumulate(rep.values.begin(), rep.values.end(), 0.0) / m;
  double ss = 0.0;
  for (double v : rep.values) ss += (v - rep.mean) * (v - rep.mean);
  rep.std_dev = trials > 1 ? std::sqrt(ss / (m - 1)) : 0.0;
  rep.median = median_of(rep.values);
  rep.lipschitz_bound = std::sqrt(2.0 * t * k);
  rep.cut_bound = 20.0 / std::sqrt(static_cast<double>(k));
  rep.lipschitz_allowed = std::exp(-t);
  rep.cut_allowed = std::pow(2.0, -k);
  for (double v : rep.values) {
    const double dev = std::abs(v - rep.median);
    if (dev >= rep.lipschitz_bound) rep.lipschitz_violations += 1.0 / m;
    if (dev >= rep.cut_bound) rep.cut_violations += 1.0 / m;
  }
  return rep;
}

ParameterEstimate parameter_test(const GraphParameter& f, SamplingOracle& oracle, int k,
                                 std::int64_t trials, std::uint64_t seed) {
  if (k < 1 || trials < 1) throw std::invalid_argument("parameter_test: k, trials >= 1");
  ParameterEstimate est;
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    est.values.push_back(f(oracle.sample_induced(k, rng)));
  }
  est.median = median_of(est.values);
  est.q1 = quantile_of(est.values, 0.25);
  est.q3 = quantile_of(est.values, 0.75);
  return est;
}

LemmaReport sampling_lemma_aligned(const SimpleGraph& G, const SimpleGraph& H, int k,
                                   std::int64_t trials, std::uint64_t seed) {
  if (G.num_nodes() != H.num_nodes()) throw std::invalid_argument("sampling_lemma_aligned: node sets differ");
  if (G.num_nodes() > kMaxExactCutBlocks) {
    throw BoundExceeded("cutmetric.exact_blocks", "exact d_cut needs n <= 22");
  }
  if (k < 1 || k > G.num_nodes()) throw std::invalid_argument("sampling_lemma_aligned: 1 <= k <= n");
  LemmaReport rep;
  rep.k = k;
  rep.trials = trials;
  rep.bound = 10.0 / std::pow(static_cast<double>(k), 0.25);
  rep.allowed_failure = 2.0 * std::exp(-std::sqrt(static_cast<double>(k)) / 8.0);
  const double full = d_cut_aligned(G, H, CutMode::exact).value;
  int violations = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const auto S = sample_subset(rng, G.num_nodes(), k);
    const double part = d_cut_aligned(induce(G, S), induce(H, S), CutMode::exact).value;
    const double dev = std::abs(part - full);
    rep.deviations.push_back(dev);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev > rep.bound) ++violations;
  }
  rep.violation_rate = trials > 0 ? static_cast<double>(violations) / trials : 0.0;
  return rep;
}

LemmaReport sampling_lemma_unlabeled(const SimpleGraph& G, int k, std::int64_t trials,
                                     std::uint64_t seed) {
  if (k < 2 || k > G.num_nodes()) throw std::invalid_argument("sampling_lemma_unlabeled: 2 <= k <= n");
  LemmaReport rep;
  rep.k = k;
  rep.trials = trials;
  rep.bound = 10.0 / std::sqrt(std::log2(static_cast<double>(k)));
  rep.allowed_failure = std::pow(2.0, -k);
  int violations = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const auto S = sample_subset(rng, G.num_nodes(), k);
    CutOptions opt;
    opt.seed = derive_seed(seed, 1000000 + static_cast<std::uint64_t>(i));
    const double upper = delta_cut(G, induce(G, S), opt).upper;
    rep.deviations.push_back(upper);
    rep.max_deviation = std::max(rep.max_deviation, upper);
    if (upper > rep.bound) ++violations;
  }
  rep.violation_rate = trials > 0 ? static_cast<double>(violations) / trials : 0.0;
  return rep;
}

bool QuasirandomReport::passes(double tolerance) const {
  return degree_deviation <= tolerance && codegree_deviation <= tolerance &&
         hom_deviation <= tolerance && c4_deviation <= tolerance && subset_deviation <= tolerance;
}

QuasirandomReport quasirandom_battery(const SimpleGraph& G, double p, std::uint64_t seed,
                                      int subsets) {
  const int n = G.num_nodes();
  if (n < 2) throw std::invalid_argument("quasirandom_battery: n >= 2 required");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("quasirandom_battery: p in (0,1]");
  if (n > 5000) throw BoundExceeded("sampling.battery_nodes", "n <= 5000 required");
  QuasirandomReport rep;
  rep.p = p;
  const double nd = n;
  double sum_deg2 = 0.0;
  for (Node v = 0; v < n; ++v) {
    const double d = G.degree(v);
    sum_deg2 += d * d;
    rep.degree_deviation = std::max(rep.degree_deviation, std::abs(d - p * nd) / (p * nd));
  }
  // tr A^4 = sum over ordered pairs of codeg^2, the diagonal giving deg^2.
  double trace4 = sum_deg2;
  const double target = p * p * nd;
  for (Node u = 0; u < n; ++u) {
    const auto ru = G.row(u);
    for (Node v = u + 1; v < n; ++v) {
      const auto rv = G.row(v);
      int c = 0;
      for (std::size_t w = 0; w < ru.size(); ++w) c += std::popcount(ru[w] & rv[w]);
      trace4 += 2.0 * c * c;
      rep.codegree_deviation = std::max(rep.codegree_deviation, std::abs(c - target) / target);
    }
  }
  const double m = static_cast<double>(G.num_edges());
  const double tri = static_cast<double>(triangle_count(G));
  const std::vector<std::pair<std::string, std::pair<double, double>>> homs = {
      {"K2", {2.0 * m, p * nd * nd}},
      {"P3", {sum_deg2, p * p * nd * nd * nd}},
      {"K3", {6.0 * tri, p * p * p * nd * nd * nd}},
      {"C4", {trace4, std::pow(p, 4) * std::pow(nd, 4)}},
  };
  for (const auto& [name, hv] : homs) {
    const double ratio = hv.first / hv.second;
    rep.hom_ratios.emplace_back(name, ratio);
    rep.hom_deviation = std::max(rep.hom_deviation, std::abs(ratio - 1.0));
  }
  const double c4 = (trace4 - 2.0 * sum_deg2 + 2.0 * m) / 8.0;
  rep.c4_ratio = c4 / (std::pow(p, 4) * std::pow(nd, 4) / 8.0);
  rep.c4_deviation = std::max(std::abs(rep.c4_ratio - 1.0), std::abs(2.0 * m / (p * nd * nd) - 1.0));
  Rng rng(seed);
  const int half = n / 2;
  for (int s = 0; s < subsets; ++s) {
    const auto X = sample_subset(rng, n, half);
    const double e = static_cast<double>(induce(G, X).num_edges());
    rep.subset_deviation =
        std::max(rep.subset_deviation, std::abs(2.0 * e / (p * half * half) - 1.0));
  }
  return rep;
}

SimpleGraph named_graph(const std::string& name) {
  if (name == "edge") return gen::complete(2);
  if (name == "path3") return gen::path(3);
  if (name == "triangle") return gen::complete(3);
  if (name == "c4") return gen::cycle(4);
  if (name == "k4") return gen::complete(4);
  if (name == "p4") return gen::path(4);
  if (name == "star3") return gen::star(3);
  throw std::invalid_argument("unknown graph name: " + name);
}

std::vector<ConvergenceRow> convergence_diagnostic(const std::string& family,
                                                   const std::vector<int>& sizes,
                                                   const std::vector<std::string>& catalog,
                                                   std::uint64_t seed, std::int64_t samples) {
  std::vector<ConvergenceRow> rows;
  for (int n : sizes) {
    if (n > 3000) throw BoundExceeded("sampling.converge_nodes", "n <= 3000 required");
    gen::FamilyParams params;
    params.n = n;
    params.seed = derive_seed(seed, static_cast<std::uint64_t>(n));
    const SimpleGraph G = gen::by_name(family, params);
    const double nd = G.num_nodes();
    for (const auto& name : catalog) {
      ConvergenceRow row;
      row.n = G.num_nodes();
      row.F = name;
      if (name == "edge") {
        row.estimate = 2.0 * static_cast<double>(G.num_edges()) / (nd * nd);
        row.exact = true;
      } else if (name == "triangle") {
        row.estimate = 6.0 * static_cast<double>(triangle_count(G)) / (nd * nd * nd);
        row.exact = true;
      } else {
        const SimpleGraph F = named_graph(name);
        if (F.num_nodes() > 4) throw BoundExceeded("sampling.converge_pattern", "F <= 4 nodes");
        Rng rng(derive_seed(seed, 7919ULL * static_cast<std::uint64_t>(n) + F.num_nodes()));
        const auto est = density_mc(DensityKind::t, F, G, samples, rng);
        row.estimate = est.value;
        row.std_error = est.std_error;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace graphlim
