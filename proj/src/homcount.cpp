#include "graphlim/homcount.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

using Word = std::uint64_t;

/// Order nodes so each one (after the first of its component) has an
/// earlier neighbor, preferring many earlier neighbors.
std::vector<Node> search_order(const SimpleGraph& F) {
  const int k = F.num_nodes();
  std::vector<Node> order;
  std::vector<int> placed_nbrs(static_cast<std::size_t>(k), 0);
  std::vector<char> placed(static_cast<std::size_t>(k), 0);
  for (int step = 0; step < k; ++step) {
    Node best = -1;
    for (Node v = 0; v < k; ++v) {
      if (placed[v]) continue;
      if (best < 0 || placed_nbrs[v] > placed_nbrs[best] ||
          (placed_nbrs[v] == placed_nbrs[best] && F.degree(v) > F.degree(best))) {
        best = v;
      }
    }
    placed[best] = 1;
    order.push_back(best);
    for (Node u : F.neighbors(best)) ++placed_nbrs[u];
  }
  return order;
}

class Embedder {
 public:
  Embedder(const SimpleGraph& F, const SimpleGraph& G, CountKind kind,
           const std::vector<std::vector<Word>>* allowed)
      : F_(F), G_(G), kind_(kind), allowed_(allowed), words_(G.words_per_row()) {
    order_ = search_order(F);
    const int k = F.num_nodes();
    std::vector<int> level_of(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) level_of[order_[i]] = i;
    back_adj_.resize(static_cast<std::size_t>(k));
    back_non_.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < i; ++j) {
        if (F.adjacent(order_[i], order_[j])) {
          back_adj_[i].push_back(j);
        } else {
          back_non_[i].push_back(j);
        }
      }
    }
    images_.assign(static_cast<std::size_t>(k), -1);
    buffers_.assign(static_cast<std::size_t>(k), std::vector<Word>(words_));
    full_.assign(words_, ~Word{0});
    const int n = G.num_nodes();
    if (n % 64 != 0 && words_ > 0) full_.back() = (Word{1} << (n % 64)) - 1;
  }

  std::uint64_t run() {
    if (F_.num_nodes() == 0) return 1;
    if (G_.num_nodes() == 0) return 0;
    return descend(0);
  }

 private:
  std::uint64_t descend(int level) {
    auto& cand = buffers_[level];
    const Node f = order_[level];
    if (allowed_ != nullptr) {
      cand = (*allowed_)[f];
    } else {
      cand = full_;
    }
    for (int j : back_adj_[level]) {
      const auto row = G_.row(images_[j]);
      for (std::size_t w = 0; w < words_; ++w) cand[w] &= row[w];
    }
    if (kind_ == CountKind::ind) {
      for (int j : back_non_[level]) {
        const auto row = G_.row(images_[j]);
        for (std::size_t w = 0; w < words_; ++w) cand[w] &= ~row[w];
      }
    }
    if (kind_ != CountKind::hom) {
      for (int j = 0; j < level; ++j) {
        const Node v = images_[j];
        cand[static_cast<std::size_t>(v) >> 6] &= ~(Word{1} << (v & 63));
      }
    }
    if (level + 1 == F_.num_nodes()) {
      std::uint64_t total = 0;
      for (Word w : cand) total += static_cast<std::uint64_t>(std::popcount(w));
      return total;
    }
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      Word bits = cand[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        images_[level] = static_cast<Node>(w * 64 + static_cast<std::size_t>(b));
        total += descend(level + 1);
      }
    }
    return total;
  }

  const SimpleGraph& F_;
  const SimpleGraph& G_;
  CountKind kind_;
  const std::vector<std::vector<Word>>* allowed_;
  std::size_t words_;
  std::vector<Node> order_;
  std::vector<std::vector<int>> back_adj_;
  std::vector<std::vector<int>> back_non_;
  std::vector<Node> images_;
  std::vector<std::vector<Word>> buffers_;
  std::vector<Word> full_;
};

void check_work(double work, double bound, const std::string& what) {
  if (work > bound) {
    throw BoundExceeded("homcount.work_bound",
                        what + " needs " + work_text(work) + " map evaluations, bound is " +
                            work_text(bound));
  }
}

double map_space(CountKind kind, int n, int k) {
  return kind == CountKind::hom ? std::pow(static_cast<double>(n), k) : falling_factorial(n, k);
}

}  // namespace

double falling_factorial(int n, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= static_cast<double>(n - i);
  return std::max(out, 0.0);
}

std::uint64_t count(CountKind kind, const SimpleGraph& F, const SimpleGraph& G, double work_bound) {
  check_work(map_space(kind, G.num_nodes(), F.num_nodes()), work_bound, "count");
  if (kind != CountKind::hom && F.num_nodes() > G.num_nodes()) return 0;
  if (kind == CountKind::hom) {
    // hom is multiplicative over connected components.
    const auto comps = connected_components(F);
    if (comps.size() > 1) {
      std::uint64_t total = 1;
      for (const auto& c : comps) {
        total *= Embedder(induce(F, c), G, kind, nullptr).run();
        if (total == 0) break;
      }
      return total;
    }
  }
  return Embedder(F, G, kind, nullptr).run();
}

double density(DensityKind kind, const SimpleGraph& F, const SimpleGraph& G, double work_bound) {
  const int n = G.num_nodes();
  const int k = F.num_nodes();
  switch (kind) {
    case DensityKind::t:
      if (k == 0) return 1.0;
      if (n == 0) throw std::domain_error("density: empty target graph");
      return static_cast<double>(count(CountKind::hom, F, G, work_bound)) /
             std::pow(static_cast<double>(n), k);
    case DensityKind::t_inj:
    case DensityKind::t_ind: {
      if (n < k) throw std::domain_error("density: target has fewer nodes than F");
      const auto c = count(kind == DensityKind::t_inj ? CountKind::inj : CountKind::ind, F, G,
                           work_bound);
      return static_cast<double>(c) / falling_factorial(n, k);
    }
  }
  throw std::invalid_argument("density: unknown kind");
}

Estimate density_mc(DensityKind kind, const SimpleGraph& F, const SimpleGraph& G,
                    std::int64_t samples, Rng& rng) {
  const int n = G.num_nodes();
  const int k = F.num_nodes();
  if (samples < 2) throw std::invalid_argument("density_mc: need at least 2 samples");
  if (n == 0 || (kind != DensityKind::t && n < k)) {
    throw std::domain_error("density_mc: target too small");
  }
  const auto edges = F.edge_list();
  std::vector<Node> phi(static_cast<std::size_t>(k));
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    if (kind == DensityKind::t) {
      for (auto& x : phi) x = static_cast<Node>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    } else {
      phi = sample_subset(rng, n, k);
    }
    bool ok = true;
    for (auto [a, b] : edges) {
      if (!G.adjacent(phi[a], phi[b]) || phi[a] == phi[b]) {
        ok = false;
        break;
      }
    }
    if (ok && kind == DensityKind::t_ind) {
      for (Node a = 0; a < k && ok; ++a) {
        for (Node b = a + 1; b < k; ++b) {
          if (!F.adjacent(a, b) && G.adjacent(phi[a], phi[b])) {
            ok = false;
            break;
          }
        }
      }
    }
    hits += ok ? 1 : 0;
  }
  const double mean = static_cast<double>(hits) / static_cast<double>(samples);
  const double var = mean * (1.0 - mean) * static_cast<double>(samples) /
                     static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

double s_density(SparseKind kind, const SimpleGraph& F, const SimpleGraph& G, double work_bound) {
  if (!is_connected(F)) throw std::invalid_argument("s_density: F must be connected");
  if (G.num_nodes() == 0) throw std::domain_error("s_density: empty target graph");
  const CountKind ck = kind == SparseKind::s     ? CountKind::hom
                       : kind == SparseKind::s_inj ? CountKind::inj
                                                   : CountKind::ind;
  return static_cast<double>(count(ck, F, G, work_bound)) / G.num_nodes();
}

std::vector<std::pair<Node, Node>> missing_pairs(const SimpleGraph& F) {
  std::vector<std::pair<Node, Node>> out;
  for (Node i = 0; i < F.num_nodes(); ++i) {
    for (Node j = i + 1; j < F.num_nodes(); ++j) {
      if (!F.adjacent(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

SimpleGraph supergraph(const SimpleGraph& F, std::uint32_t mask) {
  const auto pairs = missing_pairs(F);
  if (pairs.size() < 32 && (mask >> pairs.size()) != 0) {
    throw std::out_of_range("supergraph: mask has bits beyond the missing pairs");
  }
  SimpleGraph out = F;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> i & 1u) out.add_edge(pairs[i].first, pairs[i].second);
  }
  return out;
}

std::vector<double> transform(Transform direction, const SimpleGraph& F,
                              std::span<const double> values) {
  if (F.num_nodes() > 5) throw BoundExceeded("homcount.transform_nodes", "|V(F)| <= 5 required");
  const std::size_t m = missing_pairs(F).size();
  const std::size_t size = std::size_t{1} << m;
  if (values.size() != size) {
    throw std::invalid_argument("transform: expected " + std::to_string(size) +
                                " values indexed by supergraph masks");
  }
  std::vector<double> out(values.begin(), values.end());
  // Superset-sum transform, one coordinate at a time; the sign flips for the
  // inverse.
  const double sign = direction == Transform::inj_from_ind ? 1.0 : -1.0;
  for (std::size_t bit = 0; bit < m; ++bit) {
    for (std::size_t mask = 0; mask < size; ++mask) {
      if (!(mask >> bit & 1u)) out[mask] += sign * out[mask | (std::size_t{1} << bit)];
    }
  }
  return out;
}

double hom_weighted(const Multigraph& F, const WeightedGraph& H, double work_bound) {
  const int k = F.num_nodes();
  const int q = H.num_nodes();
  check_work(std::pow(static_cast<double>(q), k), work_bound, "hom_weighted");
  if (k == 0) return 1.0;
  SimpleGraph shape(k);
  std::vector<int> loops(static_cast<std::size_t>(k), 0);
  for (const auto& e : F.edges()) {
    if (e.u == e.v) {
      loops[e.u] += e.multiplicity;
    } else {
      shape.add_edge(e.u, e.v);
    }
  }
  const auto order = search_order(shape);
  std::vector<int> level_of(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) level_of[order[i]] = i;
  // back[i] = (earlier level, multiplicity) for edges to earlier nodes.
  std::vector<std::vector<std::pair<int, int>>> back(static_cast<std::size_t>(k));
  for (const auto& e : F.edges()) {
    if (e.u == e.v) continue;
    int a = level_of[e.u];
    int b = level_of[e.v];
    if (a < b) std::swap(a, b);
    back[a].emplace_back(b, e.multiplicity);
  }
  std::vector<int> img(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int level) -> double {
    double total = 0.0;
    for (int c = 0; c < q; ++c) {
      double w = H.alpha(c);
      if (loops[order[level]] != 0) w *= std::pow(H.beta(c, c), loops[order[level]]);
      for (auto [j, mult] : back[level]) {
        w *= std::pow(H.beta(c, img[j]), mult);
        if (w == 0.0) break;
      }
      if (w == 0.0) continue;
      img[level] = c;
      total += level + 1 == k ? w : w * self(self, level + 1);
    }
    return total;
  };
  return rec(rec, 0);
}

std::uint64_t ind_deg(const SimpleGraph& F, std::span<const int> degrees, const SimpleGraph& G,
                      double work_bound) {
  if (static_cast<int>(degrees.size()) != F.num_nodes()) {
    throw std::invalid_argument("ind_deg: one degree entry per node of F required");
  }
  check_work(falling_factorial(G.num_nodes(), F.num_nodes()), work_bound, "ind_deg");
  if (F.num_nodes() > G.num_nodes()) return 0;
  const std::size_t words = G.words_per_row();
  std::vector<std::vector<Word>> allowed(static_cast<std::size_t>(F.num_nodes()),
                                         std::vector<Word>(words, 0));
  for (Node f = 0; f < F.num_nodes(); ++f) {
    for (Node v = 0; v < G.num_nodes(); ++v) {
      if (degrees[f] < 0 || G.degree(v) == degrees[f]) {
        allowed[f][static_cast<std::size_t>(v) >> 6] |= Word{1} << (v & 63);
      }
    }
  }
  return Embedder(F, G, CountKind::ind, &allowed).run();
}

CycleSpectrum cycle_spectrum(const SimpleGraph& G, int k) {
  if (k < 3) throw std::invalid_argument("cycle_spectrum: k >= 3 required");
  const int n = G.num_nodes();
  if (n > 2000) throw BoundExceeded("homcount.spectrum_nodes", "n <= 2000 required");
  // Closed walks of length k from each start node.
  __extension__ typedef unsigned __int128 Big;
  const Big limit = static_cast<Big>(1) << 120;
  Big closed = 0;
  std::vector<Big> cur(static_cast<std::size_t>(n));
  std::vector<Big> next(static_cast<std::size_t>(n));
  for (Node s = 0; s < n; ++s) {
    std::fill(cur.begin(), cur.end(), 0);
    cur[s] = 1;
    for (int step = 0; step < k; ++step) {
      std::fill(next.begin(), next.end(), 0);
      for (Node v = 0; v < n; ++v) {
        if (cur[v] == 0) continue;
        for (Node u : G.neighbors(v)) {
          next[u] += cur[v];
          if (next[u] > limit) throw BoundExceeded("homcount.cycle_overflow", "walk count overflow");
        }
      }
      std::swap(cur, next);
    }
    closed += cur[s];
    if (closed > limit) throw BoundExceeded("homcount.cycle_overflow", "walk count overflow");
  }
  if (closed > static_cast<Big>(UINT64_MAX)) {
    throw BoundExceeded("homcount.cycle_overflow", "hom(C_k, G) exceeds 64 bits");
  }
  CycleSpectrum out;
  out.hom = static_cast<std::uint64_t>(closed);
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(G.adjacency_matrix(),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("cycle_spectrum: eigensolver failed");
    out.eigen_sum = solver.eigenvalues().array().pow(k).sum();
  }
  const double h = static_cast<double>(out.hom);
  out.relative_difference = std::abs(h - out.eigen_sum) / std::max(1.0, h);
  return out;
}

std::uint64_t triangle_count(const SimpleGraph& G) {
  std::uint64_t total = 0;
  const std::size_t words = G.words_per_row();
  for (Node u = 0; u < G.num_nodes(); ++u) {
    const auto ru = G.row(u);
    for (Node v : G.neighbors(u)) {
      if (v <= u) continue;
      const auto rv = G.row(v);
      // Count common neighbors w > v.
      for (std::size_t w = static_cast<std::size_t>(v) >> 6; w < words; ++w) {
        Word common = ru[w] & rv[w];
        if (w == static_cast<std::size_t>(v) >> 6) {
          const int shift = (v & 63) + 1;
          common = shift == 64 ? 0 : common & (~Word{0} << shift);
        }
        total += static_cast<std::uint64_t>(std::popcount(common));
      }
    }
  }
  return total;
}

double edge_density(const SimpleGraph& G) {
  const double n = G.num_nodes();
  if (n == 0) return 0.0;
  return 2.0 * static_cast<double>(G.num_edges()) / (n * n);
}

}  // namespace graphlim
