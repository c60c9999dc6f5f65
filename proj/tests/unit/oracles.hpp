// Brute-force reference implementations. Deliberately naive: plain loops
// over all maps, subsets and permutations, sharing no code with the library
// beyond the graph types.
#ifndef GRAPHLIM_TEST_ORACLES_HPP
#define GRAPHLIM_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "graphlim/graph.hpp"

namespace oracle {

using graphlim::Multigraph;
using graphlim::Node;
using graphlim::SimpleGraph;
using graphlim::WeightedGraph;

// Calls f(phi) for all maps {0..k-1} -> {0..n-1}.
inline void for_each_map(int k, int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> phi(static_cast<std::size_t>(k), 0);
  if (k > 0 && n == 0) return;
  while (true) {
    f(phi);
    int i = k - 1;
    while (i >= 0 && phi[i] == n - 1) phi[i--] = 0;
    if (i < 0) return;
    ++phi[i];
  }
}

inline bool dense_adj(const std::vector<std::vector<int>>& A, int u, int v) { return A[u][v] != 0; }

inline std::vector<std::vector<int>> dense(const SimpleGraph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> A(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edge_list()) A[u][v] = A[v][u] = 1;
  return A;
}

enum class Kind { hom, inj, ind };

inline std::uint64_t count(Kind kind, const SimpleGraph& F, const SimpleGraph& G) {
  const auto a = dense(F);
  const auto b = dense(G);
  const int k = F.num_nodes();
  std::uint64_t total = 0;
  for_each_map(k, G.num_nodes(), [&](const std::vector<int>& phi) {
    if (kind != Kind::hom) {
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (phi[i] == phi[j]) return;
    }
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const bool e = a[i][j] != 0;
        const bool img = phi[i] != phi[j] && b[phi[i]][phi[j]] != 0;
        if (e && !img) return;
        if (kind == Kind::ind && !e && img) return;
      }
    }
    ++total;
  });
  return total;
}

inline double hom_weighted(const Multigraph& F, const WeightedGraph& H) {
  double total = 0.0;
  for_each_map(F.num_nodes(), H.num_nodes(), [&](const std::vector<int>& phi) {
    double w = 1.0;
    for (int v = 0; v < F.num_nodes(); ++v) w *= H.alpha(phi[v]);
    for (const auto& e : F.edges()) w *= std::pow(H.beta(phi[e.u], phi[e.v]), e.multiplicity);
    total += w;
  });
  return total;
}

inline bool isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) return false;
  const int n = a.num_nodes();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  const auto A = dense(a);
  const auto B = dense(b);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) ok = A[i][j] == B[p[i]][p[j]];
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// max over all S, T of |sum_{i in S, j in T} p_i p_j D_ij|.
inline double cut_norm(const Eigen::VectorXd& p, const Eigen::MatrixXd& D) {
  const int m = static_cast<int>(p.size());
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    for (std::uint32_t t = 0; t < (1u << m); ++t) {
      double v = 0.0;
      for (int i = 0; i < m; ++i) {
        if (!(s >> i & 1u)) continue;
        for (int j = 0; j < m; ++j)
          if (t >> j & 1u) v += p(i) * p(j) * D(i, j);
      }
      best = std::max(best, std::abs(v));
    }
  }
  return best;
}

inline double d_cut(const SimpleGraph& G, const SimpleGraph& H) {
  const int n = G.num_nodes();
  Eigen::MatrixXd D = G.adjacency_matrix() - H.adjacency_matrix();
  return cut_norm(Eigen::VectorXd::Constant(n, 1.0 / n), D);
}

inline double maxcut(const SimpleGraph& G) {
  const int n = G.num_nodes();
  if (n == 0) return 0.0;
  const auto edges = G.edge_list();
  std::int64_t best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    std::int64_t c = 0;
    for (auto [u, v] : edges) c += ((s >> u) ^ (s >> v)) & 1u;
    best = std::max(best, c);
  }
  return static_cast<double>(best) / (static_cast<double>(n) * n);
}

// (2/n^2) sum over edges of beta(phi u, phi v), maximized over maps into q
// classes, optionally with fixed class-size bounds.
inline double multicut(const SimpleGraph& G, const Eigen::MatrixXd& beta,
                       const std::vector<std::pair<int, int>>* sizes = nullptr) {
  const int n = G.num_nodes();
  const int q = static_cast<int>(beta.rows());
  double best = -INFINITY;
  const auto edges = G.edge_list();
  for_each_map(n, q, [&](const std::vector<int>& phi) {
    if (sizes) {
      std::vector<int> c(static_cast<std::size_t>(q), 0);
      for (int x : phi) ++c[x];
      for (int i = 0; i < q; ++i)
        if (c[i] < (*sizes)[i].first || c[i] > (*sizes)[i].second) return;
    }
    double v = 0.0;
    for (auto [u, w] : edges) v += beta(phi[u], phi[w]);
    best = std::max(best, 2.0 * v / (static_cast<double>(n) * n));
  });
  return best;
}

// sum over maps of exp(-scale * (2/n^2) sum_edges J).
inline double partition_function(const SimpleGraph& G, const Eigen::MatrixXd& J, double scale) {
  const int n = G.num_nodes();
  const auto edges = G.edge_list();
  double Z = 0.0;
  for_each_map(n, static_cast<int>(J.rows()), [&](const std::vector<int>& phi) {
    double e = 0.0;
    for (auto [u, v] : edges) e += J(phi[u], phi[v]);
    Z += std::exp(-scale * 2.0 * e / (static_cast<double>(n) * n));
  });
  return Z;
}

inline double d2(const SimpleGraph& G, Node u, Node v) {
  const int n = G.num_nodes();
  const auto A = dense(G);
  double total = 0.0;
  for (int z = 0; z < n; ++z) {
    double au = 0.0;
    double av = 0.0;
    for (int w = 0; w < n; ++w) {
      au += A[u][w] * A[z][w];
      av += A[v][w] * A[z][w];
    }
    total += std::abs(au - av) / n;
  }
  return total / n;
}

// Perfect matchings by recursion on the lowest unmatched node; parallel
// edges counted separately, loops ignored.
inline std::uint64_t perfect_matchings(const Multigraph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> M(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges())
    if (e.u != e.v) M[e.u][e.v] = M[e.v][e.u] = e.multiplicity;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<std::uint64_t()> rec = [&]() -> std::uint64_t {
    int i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) return 1;
    used[i] = true;
    std::uint64_t total = 0;
    for (int j = i + 1; j < n; ++j) {
      if (used[j] || M[i][j] == 0) continue;
      used[j] = true;
      total += static_cast<std::uint64_t>(M[i][j]) * rec();
      used[j] = false;
    }
    used[i] = false;
    return total;
  };
  return rec();
}

// t(F, W) for a step graphon by summing over all block maps.
inline double t_step(const SimpleGraph& F, const Eigen::VectorXd& p, const Eigen::MatrixXd& B,
                     bool induced = false) {
  const int k = F.num_nodes();
  const auto A = dense(F);
  double total = 0.0;
  for_each_map(k, static_cast<int>(p.size()), [&](const std::vector<int>& phi) {
    double w = 1.0;
    for (int v = 0; v < k; ++v) w *= p(phi[v]);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const double b = B(phi[i], phi[j]);
        if (A[i][j]) {
          w *= b;
        } else if (induced) {
          w *= 1.0 - b;
        }
      }
    total += w;
  });
  return total;
}

}  // namespace oracle

#endif  // GRAPHLIM_TEST_ORACLES_HPP
