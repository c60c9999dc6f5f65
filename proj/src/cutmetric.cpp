#include "graphlim/cutmetric.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "graphlim/canonical.hpp"
#include "graphlim/error.hpp"
#include "graphlim/homcount.hpp"
#include "graphlim/random.hpp"
#include "graphlim/sampling.hpp"

namespace graphlim {

StepKernel::StepKernel(Eigen::VectorXd masses, Eigen::MatrixXd values)
    : p(std::move(masses)), D(std::move(values)) {
  const auto m = p.size();
  if (D.rows() != m || D.cols() != m) throw std::invalid_argument("StepKernel: shape mismatch");
  if (m > 0) {
    if ((p.array() < 0.0).any()) throw std::invalid_argument("StepKernel: negative mass");
    if (std::abs(p.sum() - 1.0) > 1e-9) throw std::invalid_argument("StepKernel: masses must sum to 1");
    if ((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("StepKernel: values must be symmetric");
    }
  }
}

StepKernel StepKernel::uniform(Eigen::MatrixXd values) {
  const auto m = values.rows();
  return {Eigen::VectorXd::Constant(m, m == 0 ? 0.0 : 1.0 / static_cast<double>(m)),
          std::move(values)};
}

namespace {

struct Best {
  double value = -1.0;
  std::uint32_t mask = 0;
};

bool better(const Best& a, const Best& b) {
  return a.value > b.value || (a.value == b.value && a.mask < b.mask);
}

/// Scans S = chunk bits (high) + every low-bit pattern, in Gray-code order.
Best scan_chunk(const Eigen::MatrixXd& M, int low_bits, std::uint32_t chunk) {
  const int m = static_cast<int>(M.rows());
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m);
  const std::uint32_t high = chunk << low_bits;
  for (int i = low_bits; i < m; ++i) {
    if (high >> i & 1u) col += M.row(i).transpose();
  }
  auto evaluate = [&](std::uint32_t mask, Best& best) {
    double pos = 0.0;
    double neg = 0.0;
    for (int j = 0; j < m; ++j) {
      const double c = col(j);
      if (c > 0) {
        pos += c;
      } else {
        neg -= c;
      }
    }
    const Best cand{std::max(pos, neg), mask};
    if (better(cand, best)) best = cand;
  };
  Best best;
  std::uint32_t gray = 0;
  evaluate(high, best);
  const std::uint32_t count = 1u << low_bits;
  for (std::uint32_t g = 1; g < count; ++g) {
    const int bit = std::countr_zero(g);
    gray ^= 1u << bit;
    if (gray >> bit & 1u) {
      col += M.row(bit).transpose();
    } else {
      col -= M.row(bit).transpose();
    }
    evaluate(high | gray, best);
  }
  return best;
}

std::vector<int> mask_to_list(std::uint32_t mask, int m) {
  std::vector<int> out;
  for (int i = 0; i < m; ++i) {
    if (mask >> i & 1u) out.push_back(i);
  }
  return out;
}

/// Best T and value for a fixed S given as indicator vector.
void complete_witness(const Eigen::MatrixXd& M, const std::vector<int>& S, CutNormResult& out) {
  const auto m = M.rows();
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m);
  for (int i : S) col += M.row(i).transpose();
  double pos = 0.0;
  double neg = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (col(j) > 0) pos += col(j);
    if (col(j) < 0) neg -= col(j);
  }
  const bool positive = pos >= neg;
  out.S = S;
  out.T.clear();
  for (Eigen::Index j = 0; j < m; ++j) {
    if (positive ? col(j) > 0 : col(j) < 0) out.T.push_back(static_cast<int>(j));
  }
  out.value = std::max(pos, neg);
}

CutNormResult exact_cut(const Eigen::MatrixXd& M, int threads) {
  const int m = static_cast<int>(M.rows());
  if (m > kMaxExactCutBlocks) {
    throw BoundExceeded("cutmetric.exact_blocks", std::to_string(m) + " blocks exceed " +
                                                       std::to_string(kMaxExactCutBlocks));
  }
  CutNormResult out;
  out.exact = true;
  if (m == 0) return out;
  // Fixed chunking keeps floating-point sums independent of the worker count.
  const int chunk_bits = std::min(m, 6);
  const int low_bits = m - chunk_bits;
  const std::uint32_t chunks = 1u << chunk_bits;
  std::vector<Best> results(chunks);
  std::atomic<std::uint32_t> next{0};
  auto worker = [&] {
    for (std::uint32_t c = next++; c < chunks; c = next++) results[c] = scan_chunk(M, low_bits, c);
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  if (workers == 1 || m < 14) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Best best;
  for (const auto& r : results) {
    if (better(r, best)) best = r;
  }
  complete_witness(M, mask_to_list(best.mask, m), out);
  out.upper_bound = out.value;
  return out;
}

/// Alternating maximization of |1_S^T M 1_T| from random starts.
CutNormResult heuristic_cut(const Eigen::MatrixXd& M, const CutOptions& options) {
  const auto m = M.rows();
  CutNormResult best;
  if (m == 0) return best;
  Rng rng(options.seed);
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd s(m);
      for (Eigen::Index i = 0; i < m; ++i) s(i) = uniform01(rng) < 0.5 ? 1.0 : 0.0;
      double value = -1.0;
      Eigen::VectorXd t(m);
      for (int iter = 0; iter < 100; ++iter) {
        const Eigen::VectorXd col = sign * (M.transpose() * s);
        for (Eigen::Index j = 0; j < m; ++j) t(j) = col(j) > 0 ? 1.0 : 0.0;
        const Eigen::VectorXd row = sign * (M * t);
        for (Eigen::Index i = 0; i < m; ++i) s(i) = row(i) > 0 ? 1.0 : 0.0;
        const double v = sign * s.dot(M * t);
        if (v <= value + 1e-15) break;
        value = v;
      }
      if (value > best.value) {
        best.value = value;
        best.S.clear();
        best.T.clear();
        for (Eigen::Index i = 0; i < m; ++i) {
          if (s(i) > 0) best.S.push_back(static_cast<int>(i));
          if (t(i) > 0) best.T.push_back(static_cast<int>(i));
        }
      }
    }
  }
  best.value = std::max(best.value, 0.0);
  return best;
}

Eigen::MatrixXd weighted(const StepKernel& K) {
  return K.p.asDiagonal() * K.D * K.p.asDiagonal();
}

double upper_bound_of(const StepKernel& K) {
  if (K.blocks() == 0) return 0.0;
  const Eigen::VectorXd root = K.p.cwiseSqrt();
  const Eigen::MatrixXd S = root.asDiagonal() * K.D * root.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::EigenvaluesOnly);
  double spectral = std::numeric_limits<double>::infinity();
  if (solver.info() == Eigen::Success) spectral = solver.eigenvalues().cwiseAbs().maxCoeff();
  const double l1 = weighted(K).cwiseAbs().sum();
  return std::min(spectral, l1);
}

Eigen::MatrixXd adjacency_difference(const SimpleGraph& G, const SimpleGraph& Gp) {
  return G.adjacency_matrix() - Gp.adjacency_matrix();
}

void require_same_size(const SimpleGraph& G, const SimpleGraph& Gp, const char* who) {
  if (G.num_nodes() != Gp.num_nodes()) {
    throw std::invalid_argument(std::string(who) + ": graphs must have the same number of nodes");
  }
}

}  // namespace

CutNormResult cut_norm(const StepKernel& K, CutMode mode, const CutOptions& options) {
  const Eigen::MatrixXd M = weighted(K);
  if (mode == CutMode::exact) return exact_cut(M, options.threads);
  auto out = heuristic_cut(M, options);
  out.exact = false;
  out.upper_bound = std::max(out.value, upper_bound_of(K));
  return out;
}

double cut_norm_upper_bound(const StepKernel& K) { return upper_bound_of(K); }

CutNormResult d_cut_aligned(const SimpleGraph& G, const SimpleGraph& Gp, CutMode mode,
                            const CutOptions& options) {
  require_same_size(G, Gp, "d_cut_aligned");
  return cut_norm(StepKernel::uniform(adjacency_difference(G, Gp)), mode, options);
}

DeltaHatResult delta_hat(const SimpleGraph& G, const SimpleGraph& Gp, CutMode mode,
                         const CutOptions& options) {
  require_same_size(G, Gp, "delta_hat");
  const int n = G.num_nodes();
  const Eigen::MatrixXd A = G.adjacency_matrix();
  const Eigen::MatrixXd Ap = Gp.adjacency_matrix();
  auto permuted = [&](const std::vector<Node>& perm) {
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) B(i, j) = Ap(perm[i], perm[j]);
    }
    return B;
  };
  DeltaHatResult out;
  out.perm.resize(static_cast<std::size_t>(n));
  std::iota(out.perm.begin(), out.perm.end(), 0);
  if (mode == CutMode::exact) {
    if (n > 8) throw BoundExceeded("cutmetric.delta_hat_nodes", "exact delta_hat requires n <= 8");
    std::vector<Node> perm = out.perm;
    out.value = std::numeric_limits<double>::infinity();
    do {
      const double v = exact_cut(weighted(StepKernel::uniform(A - permuted(perm))), 1).value;
      if (v < out.value) {
        out.value = v;
        out.perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.exact = true;
    return out;
  }
  // Simulated annealing over transpositions.
  Rng rng(options.seed);
  CutOptions inner = options;
  inner.restarts = 4;
  auto objective = [&](const std::vector<Node>& perm) {
    const Eigen::MatrixXd M = weighted(StepKernel::uniform(A - permuted(perm)));
    return n <= 12 ? exact_cut(M, 1).value : heuristic_cut(M, inner).value;
  };
  std::vector<Node> cur = out.perm;
  double cur_val = objective(cur);
  std::vector<Node> best = cur;
  double best_val = cur_val;
  const int iterations = n < 2 ? 0 : 300 + 40 * n;
  double temperature = 0.05;
  const double cooling = std::pow(1e-4 / 0.05, 1.0 / std::max(1, iterations));
  for (int it = 0; it < iterations; ++it) {
    const auto a = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    auto b = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    std::swap(cur[a], cur[b]);
    const double v = objective(cur);
    if (v <= cur_val || uniform01(rng) < std::exp((cur_val - v) / temperature)) {
      cur_val = v;
      if (v < best_val) {
        best_val = v;
        best = cur;
      }
    } else {
      std::swap(cur[a], cur[b]);
    }
    temperature *= cooling;
  }
  out.perm = best;
  const StepKernel K = StepKernel::uniform(A - permuted(best));
  if (n <= kMaxExactCutBlocks) {
    out.value = exact_cut(weighted(K), options.threads).value;
  } else {
    out.value = upper_bound_of(K);
  }
  out.exact = false;
  return out;
}

FractionalOverlay::FractionalOverlay(Eigen::MatrixXd coupling) : X(std::move(coupling)) {
  const auto n = X.rows();
  const auto np = X.cols();
  if (n == 0 || np == 0) throw std::invalid_argument("FractionalOverlay: empty coupling");
  if ((X.array() < 0.0).any()) throw std::invalid_argument("FractionalOverlay: negative entry");
  const Eigen::VectorXd rows = X.rowwise().sum();
  const Eigen::VectorXd cols = X.colwise().sum().transpose();
  if ((rows.array() - 1.0 / static_cast<double>(n)).abs().maxCoeff() > 1e-9 ||
      (cols.array() - 1.0 / static_cast<double>(np)).abs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("FractionalOverlay: marginals must be uniform");
  }
}

FractionalOverlay FractionalOverlay::monotone(std::span<const Node> order,
                                              std::span<const Node> order_p) {
  const auto n = static_cast<long long>(order.size());
  const auto np = static_cast<long long>(order_p.size());
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, np);
  // Node order[a] covers [a np, (a+1) np) and order_p[b] covers [b n, (b+1) n)
  // in units of 1 / (n np).
  long long a = 0;
  long long b = 0;
  long long pos = 0;
  const double unit = 1.0 / static_cast<double>(n * np);
  while (a < n && b < np) {
    const long long end = std::min((a + 1) * np, (b + 1) * n);
    X(order[a], order_p[b]) += static_cast<double>(end - pos) * unit;
    pos = end;
    if (end == (a + 1) * np) ++a;
    if (end == (b + 1) * n) ++b;
  }
  return FractionalOverlay(std::move(X));
}

namespace {

StepKernel overlay_kernel(const SimpleGraph& G, const SimpleGraph& Gp, const Eigen::MatrixXd& X) {
  std::vector<std::pair<int, int>> support;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (X(i, j) > 1e-15) support.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  const auto s = static_cast<Eigen::Index>(support.size());
  Eigen::VectorXd p(s);
  Eigen::MatrixXd D(s, s);
  for (Eigen::Index a = 0; a < s; ++a) {
    p(a) = X(support[a].first, support[a].second);
    for (Eigen::Index b = 0; b < s; ++b) {
      D(a, b) = (G.adjacent(support[a].first, support[b].first) ? 1.0 : 0.0) -
                (Gp.adjacent(support[a].second, support[b].second) ? 1.0 : 0.0);
    }
  }
  p /= p.sum();
  return {p, D};
}

}  // namespace

CutNormResult overlay_cut_value(const SimpleGraph& G, const SimpleGraph& Gp,
                                const FractionalOverlay& overlay, const CutOptions& options) {
  if (overlay.X.rows() != G.num_nodes() || overlay.X.cols() != Gp.num_nodes()) {
    throw std::invalid_argument("overlay_cut_value: overlay shape does not match graphs");
  }
  const StepKernel K = overlay_kernel(G, Gp, overlay.X);
  if (K.blocks() <= kMaxExactCutBlocks) return cut_norm(K, CutMode::exact, options);
  auto out = cut_norm(K, CutMode::heuristic, options);
  out.value = out.upper_bound;
  return out;
}

double counting_lemma_lower(const SimpleGraph& G, const SimpleGraph& Gp) {
  double best = 0.0;
  for (int k = 2; k <= 4; ++k) {
    const double work = std::pow(std::max(G.num_nodes(), Gp.num_nodes()), k);
    if (work > kDefaultWorkBound) continue;
    for (const auto& F : all_graphs(k)) {
      if (F.num_edges() == 0) continue;
      const double diff = std::abs(density(DensityKind::t, F, G) - density(DensityKind::t, F, Gp));
      best = std::max(best, diff / static_cast<double>(F.num_edges()));
    }
  }
  return best;
}

DeltaBracket delta_cut(const SimpleGraph& G, const SimpleGraph& Gp, const CutOptions& options) {
  const int n = G.num_nodes();
  const int np = Gp.num_nodes();
  if (n == 0 || np == 0) throw std::invalid_argument("delta_cut: graphs must be nonempty");
  DeltaBracket out;
  out.lower = counting_lemma_lower(G, Gp);

  auto by_degree = [](const SimpleGraph& H) {
    std::vector<Node> order(static_cast<std::size_t>(H.num_nodes()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Node a, Node b) { return H.degree(a) > H.degree(b); });
    return order;
  };
  std::vector<Node> id(static_cast<std::size_t>(n));
  std::vector<Node> idp(static_cast<std::size_t>(np));
  std::iota(id.begin(), id.end(), 0);
  std::iota(idp.begin(), idp.end(), 0);

  CutOptions quick = options;
  quick.restarts = 4;
  auto proxy = [&](const std::vector<Node>& a, const std::vector<Node>& b) {
    const StepKernel K = overlay_kernel(G, Gp, FractionalOverlay::monotone(a, b).X);
    if (K.blocks() <= 12) return cut_norm(K, CutMode::exact, quick).value;
    return cut_norm(K, CutMode::heuristic, quick).value;
  };

  std::vector<std::pair<std::vector<Node>, std::vector<Node>>> candidates = {
      {id, idp}, {by_degree(G), by_degree(Gp)}};
  // Anneal the order of G' against the degree order of G.
  {
    Rng rng(derive_seed(options.seed, 17));
    std::vector<Node> a = by_degree(G);
    std::vector<Node> cur = by_degree(Gp);
    double cur_val = proxy(a, cur);
    std::vector<Node> best = cur;
    double best_val = cur_val;
    const int iterations = np < 2 ? 0 : 200 + 20 * np;
    double temperature = 0.02;
    const double cooling = std::pow(1e-4 / 0.02, 1.0 / std::max(1, iterations));
    for (int it = 0; it < iterations; ++it) {
      const auto x = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(np)));
      auto y = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(np - 1)));
      if (y >= x) ++y;
      std::swap(cur[x], cur[y]);
      const double v = proxy(a, cur);
      if (v <= cur_val || uniform01(rng) < std::exp((cur_val - v) / temperature)) {
        cur_val = v;
        if (v < best_val) {
          best_val = v;
          best = cur;
        }
      } else {
        std::swap(cur[x], cur[y]);
      }
      temperature *= cooling;
    }
    candidates.emplace_back(a, best);
  }

  out.upper = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : candidates) {
    auto overlay = FractionalOverlay::monotone(a, b);
    const double v = overlay_cut_value(G, Gp, overlay, options).value;
    if (v < out.upper) {
      out.upper = v;
      out.overlay = std::move(overlay);
    }
  }
  return out;
}

SampleDistance d_sample(const SimpleGraph& G, const SimpleGraph& Gp, int kmax) {
  if (kmax < 1) throw std::invalid_argument("d_sample: kmax >= 1 required");
  if (kmax > 6) throw BoundExceeded("cutmetric.sample_kmax", "exact sigma requires kmax <= 6");
  SampleDistance out;
  const int limit = std::min(G.num_nodes(), Gp.num_nodes());
  for (int k = 1; k <= kmax; ++k) {
    const double weight = std::ldexp(1.0, -k);
    if (k > limit) {
      out.truncation_error += weight;
      continue;
    }
    out.value += weight * total_variation(sigma(G, k), sigma(Gp, k));
  }
  out.truncation_error += std::ldexp(1.0, -kmax);
  return out;
}

}  // namespace graphlim
