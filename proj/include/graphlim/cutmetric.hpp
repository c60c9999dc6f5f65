#ifndef GRAPHLIM_CUTMETRIC_HPP
#define GRAPHLIM_CUTMETRIC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graphlim/graph.hpp"

namespace graphlim {

/// Signed symmetric step kernel: block masses p and values D.
struct StepKernel {
  Eigen::VectorXd p;
  Eigen::MatrixXd D;

  StepKernel() = default;
  StepKernel(Eigen::VectorXd masses, Eigen::MatrixXd values);
  /// All masses 1/m.
  static StepKernel uniform(Eigen::MatrixXd values);

  int blocks() const { return static_cast<int>(p.size()); }
};

enum class CutMode { exact, heuristic };

inline constexpr int kMaxExactCutBlocks = 22;

struct CutNormResult {
  double value = 0.0;
  /// Witness block subsets, ascending.
  std::vector<int> S;
  std::vector<int> T;
  /// True if `value` is the exact cut norm; otherwise it is a lower bound.
  bool exact = false;
  /// Certified upper bound (equal to value when exact).
  double upper_bound = 0.0;
};

struct CutOptions {
  std::uint64_t seed = 0;
  int restarts = 32;
  /// Worker cap for exact enumeration; results do not depend on it.
  int threads = 1;
};

/// max over block subsets S, T of |sum_{i in S, j in T} p_i p_j D_ij|.
/// Exact mode enumerates S (Gray code) and picks T by the sign of each column
/// sum; requires m <= 22. Heuristic mode runs alternating local search.
CutNormResult cut_norm(const StepKernel& K, CutMode mode, const CutOptions& options = {});

/// min(spectral norm of P^1/2 D P^1/2, sum p_i p_j |D_ij|).
double cut_norm_upper_bound(const StepKernel& K);

/// d(G, G') for graphs on the same node set: cut norm of (A - A') with unit
/// masses 1/n. Exact mode requires n <= 22.
CutNormResult d_cut_aligned(const SimpleGraph& G, const SimpleGraph& Gp, CutMode mode,
                            const CutOptions& options = {});

struct DeltaHatResult {
  double value = 0.0;
  /// perm[v] = node of G' matched with node v of G.
  std::vector<Node> perm;
  bool exact = false;
};

/// min over bijections of d_cut_aligned. Exact for n <= 8; heuristic mode
/// anneals over permutations and returns a certified upper bound.
DeltaHatResult delta_hat(const SimpleGraph& G, const SimpleGraph& Gp, CutMode mode,
                         const CutOptions& options = {});

/// Nonnegative n x n' matrix with row sums 1/n and column sums 1/n'.
struct FractionalOverlay {
  Eigen::MatrixXd X;

  FractionalOverlay() = default;
  explicit FractionalOverlay(Eigen::MatrixXd coupling);

  /// Monotone coupling of the interval partitions induced by node orders.
  static FractionalOverlay monotone(std::span<const Node> order, std::span<const Node> order_p);
};

/// Cut value of an overlay: cut norm of the kernel (A_ik - A'_jl) on the
/// support pairs (i,j) of X with masses X_ij. Exact when the support has at
/// most 22 pairs, otherwise the certified upper bound is reported as value.
CutNormResult overlay_cut_value(const SimpleGraph& G, const SimpleGraph& Gp,
                                const FractionalOverlay& overlay, const CutOptions& options = {});

struct DeltaBracket {
  double lower = 0.0;
  double upper = 0.0;
  /// Overlay realizing the upper bound.
  FractionalOverlay overlay;
};

/// Certified bracket for the unlabeled cut distance. lower = counting-lemma
/// bound over graphs with at most 4 nodes; upper = best overlay found.
DeltaBracket delta_cut(const SimpleGraph& G, const SimpleGraph& Gp, const CutOptions& options = {});
/// max over catalog graphs F of |t(F,G) - t(F,G')| / |E(F)|.
double counting_lemma_lower(const SimpleGraph& G, const SimpleGraph& Gp);

struct SampleDistance {
  double value = 0.0;
  /// Mass of the omitted terms: 2^-kmax plus skipped k > min(n, n').
  double truncation_error = 0.0;
};

/// sum_{k <= kmax} 2^-k d_tv(sigma_{G,k}, sigma_{G',k}) with exact sigma.
SampleDistance d_sample(const SimpleGraph& G, const SimpleGraph& Gp, int kmax);

}  // namespace graphlim

#endif  // GRAPHLIM_CUTMETRIC_HPP
