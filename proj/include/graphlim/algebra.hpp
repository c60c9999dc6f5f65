#ifndef GRAPHLIM_ALGEBRA_HPP
#define GRAPHLIM_ALGEBRA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/quantum.hpp"

namespace graphlim {

using RationalQuantumGraph = QuantumGraph<Rational>;

/// Graph parameter on (unlabeled) multigraphs.
using GraphFunction = std::function<double(const Multigraph&)>;

/// hom(., H) with multiplicities raised as powers of beta; for H with
/// nodeweights summing to 1 this is t(., W_H).
GraphFunction hom_parameter(const WeightedGraph& H);
/// t(., W) for a step graphon.
GraphFunction density_parameter(const StepGraphon& W);
/// Number of perfect matchings, parallel edges counted separately; loops
/// ignored. At most 24 nodes.
std::uint64_t perfect_matchings(const Multigraph& g);
GraphFunction pm_parameter();
/// (-1)^(number of adjacent node pairs) of the simplified graph.
GraphFunction signed_pairs_parameter();

struct ConnectionSubmatrix {
  int k = 0;
  std::vector<LabeledGraph> basis;
  Eigen::MatrixXd M;
};

/// M(a, b) = f(unlabel(glue(basis[a], basis[b]))), isolated nodes kept.
ConnectionSubmatrix connection_submatrix(const GraphFunction& f, int k,
                                         const std::vector<LabeledGraph>& basis);

struct PsdReport {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  int rank = 0;
  Eigen::VectorXd eigenvalues;
};

/// PSD iff the least eigenvalue is >= -tol; rank counts eigenvalues above
/// tol times the largest absolute eigenvalue.
PsdReport psd_rank_check(const Eigen::MatrixXd& M, double tol = 1e-9);

/// Signed sum over all simple supergraphs F' of the fully labeled simple
/// graph F on the same nodes, coefficient (-1)^(|E(F')| - |E(F)|).
RationalQuantumGraph hat(const LabeledGraph& F);

/// True iff |f(unlabel(glue(x, y)))| <= tol for every y in the basis
/// (isolated nodes kept).
bool kernel_test(const GraphFunction& f, const RationalQuantumGraph& x,
                 const std::vector<LabeledGraph>& basis, double tol = 1e-9);

/// weight * y^2; an irrational factor like sqrt(2) on y is carried as the
/// exact weight 2.
struct SquareTerm {
  Rational weight{1};
  RationalQuantumGraph y;
};

/// sum weight_i glue(y_i, y_i) with simple gluing, unlabeled, isolated
/// nodes dropped. Each y_i has its own label count.
RationalQuantumGraph square_sum_unlabel(const std::vector<SquareTerm>& terms);

/// hat(F1)^2 + 2 (F2 - F3)^2 for F = an edge plus an isolated node; F1 has
/// all nodes labeled, F2 one edge endpoint, F3 the isolated node.
std::vector<SquareTerm> goodman_certificate();
/// K3 - 2 K2^2 + K2 as a 0-labeled quantum graph.
RationalQuantumGraph goodman_target();

struct CertificateCheck {
  bool matches = false;
  RationalQuantumGraph expanded;
  /// expanded - target.
  RationalQuantumGraph residual;
};

CertificateCheck verify_certificate(const std::vector<SquareTerm>& terms,
                                    const RationalQuantumGraph& target);

/// Labeled multigraph helper: simple edges on n nodes with the given label
/// nodes.
LabeledGraph labeled(int n, const std::vector<std::pair<Node, Node>>& edges,
                     const std::vector<Node>& labels);
/// 0-labeled graph.
LabeledGraph unlabeled(const SimpleGraph& g);

struct InequalityResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs - rhs, nonnegative when the inequality holds.
  double margin = 0.0;
  /// Standard error of the margin (0 for exact evaluation).
  double sigma = 0.0;
  bool violated = false;
  /// Conjectural inequalities are reported but never flagged.
  bool report_only = false;
};

struct InequalityReport {
  std::vector<InequalityResult> results;
  int violations() const;
};

/// Goodman, Kruskal-Katona, Erdos C4, Blakley-Roy (paths with 3..5 nodes)
/// and, if `sidorenko` is given, Sidorenko for that bipartite graph.
/// Exact inputs are violated when margin < -tol; MC inputs only when the
/// margin is below -4 sigma.
InequalityReport inequality_battery(const SimpleGraph& G,
                                    const std::optional<SimpleGraph>& sidorenko = std::nullopt,
                                    double tol = 1e-12);
InequalityReport inequality_battery(const StepGraphon& W,
                                    const std::optional<SimpleGraph>& sidorenko = std::nullopt,
                                    double tol = 1e-12);
InequalityReport inequality_battery(const Graphon& W, std::int64_t samples, std::uint64_t seed,
                                    const std::optional<SimpleGraph>& sidorenko = std::nullopt);

}  // namespace graphlim

#endif  // GRAPHLIM_ALGEBRA_HPP
