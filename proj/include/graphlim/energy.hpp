#ifndef GRAPHLIM_ENERGY_HPP
#define GRAPHLIM_ENERGY_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/homcount.hpp"

namespace graphlim {

enum class EnergyMode { exact, local };

inline constexpr int kMaxExactMaxcutNodes = 24;

struct EnergyOptions {
  EnergyMode mode = EnergyMode::exact;
  std::uint64_t seed = 0;
  int restarts = 32;
  double work_bound = kDefaultWorkBound;
};

struct CutResult {
  double value = 0.0;
  /// Class of every node of G.
  std::vector<int> assignment;
  bool exact = false;
};

/// e_G(S, V\S) / n^2 maximized over S. Local mode is a lower bound.
CutResult maxcut(const SimpleGraph& G, const EnergyOptions& options = {});

/// (1/n^2) sum_ij beta_ij e_G(S_i, S_j) for the partition given by
/// `assignment`, with e counting ordered pairs (an edge inside S_i counts
/// twice in e(S_i, S_i)). Equals (2/n^2) sum over edges of
/// beta(phi(u), phi(v)).
double multicut_value(const SimpleGraph& G, const Eigen::MatrixXd& beta,
                      const std::vector<int>& assignment);

CutResult mmcut(const SimpleGraph& G, const Eigen::MatrixXd& beta,
                const EnergyOptions& options = {});

/// Class sizes allowed by | |S_i| - alpha_i n | < 1 (alpha normalized).
/// Returns {min, max} per class; throws std::invalid_argument when no
/// integer sizes summing to n fit.
std::vector<std::pair<int, int>> balanced_size_range(const Eigen::VectorXd& alpha, int n);

/// Multicut maximized over partitions meeting the balance constraint.
CutResult rmcut(const SimpleGraph& G, const WeightedGraph& H, const EnergyOptions& options = {});

struct LogValue {
  /// Natural log; -infinity when the value is 0.
  double log = 0.0;
  double value() const;
};

/// Sum over balanced maps of the product of edge weights of `H_tilde`.
LogValue hom_star(const SimpleGraph& G, const WeightedGraph& H_tilde,
                  double work_bound = kDefaultWorkBound);

enum class SpinVariant { hard, meanfield };

/// E_phi = (2/n^2) sum over edges of J(phi(u), phi(v)).
double energy_density(const SimpleGraph& G, const Eigen::MatrixXd& J,
                      const std::vector<int>& assignment);

struct PartitionFunction {
  LogValue Z;
  /// -ln Z / n.
  double free_energy = 0.0;
  /// min_phi E_phi.
  double ground_state = 0.0;
};

/// hard: Z = sum exp(-E_phi); meanfield: Z = sum exp(-n E_phi).
PartitionFunction partition_function(const SimpleGraph& G, const Eigen::MatrixXd& J,
                                     SpinVariant variant, double work_bound = kDefaultWorkBound);

struct RightQuantities {
  LogValue hom;
  /// ln hom / n, -infinity when hom = 0.
  double u = 0.0;
  double D = 0.0;
  /// log2 hom / n^2.
  double log2_hom_density = 0.0;
};

/// sum_ij alpha_i alpha_j / alpha_H^2 (1 - beta_ij / beta_max).
double freedom(const WeightedGraph& H);

RightQuantities right_quantities(const SimpleGraph& G, const WeightedGraph& H,
                                 double work_bound = kDefaultWorkBound);

struct GraphonEnergyResult {
  double value = 0.0;
  /// split(b, c): mass of block b assigned to class c.
  Eigen::MatrixXd split;
};

/// Lower bound on sup over measure-preserving splits of
/// sum_cd beta_cd int_{S_c x S_d} W, by coordinate ascent on 2x2 cycle
/// moves of the block-by-class transport matrix.
GraphonEnergyResult energy_graphon(const StepGraphon& W, const WeightedGraph& H,
                                   std::uint64_t seed = 0, int restarts = 16);

/// The 2-node weighted graph with unit weights except the non-loop edge of
/// weight 2.
WeightedGraph cut_hom_target();

}  // namespace graphlim

#endif  // GRAPHLIM_ENERGY_HPP
