#ifndef GRAPHLIM_REGULARITY_HPP
#define GRAPHLIM_REGULARITY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "graphlim/cutmetric.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/oracle.hpp"

namespace graphlim {

/// d2(u,v) = E_z | a2(u,z) - a2(v,z) | with a2(x,y) = E_w a(x,w) a(y,w),
/// expectations uniform over V. Requires n <= 5000.
double d2_exact(const SimpleGraph& G, Node u, Node v);
/// All pairwise similarity distances.
Eigen::MatrixXd d2_matrix(const SimpleGraph& G);

struct D2SampleSizes {
  /// Number of z samples, M.
  std::int64_t outer = 0;
  /// Number of w samples, N.
  std::int64_t inner = 0;
};

/// Sample sizes giving |D2 - d2| <= accuracy with probability >= 1 - failure
/// for one pair. With f = failure / 2:
///   M = ceil(2 ln(2/f) / accuracy^2)                    (Hoeffding over z)
///   N = ceil(4 (1 + sqrt(2 ln(2/f)))^2 / accuracy^2)    (McDiarmid over w)
D2SampleSizes d2_sample_sizes(double accuracy, double failure);

/// Shared random sets Z (size M) and W (size N) and the bit matrix a(z,w).
/// D2(u,v) = (1/M) sum_z |p_u(z) - p_v(z)| with p_u(z) = (1/N) sum_w a(u,w) a(z,w).
class D2Sketch {
 public:
  D2Sketch(SamplingOracle& oracle, double accuracy, double failure, Rng& rng);

  double accuracy() const { return accuracy_; }
  double failure() const { return failure_; }
  const D2SampleSizes& sizes() const { return sizes_; }

  double distance(Handle u, Handle v);
  /// Estimated a2(u, z), one entry per distinct identity in the z sample.
  const std::vector<double>& profile(Handle u);
  /// Multiplicity of each distinct z identity; sums to sizes().outer.
  const std::vector<int>& z_multiplicity() const { return z_mult_; }

 private:
  void fill_row(Handle u, std::uint64_t* row);

  SamplingOracle& oracle_;
  double accuracy_;
  double failure_;
  D2SampleSizes sizes_;
  // z handles with equal identity share a row of a(z, .).
  std::vector<Handle> z_;
  std::vector<int> z_mult_;
  std::vector<Handle> w_;
  std::vector<Node> w_nodes_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> zw_;
  std::unordered_map<std::uint64_t, std::vector<double>> cache_;
};

/// Algorithm for one pair: fresh sketch with accuracy eps, failure eps.
double d2_estimate(SamplingOracle& oracle, Handle u, Handle v, double eps, std::uint64_t seed);

inline constexpr int kRepresentativeCap = 24;

struct RepTraceEntry {
  Handle candidate = -1;
  std::vector<double> estimates;
  bool accepted = false;
  int consecutive_rejections = 0;
};

struct RepresentativeSet {
  std::vector<Handle> reps;
  double eps = 0.0;
  /// Estimated pairwise distances among reps.
  Eigen::MatrixXd distances;
  std::vector<RepTraceEntry> trace;
  /// Halted because the size cap was reached (not by rejections).
  bool capped = false;
  int rejection_limit = 0;
  std::shared_ptr<D2Sketch> sketch;
};

struct RepOptions {
  int cap = kRepresentativeCap;
  /// Distance accuracy as a fraction of eps.
  double accuracy_factor = 0.25;
};

/// Grows R: a fresh node joins iff every estimated distance to R exceeds
/// eps/2; stops after ceil(1/eps^2) consecutive rejections or at the cap.
/// Distances are estimated to accuracy_factor*eps with failure eps/cap.
RepresentativeSet build_reps(SamplingOracle& oracle, double eps, std::uint64_t seed,
                             const RepOptions& options = {});

/// Index of the representative with the smallest estimated distance (ties to
/// the lowest index). Uses R's sketch when it is at least as accurate as
/// (eps, eps/|R|), else a fresh one seeded by `seed`.
int classify(SamplingOracle& oracle, const RepresentativeSet& R, Handle u, double eps,
             std::uint64_t seed = 0);

/// Voronoi cells of R over all nodes of the oracle's backing graph. Empty
/// cells are dropped; `cell_rep` (if given) receives the representative
/// index of each block.
Partition voronoi_partition(SamplingOracle& oracle, const RepresentativeSet& R, double eps,
                            std::vector<int>* cell_rep = nullptr);

/// alpha_i = |V_i| / n, beta_ij = e(V_i, V_j) / (|V_i| |V_j|) with e counting
/// ordered adjacent pairs (so the diagonal is 2 e(V_i) / |V_i|^2).
WeightedGraph quotient(const SimpleGraph& G, const Partition& P);

/// The n x n kernel of G_P: entry (u,v) = beta of the blocks of u and v
/// (diagonal included).
Eigen::MatrixXd partition_kernel(const SimpleGraph& G, const Partition& P);

struct RegularityQuality {
  /// d(G, G_P); exact when `exact`, else the heuristic lower bound.
  double cut_distance = 0.0;
  bool exact = false;
  /// Certified upper bound on d(G, G_P) (spectral/L1 or 24 delta).
  double cut_upper = 0.0;
  std::vector<double> class_diameters;
  /// Smallest delta found with |S| <= delta n and class diameters outside S
  /// at most delta.
  double delta = 0.0;
  std::vector<Node> exceptional;
  double bound_24delta = 0.0;
};

RegularityQuality regularity_quality(const SimpleGraph& G, const Partition& P,
                                     const CutOptions& options = {});

struct MaxCutPipelineResult {
  double estimate = 0.0;
  std::vector<int> left;
  std::vector<int> right;
  RepresentativeSet reps;
  /// Estimated class masses and pair densities of the implicit partition.
  Eigen::VectorXd class_mass;
  Eigen::MatrixXd pair_density;
  int sampled_nodes = 0;
};

struct PipelineOptions {
  RepOptions reps;
  /// Nodes sampled to estimate class densities (0 = ceil(8 / eps^2)).
  int sample_nodes = 0;
};

/// Representatives, classification of a node sample, pair densities over
/// sampled node pairs, and a brute-force max cut of the weighted graph on R.
/// Requires eps >= 0.15; throws BoundExceeded if R hits the cap.
MaxCutPipelineResult maxcut_pipeline(SamplingOracle& oracle, double eps, std::uint64_t seed,
                                     const PipelineOptions& options = {});

/// Implicit cut membership: true iff D2(u, left) < D2(u, right).
bool cut_side_left(SamplingOracle& oracle, const MaxCutPipelineResult& cut, Handle u);

}  // namespace graphlim

#endif  // GRAPHLIM_REGULARITY_HPP
