#ifndef GRAPHLIM_HOMCOUNT_HPP
#define GRAPHLIM_HOMCOUNT_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

enum class CountKind { hom, inj, ind };
enum class DensityKind { t, t_inj, t_ind };
enum class SparseKind { s, s_inj, s_ind };

/// Maximum number of candidate maps an exact count may range over.
inline constexpr double kDefaultWorkBound = 1e9;

/// Point estimate with its standard error (zero for exact values).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// n (n-1) ... (n-k+1) as a double.
double falling_factorial(int n, int k);

/// Exact number of homomorphisms / injective homomorphisms / induced
/// embeddings of F into G. Throws BoundExceeded("homcount.work_bound") when
/// n^k (hom) or (n)_k (inj, ind) exceeds `work_bound`.
std::uint64_t count(CountKind kind, const SimpleGraph& F, const SimpleGraph& G,
                    double work_bound = kDefaultWorkBound);

inline std::uint64_t hom(const SimpleGraph& F, const SimpleGraph& G) {
  return count(CountKind::hom, F, G);
}
inline std::uint64_t inj(const SimpleGraph& F, const SimpleGraph& G) {
  return count(CountKind::inj, F, G);
}
inline std::uint64_t ind(const SimpleGraph& F, const SimpleGraph& G) {
  return count(CountKind::ind, F, G);
}

/// t = hom / n^k, t_inj = inj / (n)_k, t_ind = ind / (n)_k.
double density(DensityKind kind, const SimpleGraph& F, const SimpleGraph& G,
               double work_bound = kDefaultWorkBound);

/// Monte Carlo estimate of t (uniform maps) or t_inj / t_ind (uniform
/// injective maps) from `samples` independent maps.
Estimate density_mc(DensityKind kind, const SimpleGraph& F, const SimpleGraph& G,
                    std::int64_t samples, Rng& rng);

/// Sparse density count / |V(G)|. F must be connected.
double s_density(SparseKind kind, const SimpleGraph& F, const SimpleGraph& G,
                 double work_bound = kDefaultWorkBound);

/// Pairs of F that are not edges, lexicographic. Supergraphs of F on V(F)
/// are indexed by bitmasks over this list.
std::vector<std::pair<Node, Node>> missing_pairs(const SimpleGraph& F);
SimpleGraph supergraph(const SimpleGraph& F, std::uint32_t mask);

enum class Transform { ind_from_inj, inj_from_ind };

/// Applies inj(F') = sum over F'' >= F' of ind(F'') (inj_from_ind) or its
/// signed inverse, to a vector indexed by the supergraph masks of F.
/// `values.size()` must be 2^(missing pairs); |V(F)| <= 5.
std::vector<double> transform(Transform direction, const SimpleGraph& F,
                              std::span<const double> values);

/// sum over phi of prod alpha_phi(u) prod beta^mult over edges (loops of F
/// use the diagonal of beta).
double hom_weighted(const Multigraph& F, const WeightedGraph& H,
                    double work_bound = kDefaultWorkBound);

/// Induced embeddings of F into G where node v of F lands on a node of
/// G-degree degrees[v]; a negative entry leaves that node unconstrained.
std::uint64_t ind_deg(const SimpleGraph& F, std::span<const int> degrees, const SimpleGraph& G,
                      double work_bound = kDefaultWorkBound);

struct CycleSpectrum {
  /// hom(C_k, G), exact.
  std::uint64_t hom = 0;
  /// sum of lambda_i^k over adjacency eigenvalues.
  double eigen_sum = 0.0;
  /// |hom - eigen_sum| / max(1, hom).
  double relative_difference = 0.0;
};
CycleSpectrum cycle_spectrum(const SimpleGraph& G, int k);

/// Number of triangles (unordered node triples).
std::uint64_t triangle_count(const SimpleGraph& G);
double edge_density(const SimpleGraph& G);

}  // namespace graphlim

#endif  // GRAPHLIM_HOMCOUNT_HPP
