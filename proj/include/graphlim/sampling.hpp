#ifndef GRAPHLIM_SAMPLING_HPP
#define GRAPHLIM_SAMPLING_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "graphlim/canonical.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

class SamplingOracle;

enum class SampleKind { subgraph, ball };
enum class SampleMode { exact, empirical };

/// Probability mass over isomorphism classes (subgraph samples) or rooted
/// isomorphism classes (balls).
struct SampleDistribution {
  SampleKind kind = SampleKind::subgraph;
  /// k for subgraph samples, r for balls.
  int size = 0;
  /// Degree bound d for balls.
  int degree_bound = 0;
  SampleMode mode = SampleMode::exact;
  std::int64_t trials = 0;
  std::map<CanonicalCode, double> probabilities;
  /// One graph per class; for balls the root is node 0.
  std::map<CanonicalCode, SimpleGraph> representatives;

  double total_mass() const;
};

/// Half the l1 distance; classes missing on one side count fully.
double total_variation(const SampleDistribution& a, const SampleDistribution& b);

/// sigma_{G,k}: distribution of G[S] for a uniform k-subset S. Exact mode
/// enumerates all k-subsets (k <= 6 and at most 1e8 subsets).
SampleDistribution sigma(const SimpleGraph& G, int k, SampleMode mode = SampleMode::exact,
                         std::int64_t trials = 0, std::uint64_t seed = 0);

struct RootedBall {
  SimpleGraph graph;
  Node root = 0;
  int radius = 0;
  int degree_bound = 0;
};

/// B_G(v, r) with the root relabeled 0 and the rest in BFS order.
RootedBall ball(const SimpleGraph& G, Node v, int r);

/// rho_{G,r}: distribution of the r-ball around a uniform node. Requires
/// max degree <= d.
SampleDistribution rho(const SimpleGraph& G, int r, int d, SampleMode mode = SampleMode::exact,
                       std::int64_t trials = 0, std::uint64_t seed = 0);

/// Rebuilds rho_{G,r} from induced counts with degree constraints: for every
/// rooted r-ball B with degrees <= d, the fraction of roots with that ball is
/// ind_deg(B, delta, G) / (|Aut_root(B)| n), where delta fixes the degree of
/// every node at distance < r and leaves boundary nodes free.
/// Requires n <= 30, d <= 3, r <= 2.
SampleDistribution rho_from_s(const SimpleGraph& G, int r, int d);

/// All rooted r-balls with maximum degree <= d, one per rooted class; root
/// is node 0. Only r <= 2, d <= 3.
std::vector<SimpleGraph> enumerate_balls(int r, int d);

using GraphParameter = std::function<double(const SimpleGraph&)>;

struct ConcentrationReport {
  int k = 0;
  std::int64_t trials = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  /// Empirical median, used as f0.
  double median = 0.0;
  double t = 0.0;
  /// sqrt(2 t k) and the fraction of samples with |f - f0| >= it.
  double lipschitz_bound = 0.0;
  double lipschitz_violations = 0.0;
  /// e^-t.
  double lipschitz_allowed = 0.0;
  /// 20 / sqrt(k) and the fraction of samples with |f - f0| >= it.
  double cut_bound = 0.0;
  double cut_violations = 0.0;
  /// 2^-k.
  double cut_allowed = 0.0;
  std::vector<double> values;
};

ConcentrationReport concentration_harness(const GraphParameter& f, const SimpleGraph& G, int k,
                                          std::int64_t trials, std::uint64_t seed, double t = 3.0);

struct ParameterEstimate {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  std::vector<double> values;
};

/// Median (and quartiles) of f over induced k-node samples drawn from the
/// oracle.
ParameterEstimate parameter_test(const GraphParameter& f, SamplingOracle& oracle, int k,
                                 std::int64_t trials, std::uint64_t seed);

struct LemmaReport {
  int k = 0;
  std::int64_t trials = 0;
  double bound = 0.0;
  /// Probability the bound may fail.
  double allowed_failure = 0.0;
  double violation_rate = 0.0;
  double max_deviation = 0.0;
  std::vector<double> deviations;
};

/// | d(G[S],H[S]) - d(G,H) | against 10 / k^(1/4), exact cut distances
/// (n <= 22).
LemmaReport sampling_lemma_aligned(const SimpleGraph& G, const SimpleGraph& H, int k,
                                   std::int64_t trials, std::uint64_t seed);
/// Upper bracket of delta(G, G[S]) against 10 / sqrt(log2 k).
LemmaReport sampling_lemma_unlabeled(const SimpleGraph& G, int k, std::int64_t trials,
                                     std::uint64_t seed);

struct QuasirandomReport {
  double p = 0.0;
  /// max |deg - pn| / (pn).
  double degree_deviation = 0.0;
  /// max over u != v of |codeg - p^2 n| / (p^2 n).
  double codegree_deviation = 0.0;
  /// max over K2, P3, K3, C4 of |hom / (p^e n^v) - 1|.
  double hom_deviation = 0.0;
  /// 4-cycle count / (p^4 n^4 / 8).
  double c4_ratio = 0.0;
  /// max(|c4_ratio - 1|, |2|E| / (p n^2) - 1|).
  double c4_deviation = 0.0;
  /// max over random half-size sets X of |2 e(X) / (p |X|^2) - 1|.
  double subset_deviation = 0.0;
  std::vector<std::pair<std::string, double>> hom_ratios;

  bool passes(double tolerance) const;
};

QuasirandomReport quasirandom_battery(const SimpleGraph& G, double p, std::uint64_t seed = 0,
                                      int subsets = 100);

struct ConvergenceRow {
  int n = 0;
  std::string F;
  double estimate = 0.0;
  double std_error = 0.0;
  bool exact = false;
};

/// Density of F in one sample graph per size. "edge" and "triangle" are
/// counted exactly; other F are estimated from `samples` random maps.
std::vector<ConvergenceRow> convergence_diagnostic(const std::string& family,
                                                   const std::vector<int>& sizes,
                                                   const std::vector<std::string>& catalog,
                                                   std::uint64_t seed,
                                                   std::int64_t samples = 100000);

/// Small named graphs: edge, path3 (P3), triangle, c4, k4, p4, star3.
SimpleGraph named_graph(const std::string& name);

}  // namespace graphlim

#endif  // GRAPHLIM_SAMPLING_HPP
