#ifndef GRAPHLIM_GRAPHON_HPP
#define GRAPHLIM_GRAPHON_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphlim/graph.hpp"
#include "graphlim/homcount.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

/// Graphon constant on the blocks of a partition of [0,1] into consecutive
/// intervals of lengths p.
struct StepGraphon {
  Eigen::VectorXd p;
  Eigen::MatrixXd B;

  StepGraphon() = default;
  /// Throws std::invalid_argument unless p > 0 sums to 1 and B is symmetric
  /// with entries in [0,1].
  StepGraphon(Eigen::VectorXd masses, Eigen::MatrixXd values);

  int blocks() const { return static_cast<int>(p.size()); }
  /// Block containing x in [0,1).
  int block_of(double x) const;

  static StepGraphon constant(double c);
};

StepGraphon step_from_weighted(const WeightedGraph& G);
/// W_G: n blocks of mass 1/n, values = adjacency matrix.
StepGraphon step_from_graph(const SimpleGraph& G);
/// Random masses (normalized uniforms) and uniform symmetric values.
StepGraphon random_step(int blocks, Rng& rng);

enum class PointSpace { unit_interval, unit_square, bit_sequence };

/// Point of a graphon's probability space. Interval and bit-sequence points
/// use x only.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

std::uint64_t point_hash(const Point& a);

/// Graphon on an abstract probability space: a sampler for the measure and a
/// symmetric kernel with values in [0,1].
class Graphon {
 public:
  using Sampler = std::function<Point(Rng&)>;
  using Kernel = std::function<double(const Point&, const Point&)>;

  Graphon(std::string name, PointSpace space, Sampler sampler, Kernel kernel);

  const std::string& name() const { return name_; }
  PointSpace space() const { return space_; }
  Point sample(Rng& rng) const { return sampler_(rng); }
  double eval(const Point& a, const Point& b) const { return kernel_(a, b); }

  static Graphon from_step(const StepGraphon& W);

 private:
  std::string name_;
  PointSpace space_;
  Sampler sampler_;
  Kernel kernel_;
};

namespace builtin {

Graphon constant(double p);
/// 1 - max(x, y).
Graphon ua_limit();
/// 1 if x + y <= 1.
Graphon threshold();
/// On [0,1]^2: 1 if x1 < x2*y2 or x2 < x1*y1.
Graphon pfx_limit();
/// |x - y| / max(x, y).
Graphon pfx_naive();
/// 1 if sum c(i,j) x^i y^j > 0; c must be symmetric. Default x + y - 1.
Graphon poly_sign(const Eigen::MatrixXd& coefficients);
Graphon poly_sign();
/// 1 if the first binary digit (after the point) where x and y differ sits at
/// an odd position, counting from 1.
Graphon bit_parity();

std::vector<std::string> names();
/// Name lookup; `param` is p for "constant".
Graphon by_name(const std::string& name, double param = 0.5);

}  // namespace builtin

enum class DensityMethod { exact, mc };

inline constexpr std::int64_t kDefaultGraphonSamples = 100000;

/// t(F,W). Exact for step graphons (sum over block maps); Monte Carlo
/// otherwise with std_error = sample std / sqrt(samples).
Estimate t_graphon(const SimpleGraph& F, const StepGraphon& W,
                   DensityMethod method = DensityMethod::exact,
                   std::int64_t samples = kDefaultGraphonSamples, std::uint64_t seed = 0,
                   double work_bound = kDefaultWorkBound);
/// Monte Carlo only; DensityMethod::exact throws std::invalid_argument.
Estimate t_graphon(const SimpleGraph& F, const Graphon& W, DensityMethod method = DensityMethod::mc,
                   std::int64_t samples = kDefaultGraphonSamples, std::uint64_t seed = 0);

Estimate t_ind_graphon(const SimpleGraph& F, const StepGraphon& W,
                       DensityMethod method = DensityMethod::exact,
                       std::int64_t samples = kDefaultGraphonSamples, std::uint64_t seed = 0,
                       double work_bound = kDefaultWorkBound);
Estimate t_ind_graphon(const SimpleGraph& F, const Graphon& W,
                       DensityMethod method = DensityMethod::mc,
                       std::int64_t samples = kDefaultGraphonSamples, std::uint64_t seed = 0);

struct WRandomGraph {
  SimpleGraph graph;
  std::vector<Point> points;
};

/// G(n, W): latent points from stream 0 of `seed`; the edge {i,j} is present
/// iff pair_uniform(stream 1, i, j) < W(X_i, X_j).
WRandomGraph w_random(int n, const Graphon& W, std::uint64_t seed);
WRandomGraph w_random(int n, const StepGraphon& W, std::uint64_t seed);

}  // namespace graphlim

#endif  // GRAPHLIM_GRAPHON_HPP
