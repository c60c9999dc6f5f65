#include "graphlim/graphon.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "graphlim/error.hpp"

namespace graphlim {

StepGraphon::StepGraphon(Eigen::VectorXd masses, Eigen::MatrixXd values)
    : p(std::move(masses)), B(std::move(values)) {
  const auto m = p.size();
  if (m == 0) throw std::invalid_argument("StepGraphon: at least one block required");
  if (B.rows() != m || B.cols() != m) throw std::invalid_argument("StepGraphon: shape mismatch");
  if ((p.array() <= 0.0).any()) throw std::invalid_argument("StepGraphon: masses must be positive");
  if (std::abs(p.sum() - 1.0) > 1e-12) throw std::invalid_argument("StepGraphon: masses must sum to 1");
  if ((B - B.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("StepGraphon: values must be symmetric");
  }
  if ((B.array() < 0.0).any() || (B.array() > 1.0).any()) {
    throw std::invalid_argument("StepGraphon: values must lie in [0,1]");
  }
}

int StepGraphon::block_of(double x) const {
  double acc = 0.0;
  for (int i = 0; i + 1 < blocks(); ++i) {
    acc += p(i);
    if (x < acc) return i;
  }
  return blocks() - 1;
}

StepGraphon StepGraphon::constant(double c) {
  return {Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Constant(1, 1, c)};
}

StepGraphon step_from_weighted(const WeightedGraph& G) {
  if ((G.beta.array() < 0.0).any() || (G.beta.array() > 1.0).any()) {
    throw std::invalid_argument("step_from_weighted: edge weights must lie in [0,1]");
  }
  return {G.alpha / G.total_weight(), G.beta};
}

StepGraphon step_from_graph(const SimpleGraph& G) {
  return step_from_weighted(WeightedGraph::from_graph(G));
}

StepGraphon random_step(int blocks, Rng& rng) {
  if (blocks < 1) throw std::invalid_argument("random_step: blocks >= 1 required");
  Eigen::VectorXd p(blocks);
  for (int i = 0; i < blocks; ++i) p(i) = 0.05 + uniform01(rng);
  p /= p.sum();
  Eigen::MatrixXd B(blocks, blocks);
  for (int i = 0; i < blocks; ++i) {
    for (int j = i; j < blocks; ++j) B(i, j) = B(j, i) = uniform01(rng);
  }
  return {p, B};
}

std::uint64_t point_hash(const Point& a) {
  std::uint64_t hx = 0;
  std::uint64_t hy = 0;
  std::memcpy(&hx, &a.x, sizeof hx);
  std::memcpy(&hy, &a.y, sizeof hy);
  return splitmix64(hx ^ splitmix64(hy));
}

Graphon::Graphon(std::string name, PointSpace space, Sampler sampler, Kernel kernel)
    : name_(std::move(name)), space_(space), sampler_(std::move(sampler)), kernel_(std::move(kernel)) {}

Graphon Graphon::from_step(const StepGraphon& W) {
  return Graphon(
      "step", PointSpace::unit_interval, [](Rng& rng) { return Point{uniform01(rng), 0.0}; },
      [W](const Point& a, const Point& b) { return W.B(W.block_of(a.x), W.block_of(b.x)); });
}

namespace builtin {

namespace {

Point interval_point(Rng& rng) { return {uniform01(rng), 0.0}; }

}  // namespace

Graphon constant(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("constant graphon: p must lie in [0,1]");
  return Graphon("constant", PointSpace::unit_interval, interval_point,
                 [p](const Point&, const Point&) { return p; });
}

Graphon ua_limit() {
  return Graphon("ua_limit", PointSpace::unit_interval, interval_point,
                 [](const Point& a, const Point& b) { return 1.0 - std::max(a.x, b.x); });
}

Graphon threshold() {
  return Graphon("threshold", PointSpace::unit_interval, interval_point,
                 [](const Point& a, const Point& b) { return a.x + b.x <= 1.0 ? 1.0 : 0.0; });
}

Graphon pfx_limit() {
  return Graphon(
      "pfx_limit", PointSpace::unit_square,
      [](Rng& rng) {
        const double x = uniform01(rng);
        return Point{x, uniform01(rng)};
      },
      [](const Point& a, const Point& b) {
        return (a.x < b.x * b.y || b.x < a.x * a.y) ? 1.0 : 0.0;
      });
}

Graphon pfx_naive() {
  return Graphon("pfx_naive", PointSpace::unit_interval, interval_point,
                 [](const Point& a, const Point& b) {
                   const double m = std::max(a.x, b.x);
                   return m == 0.0 ? 0.0 : std::abs(a.x - b.x) / m;
                 });
}

Graphon poly_sign(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols() || c.size() == 0) {
    throw std::invalid_argument("poly_sign: square coefficient matrix required");
  }
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 0.0) {
    throw std::invalid_argument("poly_sign: polynomial must be symmetric");
  }
  return Graphon("poly_sign", PointSpace::unit_interval, interval_point,
                 [c](const Point& a, const Point& b) {
                   double value = 0.0;
                   double xi = 1.0;
                   for (Eigen::Index i = 0; i < c.rows(); ++i) {
                     double yj = 1.0;
                     for (Eigen::Index j = 0; j < c.cols(); ++j) {
                       value += c(i, j) * xi * yj;
                       yj *= b.x;
                     }
                     xi *= a.x;
                   }
                   return value > 0.0 ? 1.0 : 0.0;
                 });
}

Graphon poly_sign() {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 2);
  c(0, 0) = -1.0;
  c(1, 0) = 1.0;
  c(0, 1) = 1.0;
  return poly_sign(c);
}

Graphon bit_parity() {
  return Graphon("bit_parity", PointSpace::bit_sequence, interval_point,
                 [](const Point& a, const Point& b) {
                   const auto xa = static_cast<std::uint64_t>(std::ldexp(a.x, 62));
                   const auto xb = static_cast<std::uint64_t>(std::ldexp(b.x, 62));
                   const std::uint64_t diff = xa ^ xb;
                   if (diff == 0) return 0.0;
                   // Digit 1 after the point is bit 61.
                   const int position = std::countl_zero(diff) - 1;
                   return position % 2 == 1 ? 1.0 : 0.0;
                 });
}

std::vector<std::string> names() {
  return {"constant", "ua_limit", "threshold", "pfx_limit", "pfx_naive", "poly_sign", "bit_parity"};
}

Graphon by_name(const std::string& name, double param) {
  if (name == "constant") return constant(param);
  if (name == "ua_limit") return ua_limit();
  if (name == "threshold") return threshold();
  if (name == "pfx_limit") return pfx_limit();
  if (name == "pfx_naive") return pfx_naive();
  if (name == "poly_sign") return poly_sign();
  if (name == "bit_parity") return bit_parity();
  throw std::invalid_argument("unknown builtin graphon: " + name);
}

}  // namespace builtin

namespace {

Estimate step_exact(const SimpleGraph& F, const StepGraphon& W, bool induced, double work_bound) {
  const int k = F.num_nodes();
  const int m = W.blocks();
  const double work = std::pow(static_cast<double>(m), k);
  if (work > work_bound) {
    throw BoundExceeded("graphon.work_bound", work_text(work) + " block maps exceed bound " + work_text(work_bound));
  }
  if (k == 0) return {1.0, 0.0};
  std::vector<int> img(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int level) -> double {
    double total = 0.0;
    for (int c = 0; c < m; ++c) {
      double w = W.p(c);
      for (int j = 0; j < level && w != 0.0; ++j) {
        const double b = W.B(c, img[j]);
        if (F.adjacent(level, j)) {
          w *= b;
        } else if (induced) {
          w *= 1.0 - b;
        }
      }
      if (w == 0.0) continue;
      img[level] = c;
      total += level + 1 == k ? w : w * self(self, level + 1);
    }
    return total;
  };
  return {rec(rec, 0), 0.0};
}

Estimate monte_carlo(const SimpleGraph& F, const Graphon& W, bool induced, std::int64_t samples,
                     std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("graphon Monte Carlo: need at least 2 samples");
  const int k = F.num_nodes();
  Rng rng(seed);
  std::vector<Point> pts(static_cast<std::size_t>(k));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (auto& x : pts) x = W.sample(rng);
    double w = 1.0;
    for (Node a = 0; a < k && w != 0.0; ++a) {
      for (Node b = a + 1; b < k; ++b) {
        if (F.adjacent(a, b)) {
          w *= W.eval(pts[a], pts[b]);
        } else if (induced) {
          w *= 1.0 - W.eval(pts[a], pts[b]);
        }
        if (w == 0.0) break;
      }
    }
    sum += w;
    sum_sq += w * w;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace

Estimate t_graphon(const SimpleGraph& F, const StepGraphon& W, DensityMethod method,
                   std::int64_t samples, std::uint64_t seed, double work_bound) {
  if (method == DensityMethod::exact) return step_exact(F, W, false, work_bound);
  return monte_carlo(F, Graphon::from_step(W), false, samples, seed);
}

Estimate t_graphon(const SimpleGraph& F, const Graphon& W, DensityMethod method,
                   std::int64_t samples, std::uint64_t seed) {
  if (method == DensityMethod::exact) {
    throw std::invalid_argument("t_graphon: exact evaluation needs a step graphon");
  }
  return monte_carlo(F, W, false, samples, seed);
}

Estimate t_ind_graphon(const SimpleGraph& F, const StepGraphon& W, DensityMethod method,
                       std::int64_t samples, std::uint64_t seed, double work_bound) {
  if (method == DensityMethod::exact) return step_exact(F, W, true, work_bound);
  return monte_carlo(F, Graphon::from_step(W), true, samples, seed);
}

Estimate t_ind_graphon(const SimpleGraph& F, const Graphon& W, DensityMethod method,
                       std::int64_t samples, std::uint64_t seed) {
  if (method == DensityMethod::exact) {
    throw std::invalid_argument("t_ind_graphon: exact evaluation needs a step graphon");
  }
  return monte_carlo(F, W, true, samples, seed);
}

WRandomGraph w_random(int n, const Graphon& W, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("w_random: n >= 1 required");
  Rng rng(derive_seed(seed, 0));
  WRandomGraph out{SimpleGraph(n), {}};
  out.points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.points.push_back(W.sample(rng));
  const std::uint64_t pair_seed = derive_seed(seed, 1);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      const double w = W.eval(out.points[i], out.points[j]);
      if (pair_uniform(pair_seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)) < w) {
        out.graph.add_edge(i, j);
      }
    }
  }
  return out;
}

WRandomGraph w_random(int n, const StepGraphon& W, std::uint64_t seed) {
  return w_random(n, Graphon::from_step(W), seed);
}

}  // namespace graphlim
