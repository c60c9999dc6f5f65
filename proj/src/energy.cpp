#include "graphlim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphlim/error.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

void check_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": nonempty square matrix required");
  }
  if (!m.isApprox(m.transpose(), 1e-12) && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument(std::string(what) + ": matrix must be symmetric");
  }
}

void check_maps(int q, int n, double work_bound) {
  if (std::pow(static_cast<double>(q), n) > work_bound) {
    throw BoundExceeded("energy.work_bound", "q^n = " + std::to_string(q) + "^" + std::to_string(n) +
                                                 " exceeds the enumeration bound");
  }
}

// Depth-first enumeration of maps V(G) -> [q]. Each leaf receives
// sum_v node(phi(v)) + sum over edges edge(phi(u), phi(v)). Optional size
// ranges restrict the class sizes. Partial sums equal to -inf are pruned.
struct MapEnumerator {
  const SimpleGraph& G;
  const Eigen::MatrixXd& edge;
  Eigen::VectorXd node;
  std::vector<std::pair<int, int>> sizes;
  bool fix_first = false;

  template <class Leaf>
  void run(Leaf&& leaf) {
    const int n = G.num_nodes();
    const int q = static_cast<int>(edge.rows());
    std::vector<int> phi(static_cast<std::size_t>(n), 0);
    std::vector<int> count(static_cast<std::size_t>(q), 0);
    int min_needed = 0;
    for (const auto& r : sizes) min_needed += r.first;
    auto rec = [&](auto&& self, int v, double partial, int still_needed) -> void {
      if (v == n) {
        leaf(partial, phi);
        return;
      }
      const int last = fix_first && v == 0 ? 1 : q;
      for (int c = 0; c < last; ++c) {
        int needed = still_needed;
        if (!sizes.empty()) {
          if (count[c] >= sizes[c].second) continue;
          if (count[c] < sizes[c].first) --needed;
          // Remaining nodes after v must cover the unmet minimums.
          if (needed > n - v - 1) continue;
        }
        double s = partial + node(c);
        for (Node u : G.neighbors(v)) {
          if (u < v) s += edge(c, phi[u]);
        }
        if (s == kNegInf) continue;
        phi[v] = c;
        ++count[c];
        self(self, v + 1, s, needed);
        --count[c];
      }
    };
    if (n == 0) {
      leaf(0.0, phi);
      return;
    }
    rec(rec, 0, 0.0, min_needed);
  }
};

double scale(int n) { return n == 0 ? 0.0 : 2.0 / (static_cast<double>(n) * n); }

// Local search over single-node moves (within the size ranges) and swaps.
CutResult local_multicut(const SimpleGraph& G, const Eigen::MatrixXd& beta,
                         const std::vector<std::pair<int, int>>& sizes,
                         const EnergyOptions& options) {
  const int n = G.num_nodes();
  const int q = static_cast<int>(beta.rows());
  Rng rng(options.seed);
  CutResult best;
  best.value = kNegInf;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    std::vector<int> phi(static_cast<std::size_t>(n));
    std::vector<int> count(static_cast<std::size_t>(q), 0);
    if (sizes.empty()) {
      for (auto& c : phi) c = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(q)));
    } else {
      // Random node order filled to the minimum sizes, then the slack.
      auto order = sample_subset(rng, n, n);
      std::vector<int> target(static_cast<std::size_t>(q));
      int used = 0;
      for (int c = 0; c < q; ++c) used += target[c] = sizes[c].first;
      for (int c = 0; c < q && used < n; ++c) {
        const int add = std::min(sizes[c].second - target[c], n - used);
        target[c] += add;
        used += add;
      }
      int pos = 0;
      for (int c = 0; c < q; ++c) {
        for (int i = 0; i < target[c]; ++i) phi[order[pos++]] = c;
      }
    }
    for (int c : phi) ++count[c];
    auto gain = [&](Node v, int c) {
      double g = 0.0;
      for (Node u : G.neighbors(v)) g += beta(c, phi[u]) - beta(phi[v], phi[u]);
      return g;
    };
    bool improved = true;
    while (improved) {
      improved = false;
      for (Node v = 0; v < n; ++v) {
        for (int c = 0; c < q; ++c) {
          if (c == phi[v]) continue;
          if (!sizes.empty() &&
              (count[phi[v]] - 1 < sizes[phi[v]].first || count[c] + 1 > sizes[c].second)) {
            continue;
          }
          if (gain(v, c) > 1e-12) {
            --count[phi[v]];
            ++count[c];
            phi[v] = c;
            improved = true;
          }
        }
      }
      if (sizes.empty()) continue;
      for (Node u = 0; u < n; ++u) {
        for (Node v = u + 1; v < n; ++v) {
          if (phi[u] == phi[v]) continue;
          double g = gain(u, phi[v]) + gain(v, phi[u]);
          if (G.adjacent(u, v)) {
            g -= beta(phi[v], phi[v]) - beta(phi[u], phi[v]);
            g -= beta(phi[u], phi[u]) - beta(phi[v], phi[u]);
          }
          if (g > 1e-12) {
            std::swap(phi[u], phi[v]);
            improved = true;
          }
        }
      }
    }
    const double value = multicut_value(G, beta, phi);
    if (value > best.value) {
      best.value = value;
      best.assignment = phi;
    }
  }
  return best;
}

CutResult exact_multicut(const SimpleGraph& G, const Eigen::MatrixXd& beta,
                         std::vector<std::pair<int, int>> sizes, bool fix_first) {
  const int q = static_cast<int>(beta.rows());
  MapEnumerator e{G, beta, Eigen::VectorXd::Zero(q), std::move(sizes), fix_first};
  CutResult best;
  best.value = kNegInf;
  best.exact = true;
  e.run([&](double s, const std::vector<int>& phi) {
    if (s > best.value) {
      best.value = s;
      best.assignment = phi;
    }
  });
  best.value *= scale(G.num_nodes());
  return best;
}

}  // namespace

double LogValue::value() const { return std::exp(log); }

double multicut_value(const SimpleGraph& G, const Eigen::MatrixXd& beta,
                      const std::vector<int>& assignment) {
  if (static_cast<int>(assignment.size()) != G.num_nodes()) {
    throw std::invalid_argument("multicut_value: one class per node required");
  }
  double s = 0.0;
  for (const auto& [u, v] : G.edge_list()) s += beta(assignment[u], assignment[v]);
  return s * scale(G.num_nodes());
}

double energy_density(const SimpleGraph& G, const Eigen::MatrixXd& J,
                      const std::vector<int>& assignment) {
  return multicut_value(G, J, assignment);
}

CutResult maxcut(const SimpleGraph& G, const EnergyOptions& options) {
  const int n = G.num_nodes();
  Eigen::MatrixXd beta(2, 2);
  beta << 0, 0.5, 0.5, 0;
  if (n == 0) return {0.0, {}, true};
  if (options.mode == EnergyMode::local) return local_multicut(G, beta, {}, options);
  if (n > kMaxExactMaxcutNodes) {
    throw BoundExceeded("energy.maxcut_nodes", "exact maxcut needs n <= 24");
  }
  // Node 0 stays on side 0: complementing a cut does not change it.
  return exact_multicut(G, beta, {}, true);
}

CutResult mmcut(const SimpleGraph& G, const Eigen::MatrixXd& beta, const EnergyOptions& options) {
  check_square(beta, "mmcut");
  if (options.mode == EnergyMode::local) return local_multicut(G, beta, {}, options);
  check_maps(static_cast<int>(beta.rows()), G.num_nodes(), options.work_bound);
  return exact_multicut(G, beta, {}, false);
}

std::vector<std::pair<int, int>> balanced_size_range(const Eigen::VectorXd& alpha, int n) {
  if (alpha.size() == 0 || (alpha.array() <= 0.0).any()) {
    throw std::invalid_argument("balanced_size_range: positive node weights required");
  }
  const Eigen::VectorXd a = alpha / alpha.sum();
  std::vector<std::pair<int, int>> out;
  int lo_sum = 0;
  int hi_sum = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double x = a(i) * n;
    const double r = std::round(x);
    std::pair<int, int> range;
    if (std::abs(x - r) < 1e-9) {
      range = {static_cast<int>(r), static_cast<int>(r)};
    } else {
      range = {static_cast<int>(std::floor(x)), static_cast<int>(std::ceil(x))};
    }
    lo_sum += range.first;
    hi_sum += range.second;
    out.push_back(range);
  }
  if (lo_sum > n || hi_sum < n) {
    throw std::invalid_argument("balanced_size_range: no class sizes meet the balance constraint");
  }
  return out;
}

CutResult rmcut(const SimpleGraph& G, const WeightedGraph& H, const EnergyOptions& options) {
  check_square(H.beta, "rmcut");
  auto sizes = balanced_size_range(H.alpha, G.num_nodes());
  if (options.mode == EnergyMode::local) return local_multicut(G, H.beta, sizes, options);
  check_maps(H.num_nodes(), G.num_nodes(), options.work_bound);
  return exact_multicut(G, H.beta, std::move(sizes), false);
}

LogValue hom_star(const SimpleGraph& G, const WeightedGraph& H_tilde, double work_bound) {
  check_square(H_tilde.beta, "hom_star");
  if ((H_tilde.beta.array() < 0.0).any()) {
    throw std::invalid_argument("hom_star: nonnegative edge weights required");
  }
  auto sizes = balanced_size_range(H_tilde.alpha, G.num_nodes());
  check_maps(H_tilde.num_nodes(), G.num_nodes(), work_bound);
  const Eigen::MatrixXd logb = H_tilde.beta.array().log().matrix();
  MapEnumerator e{G, logb, Eigen::VectorXd::Zero(H_tilde.num_nodes()), std::move(sizes), false};
  LogValue out{kNegInf};
  e.run([&](double s, const std::vector<int>&) { out.log = log_add(out.log, s); });
  return out;
}

PartitionFunction partition_function(const SimpleGraph& G, const Eigen::MatrixXd& J,
                                     SpinVariant variant, double work_bound) {
  check_square(J, "partition_function");
  const int n = G.num_nodes();
  if (n == 0) throw std::invalid_argument("partition_function: empty graph");
  check_maps(static_cast<int>(J.rows()), n, work_bound);
  const double factor = scale(n) * (variant == SpinVariant::meanfield ? n : 1.0);
  // Leaves get the edge sum of -factor * J, i.e. -E_phi (times n).
  const Eigen::MatrixXd negJ = -factor * J;
  MapEnumerator e{G, negJ, Eigen::VectorXd::Zero(J.rows()), {}, false};
  PartitionFunction out;
  out.Z.log = kNegInf;
  double best = kNegInf;
  e.run([&](double s, const std::vector<int>&) {
    out.Z.log = log_add(out.Z.log, s);
    best = std::max(best, s);
  });
  out.free_energy = -out.Z.log / n;
  out.ground_state = -best / (variant == SpinVariant::meanfield ? n : 1.0);
  return out;
}

double freedom(const WeightedGraph& H) {
  if (H.num_nodes() == 0) throw std::invalid_argument("freedom: empty H");
  const double bmax = H.beta.maxCoeff();
  if (!(bmax > 0.0)) throw std::invalid_argument("freedom: beta_max must be positive");
  const double aH = H.alpha.sum();
  double d = 0.0;
  for (int i = 0; i < H.num_nodes(); ++i) {
    for (int j = 0; j < H.num_nodes(); ++j) {
      d += H.alpha(i) * H.alpha(j) / (aH * aH) * (1.0 - H.beta(i, j) / bmax);
    }
  }
  return d;
}

RightQuantities right_quantities(const SimpleGraph& G, const WeightedGraph& H,
                                 double work_bound) {
  check_square(H.beta, "right_quantities");
  const int n = G.num_nodes();
  if (n == 0) throw std::invalid_argument("right_quantities: empty graph");
  check_maps(H.num_nodes(), n, work_bound);
  const Eigen::MatrixXd logb = H.beta.array().log().matrix();
  const Eigen::VectorXd loga = H.alpha.array().log().matrix();
  MapEnumerator e{G, logb, loga, {}, false};
  RightQuantities out;
  out.hom.log = kNegInf;
  e.run([&](double s, const std::vector<int>&) { out.hom.log = log_add(out.hom.log, s); });
  out.u = out.hom.log / n;
  out.D = freedom(H);
  out.log2_hom_density = out.hom.log / std::log(2.0) / (static_cast<double>(n) * n);
  return out;
}

GraphonEnergyResult energy_graphon(const StepGraphon& W, const WeightedGraph& H,
                                   std::uint64_t seed, int restarts) {
  check_square(H.beta, "energy_graphon");
  const int m = W.blocks();
  const int q = H.num_nodes();
  if ((H.alpha.array() <= 0.0).any()) throw std::invalid_argument("energy_graphon: positive alpha");
  const Eigen::VectorXd alpha = H.alpha / H.alpha.sum();
  const Eigen::MatrixXd& B = W.B;
  const Eigen::MatrixXd& beta = H.beta;
  auto objective = [&](const Eigen::MatrixXd& X) {
    return (beta.array() * (X.transpose() * B * X).array()).sum();
  };
  Rng rng(seed);
  GraphonEnergyResult best;
  best.value = kNegInf;
  for (int r = 0; r < std::max(1, restarts); ++r) {
    // Northwest-corner fill over random block and class orders.
    const auto bo = sample_subset(rng, m, m);
    const auto co = sample_subset(rng, q, q);
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(m, q);
    Eigen::VectorXd rows = W.p;
    Eigen::VectorXd cols = alpha;
    for (int i = 0, j = 0; i < m && j < q;) {
      const double t = std::min(rows(bo[i]), cols(co[j]));
      X(bo[i], co[j]) += t;
      rows(bo[i]) -= t;
      cols(co[j]) -= t;
      if (rows(bo[i]) <= 1e-15) {
        ++i;
      } else {
        ++j;
      }
    }
    double value = objective(X);
    for (int sweep = 0; sweep < 2000; ++sweep) {
      const double before = value;
      for (int b1 = 0; b1 < m; ++b1) {
        for (int b2 = b1 + 1; b2 < m; ++b2) {
          for (int c1 = 0; c1 < q; ++c1) {
            for (int c2 = c1 + 1; c2 < q; ++c2) {
              // Direction D: +1 at (b1,c1),(b2,c2); -1 at (b1,c2),(b2,c1).
              Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m, q);
              D(b1, c1) = D(b2, c2) = 1.0;
              D(b1, c2) = D(b2, c1) = -1.0;
              const double g = 2.0 * (beta.array() * (D.transpose() * B * X).array()).sum();
              const double h = (beta.array() * (D.transpose() * B * D).array()).sum();
              const double lo = -std::min(X(b1, c1), X(b2, c2));
              const double hi = std::min(X(b1, c2), X(b2, c1));
              if (hi - lo <= 1e-15) continue;
              auto f = [&](double t) { return g * t + h * t * t; };
              double t = f(lo) > f(hi) ? lo : hi;
              if (h < 0.0) {
                const double ts = std::clamp(-g / (2.0 * h), lo, hi);
                if (f(ts) > f(t)) t = ts;
              }
              if (f(t) > 1e-15) {
                X += t * D;
                X = X.cwiseMax(0.0);
                value = objective(X);
              }
            }
          }
        }
      }
      if (value - before < 1e-14) break;
    }
    if (value > best.value) {
      best.value = value;
      best.split = X;
    }
  }
  return best;
}

WeightedGraph cut_hom_target() {
  Eigen::MatrixXd beta(2, 2);
  beta << 1, 2, 2, 1;
  return {Eigen::VectorXd::Ones(2), beta};
}

}  // namespace graphlim
