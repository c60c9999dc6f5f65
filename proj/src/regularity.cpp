#include "graphlim/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

int codegree(const SimpleGraph& G, Node a, Node b) {
  const auto ra = G.row(a);
  const auto rb = G.row(b);
  int c = 0;
  for (std::size_t w = 0; w < ra.size(); ++w) c += std::popcount(ra[w] & rb[w]);
  return c;
}

void check_d2_size(const SimpleGraph& G) {
  if (G.num_nodes() > 5000) throw BoundExceeded("regularity.d2_nodes", "n <= 5000 required");
  if (G.num_nodes() == 0) throw std::invalid_argument("d2: empty graph");
}

}  // namespace

double d2_exact(const SimpleGraph& G, Node u, Node v) {
  check_d2_size(G);
  const int n = G.num_nodes();
  long long total = 0;
  for (Node z = 0; z < n; ++z) total += std::abs(codegree(G, u, z) - codegree(G, v, z));
  return static_cast<double>(total) / (static_cast<double>(n) * n);
}

Eigen::MatrixXd d2_matrix(const SimpleGraph& G) {
  check_d2_size(G);
  const int n = G.num_nodes();
  const Eigen::MatrixXd A = G.adjacency_matrix();
  const Eigen::MatrixXd C = A * A;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      out(u, v) = out(v, u) = (C.row(u) - C.row(v)).cwiseAbs().sum() * scale;
    }
  }
  return out;
}

D2SampleSizes d2_sample_sizes(double accuracy, double failure) {
  if (!(accuracy > 0.0) || !(failure > 0.0) || failure >= 1.0) {
    throw std::invalid_argument("d2_sample_sizes: need accuracy > 0 and failure in (0,1)");
  }
  const double log_term = std::log(2.0 / (failure / 2.0));
  const double a2 = accuracy * accuracy;
  D2SampleSizes s;
  s.outer = static_cast<std::int64_t>(std::ceil(2.0 * log_term / a2));
  const double root = 1.0 + std::sqrt(2.0 * log_term);
  s.inner = static_cast<std::int64_t>(std::ceil(4.0 * root * root / a2));
  return s;
}

D2Sketch::D2Sketch(SamplingOracle& oracle, double accuracy, double failure, Rng& rng)
    : oracle_(oracle), accuracy_(accuracy), failure_(failure),
      sizes_(d2_sample_sizes(accuracy, failure)) {
  std::unordered_map<std::uint64_t, std::size_t> group;
  for (std::int64_t i = 0; i < sizes_.outer; ++i) {
    const Handle z = oracle_.sample(rng);
    auto [it, fresh] = group.emplace(oracle_.identity(z), z_.size());
    if (fresh) {
      z_.push_back(z);
      z_mult_.push_back(0);
    }
    ++z_mult_[it->second];
  }
  w_.reserve(static_cast<std::size_t>(sizes_.inner));
  for (std::int64_t i = 0; i < sizes_.inner; ++i) w_.push_back(oracle_.sample(rng));
  words_ = (static_cast<std::size_t>(sizes_.inner) + 63) / 64;
  zw_.assign(z_.size() * words_, 0);
  for (std::size_t a = 0; a < z_.size(); ++a) fill_row(z_[a], zw_.data() + a * words_);
}

void D2Sketch::fill_row(Handle u, std::uint64_t* row) {
  if (oracle_.has_graph()) {
    if (w_nodes_.empty()) {
      w_nodes_.reserve(w_.size());
      for (Handle w : w_) w_nodes_.push_back(*oracle_.node(w));
    }
    const auto adj = oracle_.graph().row(*oracle_.node(u));
    for (std::size_t b = 0; b < w_nodes_.size(); ++b) {
      const auto v = static_cast<std::size_t>(w_nodes_[b]);
      row[b >> 6] |= ((adj[v >> 6] >> (v & 63)) & 1u) << (b & 63);
    }
    return;
  }
  for (std::size_t b = 0; b < w_.size(); ++b) {
    if (oracle_.adjacent(u, w_[b])) row[b >> 6] |= std::uint64_t{1} << (b & 63);
  }
}

const std::vector<double>& D2Sketch::profile(Handle u) {
  const std::uint64_t key = oracle_.identity(u);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  std::vector<std::uint64_t> au(words_, 0);
  fill_row(u, au.data());
  std::vector<double> prof(z_.size());
  const double inv = 1.0 / static_cast<double>(w_.size());
  for (std::size_t a = 0; a < z_.size(); ++a) {
    const std::uint64_t* row = zw_.data() + a * words_;
    int c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(row[w] & au[w]);
    prof[a] = c * inv;
  }
  return cache_.emplace(key, std::move(prof)).first->second;
}

double D2Sketch::distance(Handle u, Handle v) {
  if (oracle_.identity(u) == oracle_.identity(v)) return 0.0;
  const auto pu = profile(u);
  const auto& pv = profile(v);
  double total = 0.0;
  for (std::size_t a = 0; a < pu.size(); ++a) total += z_mult_[a] * std::abs(pu[a] - pv[a]);
  return total / static_cast<double>(sizes_.outer);
}

double d2_estimate(SamplingOracle& oracle, Handle u, Handle v, double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("d2_estimate: eps must lie in (0,1)");
  Rng rng(seed);
  D2Sketch sketch(oracle, eps, eps, rng);
  return sketch.distance(u, v);
}

RepresentativeSet build_reps(SamplingOracle& oracle, double eps, std::uint64_t seed,
                             const RepOptions& options) {
  if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("build_reps: eps must lie in (0, 1/2]");
  if (options.cap < 1) throw std::invalid_argument("build_reps: cap >= 1 required");
  Rng rng(seed);
  RepresentativeSet R;
  R.eps = eps;
  R.rejection_limit = static_cast<int>(std::ceil(1.0 / (eps * eps)));
  R.sketch = std::make_shared<D2Sketch>(oracle, options.accuracy_factor * eps,
                                        eps / options.cap, rng);
  R.reps.push_back(oracle.sample(rng));
  R.trace.push_back({R.reps.back(), {}, true, 0});
  int rejections = 0;
  while (rejections < R.rejection_limit) {
    if (static_cast<int>(R.reps.size()) >= options.cap) {
      R.capped = true;
      break;
    }
    const Handle w = oracle.sample(rng);
    RepTraceEntry entry{w, {}, true, 0};
    for (Handle r : R.reps) {
      const double d = R.sketch->distance(w, r);
      entry.estimates.push_back(d);
      if (!(d > eps / 2.0)) entry.accepted = false;
    }
    if (entry.accepted) {
      R.reps.push_back(w);
      rejections = 0;
    } else {
      ++rejections;
    }
    entry.consecutive_rejections = rejections;
    R.trace.push_back(std::move(entry));
  }
  const auto k = static_cast<Eigen::Index>(R.reps.size());
  R.distances = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      R.distances(i, j) = R.distances(j, i) = R.sketch->distance(R.reps[i], R.reps[j]);
    }
  }
  return R;
}

namespace {

int classify_with(D2Sketch& sketch, const RepresentativeSet& R, Handle u) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < R.reps.size(); ++i) {
    const double d = sketch.distance(u, R.reps[i]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::shared_ptr<D2Sketch> sketch_for(SamplingOracle& oracle, const RepresentativeSet& R, double eps,
                                     std::uint64_t seed) {
  const double failure = eps / static_cast<double>(R.reps.size());
  if (R.sketch && R.sketch->accuracy() <= eps && R.sketch->failure() <= failure) return R.sketch;
  Rng rng(seed);
  return std::make_shared<D2Sketch>(oracle, eps, std::min(failure, 0.5), rng);
}

}  // namespace

int classify(SamplingOracle& oracle, const RepresentativeSet& R, Handle u, double eps,
             std::uint64_t seed) {
  if (R.reps.empty()) throw std::invalid_argument("classify: empty representative set");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("classify: eps must lie in (0,1)");
  auto sketch = sketch_for(oracle, R, eps, seed);
  return classify_with(*sketch, R, u);
}

Partition voronoi_partition(SamplingOracle& oracle, const RepresentativeSet& R, double eps,
                            std::vector<int>* cell_rep) {
  if (R.reps.empty()) throw std::invalid_argument("voronoi_partition: empty representative set");
  const int n = oracle.graph().num_nodes();
  auto sketch = sketch_for(oracle, R, eps, 0);
  std::vector<int> assignment(static_cast<std::size_t>(n));
  for (Node v = 0; v < n; ++v) assignment[v] = classify_with(*sketch, R, oracle.handle_of_node(v));
  // Renumber used representatives in index order.
  std::vector<int> used(R.reps.size(), -1);
  std::vector<int> reps_of_block;
  for (std::size_t i = 0; i < R.reps.size(); ++i) {
    if (std::find(assignment.begin(), assignment.end(), static_cast<int>(i)) != assignment.end()) {
      used[i] = static_cast<int>(reps_of_block.size());
      reps_of_block.push_back(static_cast<int>(i));
    }
  }
  for (auto& a : assignment) a = used[static_cast<std::size_t>(a)];
  if (cell_rep != nullptr) *cell_rep = reps_of_block;
  return Partition::from_assignment(assignment);
}

WeightedGraph quotient(const SimpleGraph& G, const Partition& P) {
  const int n = G.num_nodes();
  if (P.num_nodes() != n) throw std::invalid_argument("quotient: partition size mismatch");
  const int k = P.num_blocks();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(k, k);
  for (const auto& [u, v] : G.edge_list()) {
    const int a = P.block_of(u);
    const int b = P.block_of(v);
    e(a, b) += 1.0;
    e(b, a) += 1.0;
  }
  Eigen::VectorXd alpha(k);
  Eigen::MatrixXd beta(k, k);
  for (int a = 0; a < k; ++a) {
    alpha(a) = static_cast<double>(P.blocks()[a].size()) / n;
  }
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      beta(a, b) = e(a, b) / (static_cast<double>(P.blocks()[a].size()) *
                              static_cast<double>(P.blocks()[b].size()));
    }
  }
  return {alpha, beta};
}

Eigen::MatrixXd partition_kernel(const SimpleGraph& G, const Partition& P) {
  const WeightedGraph Q = quotient(G, P);
  const int n = G.num_nodes();
  Eigen::MatrixXd K(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) K(u, v) = Q.beta(P.block_of(u), P.block_of(v));
  }
  return K;
}

namespace {

/// Greedy exceptional set for diameter threshold tau: repeatedly drop the
/// node with the most within-class pairs above tau.
std::vector<Node> greedy_exceptional(const Eigen::MatrixXd& d2, const Partition& P, double tau) {
  const int n = P.num_nodes();
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::vector<Node> out;
  while (true) {
    Node worst = -1;
    int worst_bad = 0;
    for (Node u = 0; u < n; ++u) {
      if (removed[u]) continue;
      int bad = 0;
      for (Node v : P.blocks()[P.block_of(u)]) {
        if (v != u && !removed[v] && d2(u, v) > tau + 1e-12) ++bad;
      }
      if (bad > worst_bad) {
        worst_bad = bad;
        worst = u;
      }
    }
    if (worst < 0) return out;
    removed[worst] = 1;
    out.push_back(worst);
  }
}

}  // namespace

RegularityQuality regularity_quality(const SimpleGraph& G, const Partition& P,
                                     const CutOptions& options) {
  const int n = G.num_nodes();
  RegularityQuality q;
  const StepKernel K = StepKernel::uniform(G.adjacency_matrix() - partition_kernel(G, P));
  if (n <= kMaxExactCutBlocks) {
    const auto r = cut_norm(K, CutMode::exact, options);
    q.cut_distance = r.value;
    q.exact = true;
    q.cut_upper = r.value;
  } else {
    const auto r = cut_norm(K, CutMode::heuristic, options);
    q.cut_distance = r.value;
    q.cut_upper = r.upper_bound;
  }
  const Eigen::MatrixXd d2 = d2_matrix(G);
  std::set<double> taus{0.0};
  for (const auto& block : P.blocks()) {
    double diam = 0.0;
    for (Node u : block) {
      for (Node v : block) {
        diam = std::max(diam, d2(u, v));
        if (u < v) taus.insert(d2(u, v));
      }
    }
    q.class_diameters.push_back(diam);
  }
  // Thin the candidate thresholds to at most ~256 quantiles.
  std::vector<double> cand(taus.begin(), taus.end());
  if (cand.size() > 256) {
    std::vector<double> thin;
    for (std::size_t i = 0; i < 256; ++i) thin.push_back(cand[i * (cand.size() - 1) / 255]);
    cand = std::move(thin);
  }
  q.delta = std::numeric_limits<double>::infinity();
  for (double tau : cand) {
    auto S = greedy_exceptional(d2, P, tau);
    const double delta = std::max(tau, static_cast<double>(S.size()) / n);
    if (delta < q.delta) {
      q.delta = delta;
      q.exceptional = std::move(S);
    }
  }
  std::sort(q.exceptional.begin(), q.exceptional.end());
  q.bound_24delta = 24.0 * q.delta;
  q.cut_upper = std::min(q.cut_upper, q.bound_24delta);
  if (q.exact) q.cut_upper = q.cut_distance;
  return q;
}

MaxCutPipelineResult maxcut_pipeline(SamplingOracle& oracle, double eps, std::uint64_t seed,
                                     const PipelineOptions& options) {
  if (eps < 0.15 || eps > 0.5) throw std::invalid_argument("maxcut_pipeline: eps must lie in [0.15, 0.5]");
  MaxCutPipelineResult out;
  out.reps = build_reps(oracle, eps, seed, options.reps);
  if (out.reps.capped) {
    throw BoundExceeded("regularity.rep_cap", "representative set reached the cap of " +
                                                  std::to_string(options.reps.cap));
  }
  const int r = static_cast<int>(out.reps.reps.size());
  const int K = options.sample_nodes > 0 ? options.sample_nodes
                                         : static_cast<int>(std::ceil(8.0 / (eps * eps)));
  out.sampled_nodes = K;
  Rng rng(derive_seed(seed, 99));
  std::vector<Handle> sample;
  std::vector<int> cls;
  for (int a = 0; a < K; ++a) {
    sample.push_back(oracle.sample(rng));
    cls.push_back(classify_with(*out.reps.sketch, out.reps, sample.back()));
  }
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(r, r);
  out.class_mass = Eigen::VectorXd::Zero(r);
  for (int a = 0; a < K; ++a) {
    out.class_mass(cls[a]) += 1.0 / K;
    for (int b = 0; b < K; ++b) {
      if (a != b && oracle.adjacent(sample[a], sample[b])) E(cls[a], cls[b]) += 1.0;
    }
  }
  E /= static_cast<double>(K) * (K - 1);
  out.pair_density = Eigen::MatrixXd::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const double mass = out.class_mass(i) * out.class_mass(j);
      if (mass > 0) out.pair_density(i, j) = E(i, j) / mass;
    }
  }
  const Eigen::MatrixXd S = (E + E.transpose()) / 2.0;
  // Representative 0 stays on the left; Gray code over the others.
  std::vector<char> left(static_cast<std::size_t>(r), 0);
  left[0] = 1;
  double cut = 0.0;
  for (int j = 1; j < r; ++j) cut += S(0, j);
  double best = cut;
  std::vector<char> best_left = left;
  const std::uint64_t count = r > 1 ? std::uint64_t{1} << (r - 1) : 1;
  std::uint64_t gray = 0;
  for (std::uint64_t g = 1; g < count; ++g) {
    const int bit = std::countr_zero(g);
    gray ^= std::uint64_t{1} << bit;
    const int x = bit + 1;
    double to_right = 0.0;
    double to_left = 0.0;
    for (int j = 0; j < r; ++j) {
      if (j == x) continue;
      (left[j] ? to_left : to_right) += S(x, j);
    }
    if (left[x]) {
      cut += to_left - to_right;
      left[x] = 0;
    } else {
      cut += to_right - to_left;
      left[x] = 1;
    }
    if (cut > best + 1e-15) {
      best = cut;
      best_left = left;
    }
  }
  out.estimate = std::max(best, 0.0);
  for (int i = 0; i < r; ++i) (best_left[i] ? out.left : out.right).push_back(i);
  return out;
}

bool cut_side_left(SamplingOracle& oracle, const MaxCutPipelineResult& cut, Handle u) {
  (void)oracle;
  auto& sketch = *cut.reps.sketch;
  auto nearest = [&](const std::vector<int>& side) {
    double best = std::numeric_limits<double>::infinity();
    for (int i : side) best = std::min(best, sketch.distance(u, cut.reps.reps[i]));
    return best;
  };
  return nearest(cut.left) < nearest(cut.right);
}

}  // namespace graphlim
