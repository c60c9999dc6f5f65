#include "graphlim/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "graphlim/error.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/homcount.hpp"

namespace graphlim {

GraphFunction hom_parameter(const WeightedGraph& H) {
  return [H](const Multigraph& g) { return hom_weighted(g, H); };
}

GraphFunction density_parameter(const StepGraphon& W) {
  return hom_parameter(WeightedGraph(W.p, W.B));
}

std::uint64_t perfect_matchings(const Multigraph& g) {
  const int n = g.num_nodes();
  if (n > 24) throw BoundExceeded("algebra.pm_nodes", "perfect matchings need n <= 24");
  if (n % 2 == 1) return 0;
  const Eigen::MatrixXi m = g.multiplicity_matrix();
  const std::uint32_t full = n == 0 ? 0 : (std::uint32_t{1} << n) - 1;
  // ways[mask] = matchings of the nodes in mask; only masks reachable by
  // removing the lowest node with a partner are touched.
  std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
  std::vector<char> done(std::size_t{1} << n, 0);
  auto rec = [&](auto&& self, std::uint32_t mask) -> std::uint64_t {
    if (mask == 0) return 1;
    if (done[mask]) return ways[mask];
    const int i = std::countr_zero(mask);
    std::uint64_t total = 0;
    for (int j = i + 1; j < n; ++j) {
      if ((mask >> j & 1u) && m(i, j) > 0) {
        total += static_cast<std::uint64_t>(m(i, j)) *
                 self(self, mask & ~(std::uint32_t{1} << i) & ~(std::uint32_t{1} << j));
      }
    }
    done[mask] = 1;
    ways[mask] = total;
    return total;
  };
  return rec(rec, full);
}

GraphFunction pm_parameter() {
  return [](const Multigraph& g) { return static_cast<double>(perfect_matchings(g)); };
}

GraphFunction signed_pairs_parameter() {
  return [](const Multigraph& g) {
    int pairs = 0;
    for (const auto& e : g.edges()) {
      if (e.u != e.v) ++pairs;
    }
    return pairs % 2 == 0 ? 1.0 : -1.0;
  };
}

ConnectionSubmatrix connection_submatrix(const GraphFunction& f, int k,
                                         const std::vector<LabeledGraph>& basis) {
  ConnectionSubmatrix out;
  out.k = k;
  out.basis = basis;
  const auto m = static_cast<Eigen::Index>(basis.size());
  out.M = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    if (basis[a].k() != k) throw std::invalid_argument("connection_submatrix: basis label count");
    for (Eigen::Index b = a; b < m; ++b) {
      out.M(a, b) = out.M(b, a) = f(unlabel(glue(basis[a], basis[b]), false));
    }
  }
  return out;
}

PsdReport psd_rank_check(const Eigen::MatrixXd& M, double tol) {
  PsdReport r;
  if (M.rows() != M.cols()) throw std::invalid_argument("psd_rank_check: square matrix required");
  if (M.rows() == 0) {
    r.is_psd = true;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success) throw std::runtime_error("psd_rank_check: eigensolver failed");
  r.eigenvalues = solver.eigenvalues();
  r.min_eigenvalue = r.eigenvalues.minCoeff();
  r.is_psd = r.min_eigenvalue >= -tol;
  const double top = r.eigenvalues.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
    if (r.eigenvalues(i) > tol * std::max(top, 1.0)) ++r.rank;
  }
  return r;
}

RationalQuantumGraph hat(const LabeledGraph& F) {
  if (!F.fully_labeled()) throw std::invalid_argument("hat: every node must be labeled");
  if (!F.base.is_simple()) throw std::invalid_argument("hat: simple graph required");
  const SimpleGraph base(F.base);
  const auto missing = missing_pairs(base);
  if (missing.size() > 20) throw BoundExceeded("algebra.hat_pairs", "at most 20 missing pairs");
  RationalQuantumGraph out(F.k());
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << missing.size()); ++mask) {
    const SimpleGraph g = supergraph(base, mask);
    const Rational sign = std::popcount(mask) % 2 == 0 ? Rational(1) : Rational(-1);
    out.add(LabeledGraph(g.to_multigraph(), F.labels), sign);
  }
  return out;
}

bool kernel_test(const GraphFunction& f, const RationalQuantumGraph& x,
                 const std::vector<LabeledGraph>& basis, double tol) {
  for (const auto& y : basis) {
    if (y.k() != x.k()) throw std::invalid_argument("kernel_test: basis label count");
    double s = 0.0;
    double scale = 1.0;
    for (const auto& [code, t] : x.terms()) {
      const double v = f(unlabel(glue(t.graph, y), false));
      s += to_double(t.coefficient) * v;
      scale = std::max(scale, std::abs(v));
    }
    if (std::abs(s) > tol * scale) return false;
  }
  return true;
}

RationalQuantumGraph square_sum_unlabel(const std::vector<SquareTerm>& terms) {
  // Each square is unlabeled on its own, so the terms may use different k.
  RationalQuantumGraph out(0);
  for (const auto& t : terms) out += t.weight * t.y.glue(t.y, true).unlabel(true);
  return out;
}

LabeledGraph labeled(int n, const std::vector<std::pair<Node, Node>>& edges,
                     const std::vector<Node>& labels) {
  return {Multigraph(n, edges), labels};
}

LabeledGraph unlabeled(const SimpleGraph& g) { return {g.to_multigraph(), {}}; }

std::vector<SquareTerm> goodman_certificate() {
  // Nodes 0-1 form the edge, node 2 is isolated.
  const LabeledGraph F1 = labeled(3, {{0, 1}}, {0, 1, 2});
  const LabeledGraph F2 = labeled(3, {{0, 1}}, {0});
  const LabeledGraph F3 = labeled(3, {{0, 1}}, {2});
  RationalQuantumGraph diff = RationalQuantumGraph::single(F2) - RationalQuantumGraph::single(F3);
  return {{Rational(1), hat(F1)}, {Rational(2), diff}};
}

RationalQuantumGraph goodman_target() {
  RationalQuantumGraph t(0);
  t.add(unlabeled(gen::complete(3)), Rational(1));
  t.add(unlabeled(disjoint_union(gen::complete(2), gen::complete(2))), Rational(-2));
  t.add(unlabeled(gen::complete(2)), Rational(1));
  return t;
}

CertificateCheck verify_certificate(const std::vector<SquareTerm>& terms,
                                    const RationalQuantumGraph& target) {
  CertificateCheck c;
  c.expanded = square_sum_unlabel(terms);
  c.residual = c.expanded - target;
  c.matches = c.residual.empty();
  return c;
}

int InequalityReport::violations() const {
  return static_cast<int>(std::count_if(results.begin(), results.end(), [](const auto& r) {
    return r.violated && !r.report_only;
  }));
}

namespace {

// Density source: value and standard error of t(F, target).
using DensityFn = std::function<Estimate(const SimpleGraph&)>;

InequalityReport run_battery(const DensityFn& t, const std::optional<SimpleGraph>& sidorenko,
                             double tol, bool mc) {
  InequalityReport rep;
  const Estimate e = t(gen::complete(2));
  const double p = e.value;
  auto push = [&](std::string name, double lhs, double rhs, double sigma, bool report_only) {
    InequalityResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.sigma = sigma;
    r.report_only = report_only;
    r.violated = mc ? r.margin < -4.0 * sigma : r.margin < -tol;
    rep.results.push_back(r);
  };
  auto combine = [](double a, double b) { return std::sqrt(a * a + b * b); };
  const Estimate k3 = t(gen::complete(3));
  push("goodman", k3.value, p * (2.0 * p - 1.0), combine(k3.std_error, std::abs(4.0 * p - 1.0) * e.std_error),
       false);
  push("kruskal_katona", std::pow(p, 1.5), k3.value,
       combine(k3.std_error, 1.5 * std::sqrt(p) * e.std_error), false);
  const Estimate c4 = t(gen::cycle(4));
  push("erdos_c4", c4.value, std::pow(p, 4), combine(c4.std_error, 4.0 * std::pow(p, 3) * e.std_error),
       false);
  for (int k = 3; k <= 5; ++k) {
    const Estimate pk = t(gen::path(k));
    push("blakley_roy_p" + std::to_string(k), pk.value, std::pow(p, k - 1),
         combine(pk.std_error, (k - 1) * std::pow(p, k - 2) * e.std_error), false);
  }
  if (sidorenko) {
    const Estimate f = t(*sidorenko);
    const auto m = static_cast<double>(sidorenko->num_edges());
    push("sidorenko", f.value, std::pow(p, m),
         combine(f.std_error, m * std::pow(p, m - 1) * e.std_error), true);
  }
  return rep;
}

}  // namespace

InequalityReport inequality_battery(const SimpleGraph& G, const std::optional<SimpleGraph>& sidorenko,
                                    double tol) {
  return run_battery([&](const SimpleGraph& F) { return Estimate{density(DensityKind::t, F, G), 0.0}; },
                     sidorenko, tol, false);
}

InequalityReport inequality_battery(const StepGraphon& W, const std::optional<SimpleGraph>& sidorenko,
                                    double tol) {
  return run_battery([&](const SimpleGraph& F) { return t_graphon(F, W, DensityMethod::exact); },
                     sidorenko, tol, false);
}

InequalityReport inequality_battery(const Graphon& W, std::int64_t samples, std::uint64_t seed,
                                    const std::optional<SimpleGraph>& sidorenko) {
  std::uint64_t stream = 0;
  return run_battery(
      [&](const SimpleGraph& F) {
        return t_graphon(F, W, DensityMethod::mc, samples, derive_seed(seed, stream++));
      },
      sidorenko, 0.0, true);
}

}  // namespace graphlim
