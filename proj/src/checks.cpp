#include "graphlim/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "graphlim/algebra.hpp"
#include "graphlim/canonical.hpp"
#include "graphlim/cutmetric.hpp"
#include "graphlim/energy.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/homcount.hpp"
#include "graphlim/oracle.hpp"
#include "graphlim/regularity.hpp"
#include "graphlim/sampling.hpp"

namespace graphlim::checks {

namespace {

// Accumulates "key=value" fields.
class Detail {
 public:
  template <class T>
  Detail& add(const std::string& key, T value) {
    if (!out_.empty()) out_ += ' ';
    std::ostringstream ss;
    ss.precision(6);
    ss << key << '=' << value;
    out_ += ss.str();
    return *this;
  }
  std::string str() const { return out_; }

 private:
  std::string out_;
};

SimpleGraph random_small_graph(Rng& rng, int max_n) {
  const int n = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(max_n)));
  return gen::erdos_renyi(n, uniform01(rng), rng());
}

std::vector<SimpleGraph> graphs_up_to(int lo, int hi) {
  std::vector<SimpleGraph> out;
  for (int n = lo; n <= hi; ++n) {
    for (auto& g : all_graphs(n)) out.push_back(std::move(g));
  }
  return out;
}

CheckResult embedding_identity(int) {
  Rng rng(101);
  const auto patterns = graphs_up_to(1, 4);
  double worst = 0.0;
  for (int g = 0; g < 100; ++g) {
    const SimpleGraph G = random_small_graph(rng, 7);
    const StepGraphon W = step_from_graph(G);
    for (const auto& F : patterns) {
      const double a = density(DensityKind::t, F, G);
      const double b = t_graphon(F, W, DensityMethod::exact).value;
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return {1, "", worst <= 1e-12,
          Detail().add("graphs", 100).add("patterns", patterns.size()).add("max_abs_diff", worst).str()};
}

CheckResult inclusion_exclusion(int) {
  Rng rng(202);
  const auto patterns = graphs_up_to(1, 4);
  int mismatches = 0;
  int cases = 0;
  for (int g = 0; g < 100; ++g) {
    const SimpleGraph G = random_small_graph(rng, 7);
    for (const auto& F : patterns) {
      const auto missing = missing_pairs(F);
      std::vector<double> inj_vals;
      std::vector<double> ind_vals;
      for (std::uint32_t mask = 0; mask < (1u << missing.size()); ++mask) {
        const SimpleGraph Fp = supergraph(F, mask);
        inj_vals.push_back(static_cast<double>(count(CountKind::inj, Fp, G)));
        ind_vals.push_back(static_cast<double>(count(CountKind::ind, Fp, G)));
      }
      const auto ind_from = transform(Transform::ind_from_inj, F, inj_vals);
      const auto inj_from = transform(Transform::inj_from_ind, F, ind_vals);
      const auto round_trip = transform(Transform::inj_from_ind, F, ind_from);
      ++cases;
      if (ind_from != ind_vals || inj_from != inj_vals || round_trip != inj_vals) ++mismatches;
    }
  }
  return {2, "", mismatches == 0, Detail().add("cases", cases).add("mismatches", mismatches).str()};
}

CheckResult cycle_spectrum_check(int) {
  Rng rng(303);
  double worst = 0.0;
  for (int g = 0; g < 100; ++g) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 50));
    const SimpleGraph G = gen::erdos_renyi(n, uniform01(rng), rng());
    for (int k = 3; k <= 8; ++k) worst = std::max(worst, cycle_spectrum(G, k).relative_difference);
  }
  return {3, "", worst <= 1e-6, Detail().add("graphs", 100).add("k", "3..8").add("max_rel_diff", worst).str()};
}

CheckResult uniform_attachment_limit(int) {
  const int n = 3000;
  const SimpleGraph G = gen::uniform_attachment(n, 404);
  const double t2 = edge_density(G);
  const SimpleGraph K3 = gen::complete(3);
  Rng rng(405);
  const Estimate tG = density_mc(DensityKind::t, K3, G, 1000000, rng);
  const Estimate tW = t_graphon(K3, builtin::ua_limit(), DensityMethod::mc, 1000000, 406);
  const bool ok = std::abs(t2 - 1.0 / 3.0) <= 0.02 && std::abs(tG.value - tW.value) <= 0.02;
  return {4, "", ok,
          Detail()
              .add("n", n)
              .add("t_K2", t2)
              .add("t_K3_sampled", tG.value)
              .add("t_K3_limit_mc", tW.value)
              .add("diff", std::abs(tG.value - tW.value))
              .str()};
}

CheckResult prefix_attachment_negative(int) {
  // A single n = 2000 graph fluctuates (sd about 0.006) far beyond Monte Carlo
  // error, so the empirical side is a replicate mean with its own standard
  // error.
  const int n = 2000;
  const int replicates = 16;
  double s = 0.0;
  double ss = 0.0;
  for (int r = 0; r < replicates; ++r) {
    const SimpleGraph G = gen::prefix_attachment(n, derive_seed(505, static_cast<std::uint64_t>(r)));
    const double nd = n;
    const double t = 6.0 * static_cast<double>(triangle_count(G)) / (nd * nd * nd);
    s += t;
    ss += t * t;
  }
  const double mean = s / replicates;
  const double se = std::sqrt((ss - replicates * mean * mean) / (replicates - 1) / replicates);
  const SimpleGraph K3 = gen::complete(3);
  const Estimate lim = t_graphon(K3, builtin::pfx_limit(), DensityMethod::mc, 1000000, 506);
  const Estimate naive = t_graphon(K3, builtin::pfx_naive(), DensityMethod::mc, 1000000, 507);
  const double s_lim = std::hypot(se, lim.std_error);
  const double s_naive = std::hypot(se, naive.std_error);
  const double d_lim = std::abs(mean - lim.value);
  const double d_naive = std::abs(mean - naive.value);
  const bool ok = d_lim <= 4.0 * s_lim && d_naive > 4.0 * s_naive;
  return {5, "", ok,
          Detail()
              .add("replicates", replicates)
              .add("t_K3_graphs", mean)
              .add("se", se)
              .add("t_K3_pfx", lim.value)
              .add("t_K3_naive", naive.value)
              .add("z_pfx", d_lim / s_lim)
              .add("z_naive", d_naive / s_naive)
              .str()};
}

CheckResult quasirandom(int) {
  const auto paley = quasirandom_battery(gen::paley(1009), 0.5, 601);
  const int m = 300;
  const auto kmm = quasirandom_battery(gen::complete_bipartite(m, m), 0.5, 602);
  const bool ok = paley.passes(0.1) && kmm.c4_ratio >= 1.5;
  return {6, "", ok,
          Detail()
              .add("paley_degree", paley.degree_deviation)
              .add("paley_codegree", paley.codegree_deviation)
              .add("paley_hom", paley.hom_deviation)
              .add("paley_c4", paley.c4_deviation)
              .add("paley_subset", paley.subset_deviation)
              .add("kmm_c4_ratio", kmm.c4_ratio)
              .add("kmm_degree", kmm.degree_deviation)
              .str()};
}

CheckResult weak_regularity(int threads) {
  const double eps = 0.3;
  const double bound = std::pow(4.0 * eps, 0.25);
  const std::vector<std::pair<std::string, SimpleGraph>> graphs = {
      {"er22", gen::erdos_renyi(22, 0.5, 701)},
      {"planted", gen::planted({11, 11}, 0.9, 0.1, 702)},
  };
  Detail d;
  bool ok = true;
  for (const auto& [name, G] : graphs) {
    int good = 0;
    double worst = 0.0;
    double reps = 0.0;
    for (int s = 0; s < 50; ++s) {
      auto oracle = SamplingOracle::from_graph(G);
      const auto R = build_reps(oracle, eps, derive_seed(703, static_cast<std::uint64_t>(s)));
      const Partition P = voronoi_partition(oracle, R, eps);
      CutOptions opt;
      opt.threads = threads;
      const auto q = regularity_quality(G, P, opt);
      if (q.cut_distance <= bound) ++good;
      worst = std::max(worst, q.cut_distance);
      reps += static_cast<double>(R.reps.size()) / 50.0;
    }
    ok = ok && good >= 45;
    d.add(name + "_ok", good).add(name + "_max_dcut", worst).add(name + "_mean_reps", reps);
  }
  d.add("bound", bound);
  return {7, "", ok, d.str()};
}

CheckResult maxcut_pipeline_check(int) {
  const double eps = 0.15;
  const int seeds = 20;
  int kmm_good = 0;
  double kmm_min = 1.0;
  const SimpleGraph Kmm = gen::complete_bipartite(200, 200);
  for (int s = 0; s < seeds; ++s) {
    auto oracle = SamplingOracle::from_graph(Kmm);
    const auto r = maxcut_pipeline(oracle, eps, derive_seed(801, static_cast<std::uint64_t>(s)));
    if (r.estimate >= 0.24) ++kmm_good;
    kmm_min = std::min(kmm_min, r.estimate);
  }
  int small_good = 0;
  double worst = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const SimpleGraph G = gen::erdos_renyi(20, 0.5, derive_seed(802, static_cast<std::uint64_t>(s)));
    const double exact = maxcut(G).value;
    auto oracle = SamplingOracle::from_graph(G);
    const auto r = maxcut_pipeline(oracle, eps, derive_seed(803, static_cast<std::uint64_t>(s)));
    const double err = std::abs(r.estimate - exact);
    if (err <= 0.05) ++small_good;
    worst = std::max(worst, err);
  }
  const bool ok = kmm_good * 10 >= seeds * 9 && small_good * 10 >= seeds * 9;
  return {8, "", ok,
          Detail()
              .add("eps", eps)
              .add("kmm_ok", kmm_good)
              .add("kmm_min_estimate", kmm_min)
              .add("n20_ok", small_good)
              .add("n20_max_error", worst)
              .add("seeds", seeds)
              .str()};
}

CheckResult energy_sandwiches(int) {
  Rng rng(901);
  std::vector<SimpleGraph> graphs = graphs_up_to(1, 5);
  for (int i = 0; i < 200; ++i) graphs.push_back(gen::erdos_renyi(8, uniform01(rng), rng()));
  // CUT-HOM with integers: 2^Maxcut <= hom <= 2^(n + Maxcut).
  int cut_fail = 0;
  const WeightedGraph H = cut_hom_target();
  for (const auto& G : graphs) {
    const int n = G.num_nodes();
    const auto Maxcut = static_cast<long long>(std::llround(maxcut(G).value * n * n));
    const double h = hom_weighted(G.to_multigraph(), H);
    const double lo = std::ldexp(1.0, static_cast<int>(Maxcut));
    const double hi = std::ldexp(1.0, static_cast<int>(Maxcut) + n);
    if (h < lo || h > hi) ++cut_fail;
  }
  double c_mcut = 0.0;
  double c_rmcut = 0.0;
  bool mcut_ok = true;
  bool rmcut_ok = true;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 7));
    const int q = 2 + static_cast<int>(uniform_index(rng, 2));
    const SimpleGraph G = gen::erdos_renyi(n, uniform01(rng), rng());
    Eigen::MatrixXd beta(q, q);
    for (int a = 0; a < q; ++a) {
      for (int b = a; b < q; ++b) beta(a, b) = beta(b, a) = uniform01(rng);
    }
    Eigen::VectorXd alpha(q);
    for (int a = 0; a < q; ++a) alpha(a) = 0.2 + uniform01(rng);
    alpha /= alpha.sum();
    const double nd = n;
    // MCUT-HOM: unit nodeweights, edge weights 2^beta.
    const WeightedGraph Hexp(Eigen::VectorXd::Ones(q), beta.unaryExpr([](double b) { return std::exp2(b); }));
    const double lhs = right_quantities(G, Hexp).log2_hom_density;
    const double dev_m = std::abs(lhs - mmcut(G, beta).value / 2.0);
    c_mcut = std::max(c_mcut, dev_m * nd);
    if (dev_m > std::log2(q) / nd + 1e-12) mcut_ok = false;
    // RMCUT-HOM: balanced maps, edge weights e^beta.
    const WeightedGraph Hr(alpha, beta);
    const WeightedGraph Ht(alpha, beta.array().exp().matrix());
    const double lhs_r = hom_star(G, Ht).log / (nd * nd);
    const double dev_r = std::abs(rmcut(G, Hr).value / 2.0 - lhs_r);
    c_rmcut = std::max(c_rmcut, dev_r * nd);
    if (dev_r > std::log(q) / nd + 1e-12) rmcut_ok = false;
  }
  const bool ok = cut_fail == 0 && mcut_ok && rmcut_ok;
  return {9, "", ok,
          Detail()
              .add("cut_hom_graphs", graphs.size())
              .add("cut_hom_failures", cut_fail)
              .add("C_mcut", c_mcut)
              .add("C_rmcut", c_rmcut)
              .add("mcut_within_log2q_over_n", mcut_ok)
              .add("rmcut_within_lnq_over_n", rmcut_ok)
              .str()};
}

CheckResult algebra_check(int) {
  const auto cert = verify_certificate(goodman_certificate(), goodman_target());
  const auto basis = labeled_basis(2, 3);
  const auto M = connection_submatrix(hom_parameter(WeightedGraph::from_graph(gen::complete(3))), 2, basis);
  const auto psd = psd_rank_check(M.M, 1e-9);
  // Path 0-1-2-3 and an edge, endpoints labeled.
  const RationalQuantumGraph p4 = RationalQuantumGraph::single(labeled(4, {{0, 1}, {1, 2}, {2, 3}}, {0, 3}));
  const RationalQuantumGraph p3 = RationalQuantumGraph::single(labeled(3, {{0, 1}, {1, 2}}, {0, 2}));
  const RationalQuantumGraph p2 = RationalQuantumGraph::single(labeled(2, {{0, 1}}, {0, 1}));
  const auto basis4 = labeled_basis(2, 4);
  const bool kernel = kernel_test(pm_parameter(), p4 - p2, basis4);
  const bool not_kernel = !kernel_test(pm_parameter(), p3 - p2, basis4);
  const bool ok = cert.matches && psd.is_psd && psd.rank <= 9 && kernel && not_kernel;
  return {10, "", ok,
          Detail()
              .add("goodman_exact", cert.matches)
              .add("basis", basis.size())
              .add("min_eig", psd.min_eigenvalue)
              .add("rank", psd.rank)
              .add("pm_kernel_P4-P2", kernel)
              .add("pm_rejects_P3-P2", not_kernel)
              .str()};
}

CheckResult inequality_check(int) {
  Rng rng(1101);
  int violations = 0;
  double min_margin = 1.0;
  for (int i = 0; i < 1000; ++i) {
    const int blocks = 1 + static_cast<int>(uniform_index(rng, 6));
    const auto rep = inequality_battery(random_step(blocks, rng));
    violations += rep.violations();
    for (const auto& r : rep.results) min_margin = std::min(min_margin, r.margin);
  }
  Eigen::MatrixXd B(2, 2);
  B << 0, 1, 1, 0;
  const auto turan = inequality_battery(StepGraphon(Eigen::Vector2d(0.5, 0.5), B));
  const double goodman = turan.results.front().margin;
  const bool ok = violations == 0 && std::abs(goodman) <= 1e-12;
  return {11, "", ok,
          Detail()
              .add("graphons", 1000)
              .add("violations", violations)
              .add("min_margin", min_margin)
              .add("turan_goodman_margin", goodman)
              .str()};
}

CheckResult rho_reconstruction(int) {
  Rng rng(1201);
  int mismatches = 0;
  int compared = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 12));
    const SimpleGraph G = gen::random_subcubic(n, rng());
    for (int r = 0; r <= 2; ++r) {
      const auto direct = rho(G, r, 3);
      const auto rebuilt = rho_from_s(G, r, 3);
      ++compared;
      bool same = direct.probabilities.size() == rebuilt.probabilities.size();
      for (const auto& [code, p] : direct.probabilities) {
        auto it = rebuilt.probabilities.find(code);
        const double q = it == rebuilt.probabilities.end() ? 0.0 : it->second;
        worst = std::max(worst, std::abs(p - q));
        if (std::abs(p - q) > 1e-12) same = false;
      }
      if (!same) ++mismatches;
    }
  }
  return {12, "", mismatches == 0,
          Detail().add("instances", 50).add("comparisons", compared).add("mismatches", mismatches).add("max_abs_diff", worst).str()};
}

CheckResult sampling_lemmas(int) {
  const SimpleGraph G = gen::erdos_renyi(20, 0.5, 1301);
  const SimpleGraph H = gen::erdos_renyi(20, 0.5, 1302);
  const auto l1 = sampling_lemma_aligned(G, H, 16, 200, 1303);
  const auto l2 = sampling_lemma_unlabeled(G, 16, 200, 1304);
  const bool ok = l1.violation_rate == 0.0 && l2.violation_rate == 0.0;
  return {13, "", ok,
          Detail()
              .add("lemma1_bound", l1.bound)
              .add("lemma1_max_dev", l1.max_deviation)
              .add("lemma1_violation_rate", l1.violation_rate)
              .add("lemma2_bound", l2.bound)
              .add("lemma2_max_upper", l2.max_deviation)
              .add("lemma2_violation_rate", l2.violation_rate)
              .str()};
}

struct Entry {
  const char* name;
  std::function<CheckResult(int)> run;
};

const std::map<int, Entry>& registry() {
  static const std::map<int, Entry> r = {
      {1, {"embedding-identity", embedding_identity}},
      {2, {"inclusion-exclusion", inclusion_exclusion}},
      {3, {"cycle-spectrum", cycle_spectrum_check}},
      {4, {"uniform-attachment", uniform_attachment_limit}},
      {5, {"prefix-attachment", prefix_attachment_negative}},
      {6, {"quasirandom", quasirandom}},
      {7, {"weak-regularity", weak_regularity}},
      {8, {"maxcut-pipeline", maxcut_pipeline_check}},
      {9, {"energy-sandwich", energy_sandwiches}},
      {10, {"algebra", algebra_check}},
      {11, {"inequalities", inequality_check}},
      {12, {"rho-reconstruction", rho_reconstruction}},
      {13, {"sampling-lemmas", sampling_lemmas}},
  };
  return r;
}

}  // namespace

std::vector<int> check_ids() {
  std::vector<int> ids;
  for (const auto& [id, e] : registry()) ids.push_back(id);
  return ids;
}

std::string check_name(int id) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::out_of_range("unknown check id " + std::to_string(id));
  return it->second.name;
}

int parse_check_id(const std::string& text) {
  for (const auto& [id, e] : registry()) {
    if (text == e.name || text == std::to_string(id)) return id;
  }
  throw std::out_of_range("unknown check: " + text);
}

CheckResult run_check(int id, int threads) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::out_of_range("unknown check id " + std::to_string(id));
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = it->second.run(threads);
  r.id = id;
  r.name = it->second.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_result(const CheckResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof(secs), "%.1f", r.seconds);
  return "criterion " + std::to_string(r.id) + " " + (r.passed ? "PASS" : "FAIL") + " " + r.name + " (" +
         secs + "s): " + r.detail;
}

}  // namespace graphlim::checks
