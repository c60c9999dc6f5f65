#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphlim/algebra.hpp"
#include "graphlim/canonical.hpp"
#include "graphlim/checks.hpp"
#include "graphlim/cutmetric.hpp"
#include "graphlim/energy.hpp"
#include "graphlim/error.hpp"
#include "graphlim/generators.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/homcount.hpp"
#include "graphlim/io.hpp"
#include "graphlim/oracle.hpp"
#include "graphlim/regularity.hpp"
#include "graphlim/sampling.hpp"

#ifndef GRAPHLIM_BUILD_HASH
#define GRAPHLIM_BUILD_HASH "unknown"
#endif

using namespace graphlim;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBound = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 1;
  bool header = false;
};

std::uint64_t need_seed(const Globals& g, const std::string& what) {
  if (!g.seed) throw UsageError(what + " is stochastic and requires --seed");
  return *g.seed;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    io::write_file(g.out, text);
  }
}

void emit_json(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

std::string fmt(double x) { return io::format_double(x); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

bool is_named(const std::string& s) {
  for (const char* n : {"edge", "path3", "triangle", "c4", "k4", "p4", "star3"}) {
    if (s == n) return true;
  }
  return false;
}

// Graph input: an edge-list file, a small named pattern, or
// "family:n[:x]" where x is p for er and r for turan.
SimpleGraph resolve_graph(const std::string& spec, const Globals& g) {
  if (std::filesystem::exists(spec)) return io::read_edge_list_file(spec);
  if (is_named(spec)) return named_graph(spec);
  const auto parts = split(spec, ':');
  const auto families = gen::family_names();
  if (parts.empty() || std::find(families.begin(), families.end(), parts[0]) == families.end()) {
    throw UsageError("graph '" + spec + "' is neither a file, a named pattern nor family:n");
  }
  gen::FamilyParams params;
  try {
    if (parts.size() > 1) params.n = std::stoi(parts[1]);
    if (parts.size() > 2) {
      if (parts[0] == "turan") {
        params.r = std::stoi(parts[2]);
      } else {
        params.p = std::stod(parts[2]);
      }
    }
  } catch (const std::logic_error&) {
    throw UsageError("malformed graph spec '" + spec + "'");
  }
  if (gen::family_is_random(parts[0])) params.seed = need_seed(g, "random family " + parts[0]);
  return gen::by_name(parts[0], params);
}

struct GraphonInput {
  std::optional<StepGraphon> step;
  std::optional<Graphon> general;
  std::string label;
};

// Graphon input: a step-graphon JSON file or a builtin name
// ("constant:0.3" passes the parameter).
GraphonInput resolve_graphon(const std::string& spec) {
  GraphonInput in;
  in.label = spec;
  if (std::filesystem::exists(spec)) {
    in.step = io::step_graphon_from_json(io::read_file(spec));
    return in;
  }
  const auto parts = split(spec, ':');
  const auto names = builtin::names();
  if (parts.empty() || std::find(names.begin(), names.end(), parts[0]) == names.end()) {
    throw UsageError("graphon '" + spec + "' is neither a file nor a builtin");
  }
  double param = 0.5;
  if (parts.size() > 1) param = std::stod(parts[1]);
  in.general = builtin::by_name(parts[0], param);
  return in;
}

json nodes_json(const std::vector<int>& v) { return json(v); }

json matrix_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string edges_field(const SimpleGraph& G) {
  std::string s;
  for (auto [u, v] : G.edge_list()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(u) + "-" + std::to_string(v);
  }
  return s;
}

std::string csv(const std::vector<std::string>& fields) { return io::csv_row(fields) + "\n"; }

// Commands.

struct GenerateArgs {
  std::string family;
  int n = 0;
  double p = 0.5;
  int r = 2;
};

void run_generate(const GenerateArgs& a, const Globals& g) {
  gen::FamilyParams params;
  params.n = a.n;
  params.p = a.p;
  params.r = a.r;
  // Paley is indexed by its prime, which may be passed as --p.
  if (a.family == "paley" && a.n == 0) params.n = static_cast<int>(std::lround(a.p));
  if (gen::family_is_random(a.family)) params.seed = need_seed(g, "generate " + a.family);
  const SimpleGraph G = gen::by_name(a.family, params);
  std::ostringstream os;
  io::write_edge_list(os, G);
  emit(g, os.str());
}

struct PairArgs {
  std::string kind;
  std::string F;
  std::string G;
  std::int64_t mc = 0;
  double work_bound = kDefaultWorkBound;
};

void run_count(const PairArgs& a, const Globals& g) {
  const CountKind kind = a.kind == "hom" ? CountKind::hom
                         : a.kind == "inj" ? CountKind::inj
                                           : CountKind::ind;
  const auto c = count(kind, resolve_graph(a.F, g), resolve_graph(a.G, g), a.work_bound);
  std::string text = g.header ? csv({"kind", "F", "G", "count"}) : "";
  text += csv({a.kind, a.F, a.G, std::to_string(c)});
  emit(g, text);
}

void run_density(const PairArgs& a, const Globals& g) {
  const SimpleGraph F = resolve_graph(a.F, g);
  const SimpleGraph G = resolve_graph(a.G, g);
  Estimate e;
  std::string method = "exact";
  if (a.kind[0] == 's') {
    const SparseKind kind = a.kind == "s" ? SparseKind::s
                            : a.kind == "s_inj" ? SparseKind::s_inj
                                                : SparseKind::s_ind;
    e.value = s_density(kind, F, G, a.work_bound);
  } else {
    const DensityKind kind = a.kind == "t" ? DensityKind::t
                             : a.kind == "t_inj" ? DensityKind::t_inj
                                                 : DensityKind::t_ind;
    if (a.mc > 0) {
      Rng rng(need_seed(g, "density --mc"));
      e = density_mc(kind, F, G, a.mc, rng);
      method = "mc";
    } else {
      e.value = density(kind, F, G, a.work_bound);
    }
  }
  std::string text = g.header ? csv({"kind", "F", "G", "value", "std_error", "method"}) : "";
  text += csv({a.kind, a.F, a.G, fmt(e.value), fmt(e.std_error), method});
  emit(g, text);
}

struct GraphonArgs {
  std::string W;
  std::string F = "triangle";
  std::string kind = "t";
  std::int64_t samples = kDefaultGraphonSamples;
  bool mc = false;
  int n = 0;
};

void run_graphon_density(const GraphonArgs& a, const Globals& g) {
  const GraphonInput W = resolve_graphon(a.W);
  const SimpleGraph F = resolve_graph(a.F, g);
  const bool induced = a.kind == "t_ind";
  Estimate e;
  std::string method = "exact";
  if (W.step && !a.mc) {
    e = induced ? t_ind_graphon(F, *W.step) : t_graphon(F, *W.step);
  } else {
    const std::uint64_t seed = need_seed(g, "graphon density (Monte Carlo)");
    const Graphon G = W.step ? Graphon::from_step(*W.step) : *W.general;
    e = induced ? t_ind_graphon(F, G, DensityMethod::mc, a.samples, seed)
                : t_graphon(F, G, DensityMethod::mc, a.samples, seed);
    method = "mc";
  }
  std::string text = g.header ? csv({"kind", "F", "W", "value", "std_error", "method"}) : "";
  text += csv({a.kind, a.F, a.W, fmt(e.value), fmt(e.std_error), method});
  emit(g, text);
}

void run_graphon_sample(const GraphonArgs& a, const Globals& g) {
  if (a.n < 1) throw UsageError("graphon sample requires --n >= 1");
  const GraphonInput W = resolve_graphon(a.W);
  const std::uint64_t seed = need_seed(g, "graphon sample");
  const auto R = W.step ? w_random(a.n, *W.step, seed) : w_random(a.n, *W.general, seed);
  std::ostringstream os;
  io::write_edge_list(os, R.graph);
  emit(g, os.str());
}

struct DistArgs {
  std::string metric = "cut";
  std::string mode = "exact";
  std::string G;
  std::string H;
  int kmax = 4;
};

void run_dist(const DistArgs& a, const Globals& g) {
  const SimpleGraph G = resolve_graph(a.G, g);
  const SimpleGraph H = resolve_graph(a.H, g);
  const CutMode mode = a.mode == "exact" ? CutMode::exact : CutMode::heuristic;
  CutOptions opt;
  opt.threads = g.threads;
  if (mode == CutMode::heuristic) opt.seed = need_seed(g, "dist --mode heuristic");
  json j{{"metric", a.metric}, {"mode", a.mode}, {"G", a.G}, {"H", a.H}};
  if (a.metric == "cut") {
    if (G.num_nodes() != H.num_nodes()) throw UsageError("dist --metric cut needs equal node counts");
    const auto r = d_cut_aligned(G, H, mode, opt);
    j["value"] = r.value;
    j["exact"] = r.exact;
    j["upper_bound"] = r.upper_bound;
    j["S"] = nodes_json(r.S);
    j["T"] = nodes_json(r.T);
  } else if (a.metric == "delta") {
    if (G.num_nodes() == H.num_nodes()) {
      const auto r = delta_hat(G, H, mode, opt);
      j["delta_hat"] = {{"value", r.value}, {"exact", r.exact}, {"perm", nodes_json(r.perm)}};
    }
    const auto b = delta_cut(G, H, opt);
    j["lower"] = b.lower;
    j["upper"] = b.upper;
  } else {
    const auto r = d_sample(G, H, a.kmax);
    j["value"] = r.value;
    j["truncation_error"] = r.truncation_error;
    j["kmax"] = a.kmax;
  }
  emit_json(g, j);
}

struct RegularityArgs {
  double eps = 0.3;
  std::string backing;
  int quality_max_nodes = 400;
};

void run_regularity(const RegularityArgs& a, const Globals& g) {
  const std::uint64_t seed = need_seed(g, "regularity run");
  if (!(a.eps > 0.0 && a.eps <= 0.5)) throw UsageError("--eps must lie in (0, 0.5]");
  std::optional<SimpleGraph> G;
  std::optional<SamplingOracle> oracle;
  json j{{"eps", a.eps}, {"seed", *g.seed}, {"backing", a.backing}};
  if (a.backing.rfind("graphon:", 0) == 0) {
    const GraphonInput W = resolve_graphon(a.backing.substr(8));
    oracle = SamplingOracle::from_graphon(W.step ? Graphon::from_step(*W.step) : *W.general,
                                          derive_seed(seed, 1));
  } else {
    G = resolve_graph(a.backing, g);
    oracle = SamplingOracle::from_graph(*G);
    j["n"] = G->num_nodes();
  }
  RepresentativeSet R;
  if (a.eps >= 0.15) {
    const auto cut = maxcut_pipeline(*oracle, a.eps, seed);
    R = cut.reps;
    j["cut"] = {{"estimate", cut.estimate},
                {"left", nodes_json(cut.left)},
                {"right", nodes_json(cut.right)},
                {"class_mass", vector_json(cut.class_mass)},
                {"pair_density", matrix_json(cut.pair_density)},
                {"sampled_nodes", cut.sampled_nodes}};
  } else {
    R = build_reps(*oracle, a.eps, seed);
    j["cut"] = nullptr;
  }
  json reps = json::array();
  for (Handle h : R.reps) {
    if (G) {
      reps.push_back(*oracle->node(h));
    } else {
      const Point& p = oracle->point(h);
      reps.push_back(json::array({p.x, p.y}));
    }
  }
  j["representatives"] = reps;
  j["rep_distances"] = matrix_json(R.distances);
  j["capped"] = R.capped;
  j["rejection_limit"] = R.rejection_limit;
  if (G) {
    std::vector<int> cell_rep;
    const Partition P = voronoi_partition(*oracle, R, a.eps, &cell_rep);
    json blocks = json::array();
    for (const auto& b : P.blocks()) blocks.push_back(b);
    j["partition"] = {{"blocks", blocks}, {"block_rep", cell_rep}};
    const WeightedGraph Q = quotient(*G, P);
    j["quotient"] = {{"alpha", vector_json(Q.alpha)}, {"beta", matrix_json(Q.beta)}};
    if (G->num_nodes() <= a.quality_max_nodes) {
      CutOptions opt;
      opt.seed = derive_seed(seed, 2);
      opt.threads = g.threads;
      const auto q = regularity_quality(*G, P, opt);
      j["quality"] = {{"cut_distance", q.cut_distance},
                      {"exact", q.exact},
                      {"cut_upper", q.cut_upper},
                      {"bound", std::pow(4.0 * a.eps, 0.25)},
                      {"delta", q.delta},
                      {"bound_24delta", q.bound_24delta},
                      {"class_diameters", q.class_diameters},
                      {"exceptional", q.exceptional}};
    } else {
      j["quality"] = nullptr;
    }
  }
  emit_json(g, j);
}

struct EnergyArgs {
  std::string model = "maxcut";
  std::string G;
  std::string weights;
  std::string mode = "exact";
  std::string variant = "hard";
};

json cut_json(const CutResult& r) {
  return {{"value", r.value}, {"exact", r.exact}, {"assignment", r.assignment}};
}

void run_energy(const EnergyArgs& a, const Globals& g) {
  const SimpleGraph G = resolve_graph(a.G, g);
  EnergyOptions opt;
  opt.mode = a.mode == "exact" ? EnergyMode::exact : EnergyMode::local;
  if (opt.mode == EnergyMode::local) opt.seed = need_seed(g, "energy --mode local");
  json j{{"model", a.model}, {"G", a.G}, {"n", G.num_nodes()}};
  auto need_weights = [&] {
    if (a.weights.empty()) throw UsageError("energy --model " + a.model + " requires --weights");
    return io::read_file(a.weights);
  };
  if (a.model == "maxcut") {
    j.update(cut_json(maxcut(G, opt)));
  } else if (a.model == "mmcut") {
    j.update(cut_json(mmcut(G, io::matrix_from_json(need_weights()), opt)));
  } else if (a.model == "rmcut") {
    j.update(cut_json(rmcut(G, io::weighted_graph_from_json(need_weights()), opt)));
  } else {
    const SpinVariant v = a.variant == "hard" ? SpinVariant::hard : SpinVariant::meanfield;
    const auto pf = partition_function(G, io::matrix_from_json(need_weights()), v, opt.work_bound);
    j["variant"] = a.variant;
    if (a.model == "Z") {
      j["log_Z"] = pf.Z.log;
      j["Z"] = pf.Z.value();
      j["ground_state"] = pf.ground_state;
    } else {
      j["free_energy"] = pf.free_energy;
    }
  }
  emit_json(g, j);
}

struct AlgebraArgs {
  std::string file;
  bool goodman = false;
  std::string param = "hom";
  std::string target;
  int k = 2;
  int max_nodes = 4;
};

void run_verify_certificate(const AlgebraArgs& a, const Globals& g) {
  io::Certificate c;
  if (a.goodman) {
    c.squares = goodman_certificate();
    c.target = goodman_target();
  } else if (!a.file.empty()) {
    c = io::certificate_from_json(io::read_file(a.file));
  } else {
    throw UsageError("verify-certificate needs --file or --goodman");
  }
  const auto check = verify_certificate(c.squares, c.target);
  json j{{"matches", check.matches},
         {"expanded", json::parse(io::quantum_graph_to_json(check.expanded))},
         {"residual", json::parse(io::quantum_graph_to_json(check.residual))}};
  emit_json(g, j);
}

void run_connmatrix(const AlgebraArgs& a, const Globals& g) {
  GraphFunction f;
  if (a.param == "hom") {
    if (a.target.empty()) throw UsageError("connmatrix --param hom requires --target");
    if (std::filesystem::exists(a.target)) {
      f = hom_parameter(io::weighted_graph_from_json(io::read_file(a.target)));
    } else {
      f = hom_parameter(WeightedGraph::from_graph(resolve_graph(a.target, g)));
    }
  } else if (a.param == "pm") {
    f = pm_parameter();
  } else {
    f = signed_pairs_parameter();
  }
  const auto basis = labeled_basis(a.k, a.max_nodes);
  const auto C = connection_submatrix(f, a.k, basis);
  const auto psd = psd_rank_check(C.M);
  json b = json::array();
  for (const auto& lg : basis) {
    json edges = json::array();
    for (const auto& e : lg.base.edges()) {
      for (int m = 0; m < e.multiplicity; ++m) edges.push_back({e.u, e.v});
    }
    b.push_back({{"n", lg.num_nodes()}, {"edges", edges}, {"labels", lg.labels}});
  }
  json j{{"param", a.param},
         {"k", a.k},
         {"max_nodes", a.max_nodes},
         {"basis", b},
         {"matrix", matrix_json(C.M)},
         {"eigenvalues", vector_json(psd.eigenvalues)},
         {"min_eigenvalue", psd.min_eigenvalue},
         {"is_psd", psd.is_psd},
         {"rank", psd.rank}};
  emit_json(g, j);
}

struct SampleArgs {
  std::string kind = "sigma";
  std::string G;
  int k = 3;
  int r = 1;
  int d = 3;
  std::string mode = "exact";
  std::int64_t trials = 10000;
  std::string F = "triangle";
};

void run_sample(const SampleArgs& a, const Globals& g) {
  const SimpleGraph G = resolve_graph(a.G, g);
  if (a.kind == "concentration") {
    const SimpleGraph F = resolve_graph(a.F, g);
    const GraphParameter f = [&F](const SimpleGraph& S) {
      return density(DensityKind::t, F, S);
    };
    const auto rep = concentration_harness(f, G, a.k, a.trials, need_seed(g, "sample concentration"));
    std::string text = csv({"k", "trials", "mean", "std_dev", "median", "lipschitz_bound",
                            "lipschitz_violations", "lipschitz_allowed", "cut_bound",
                            "cut_violations", "cut_allowed"});
    text += csv({std::to_string(rep.k), std::to_string(rep.trials), fmt(rep.mean),
                 fmt(rep.std_dev), fmt(rep.median), fmt(rep.lipschitz_bound),
                 fmt(rep.lipschitz_violations), fmt(rep.lipschitz_allowed), fmt(rep.cut_bound),
                 fmt(rep.cut_violations), fmt(rep.cut_allowed)});
    emit(g, text);
    return;
  }
  const SampleMode mode = a.mode == "exact" ? SampleMode::exact : SampleMode::empirical;
  std::uint64_t seed = 0;
  if (mode == SampleMode::empirical) seed = need_seed(g, "sample --mode empirical");
  SampleDistribution dist;
  if (a.kind == "sigma") {
    dist = sigma(G, a.k, mode, a.trials, seed);
  } else if (a.kind == "rho") {
    dist = rho(G, a.r, a.d, mode, a.trials, seed);
  } else {
    dist = rho_from_s(G, a.r, a.d);
  }
  std::string text = csv({"kind", "size", "nodes", "edges", "probability"});
  for (const auto& [code, prob] : dist.probabilities) {
    const SimpleGraph& rep = dist.representatives.at(code);
    text += csv({a.kind, std::to_string(dist.size), std::to_string(rep.num_nodes()),
                 edges_field(rep), fmt(prob)});
  }
  emit(g, text);
}

struct ConvergeArgs {
  std::string family;
  std::string sizes;
  std::string F = "edge";
  std::int64_t samples = 100000;
};

void run_converge(const ConvergeArgs& a, const Globals& g) {
  std::vector<int> sizes;
  try {
    for (const auto& s : split(a.sizes, ',')) sizes.push_back(std::stoi(s));
  } catch (const std::logic_error&) {
    throw UsageError("--sizes must be a comma-separated list of integers");
  }
  const auto rows =
      convergence_diagnostic(a.family, sizes, split(a.F, ','), need_seed(g, "converge"), a.samples);
  std::string text = csv({"n", "F", "estimate", "std_error", "exact"});
  for (const auto& r : rows) {
    text += csv({std::to_string(r.n), r.F, fmt(r.estimate), fmt(r.std_error),
                 r.exact ? "1" : "0"});
  }
  emit(g, text);
}

struct BatteryArgs {
  std::string kind = "inequality";
  std::string G;
  std::string W;
  std::string sidorenko;
  double p = -1.0;
  std::int64_t samples = kDefaultGraphonSamples;
  int subsets = 100;
};

void run_battery(const BatteryArgs& a, const Globals& g) {
  if (a.kind == "quasirandom") {
    if (a.G.empty()) throw UsageError("battery --kind quasirandom requires --G");
    const SimpleGraph G = resolve_graph(a.G, g);
    const double p = a.p >= 0.0 ? a.p : edge_density(G);
    const auto rep = quasirandom_battery(G, p, need_seed(g, "battery quasirandom"), a.subsets);
    std::string text = csv({"quantity", "value"});
    const std::vector<std::pair<std::string, double>> rows{
        {"p", rep.p},
        {"degree_deviation", rep.degree_deviation},
        {"codegree_deviation", rep.codegree_deviation},
        {"hom_deviation", rep.hom_deviation},
        {"c4_ratio", rep.c4_ratio},
        {"c4_deviation", rep.c4_deviation},
        {"subset_deviation", rep.subset_deviation}};
    for (const auto& [name, v] : rows) text += csv({name, fmt(v)});
    for (const auto& [name, v] : rep.hom_ratios) text += csv({"hom_ratio_" + name, fmt(v)});
    emit(g, text);
    return;
  }
  std::optional<SimpleGraph> sid;
  if (!a.sidorenko.empty()) sid = resolve_graph(a.sidorenko, g);
  InequalityReport rep;
  if (!a.G.empty()) {
    rep = inequality_battery(resolve_graph(a.G, g), sid);
  } else if (!a.W.empty()) {
    const GraphonInput W = resolve_graphon(a.W);
    if (W.step) {
      rep = inequality_battery(*W.step, sid);
    } else {
      rep = inequality_battery(*W.general, a.samples, need_seed(g, "battery on a builtin graphon"),
                               sid);
    }
  } else {
    throw UsageError("battery --kind inequality requires --G or --W");
  }
  std::string text = csv({"name", "lhs", "rhs", "margin", "sigma", "violated", "report_only"});
  for (const auto& r : rep.results) {
    text += csv({r.name, fmt(r.lhs), fmt(r.rhs), fmt(r.margin), fmt(r.sigma),
                 r.violated ? "1" : "0", r.report_only ? "1" : "0"});
  }
  emit(g, text);
}

int run_paper_check(const std::string& id_text, const Globals& g) {
  int id = 0;
  try {
    id = checks::parse_check_id(id_text);
  } catch (const std::exception&) {
    throw UsageError("unknown --paper-check id '" + id_text + "'");
  }
  const auto r = checks::run_check(id, g.threads);
  emit(g, checks::format_result(r) + "\n");
  return r.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphlim: dense graph limits, sampling and regularity experiments"};
  app.set_version_flag("--version", std::string("graphlim 0.1.0 (") + GRAPHLIM_BUILD_HASH + ")");
  app.fallthrough();
  app.require_subcommand(0, 1);

  Globals g;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Seed for every stochastic step");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--threads", g.threads, "Worker cap; results do not depend on it")
      ->check(CLI::Range(1, 256));
  app.add_flag("--header", g.header, "Prepend column names to single-row CSV output");
  std::string paper_check;
  app.add_option("--paper-check", paper_check, "Run one acceptance experiment (id or name)");

  const auto graph_names = gen::family_names();

  GenerateArgs gen_args;
  auto* generate = app.add_subcommand("generate", "Write a builtin graph as an edge list");
  generate->add_option("--family", gen_args.family)->required()->check(CLI::IsMember(graph_names));
  generate->add_option("--n", gen_args.n, "Node count (prime for paley, side for grid)");
  generate->add_option("--p", gen_args.p, "Edge probability for er; the prime for paley");
  generate->add_option("--r", gen_args.r, "Number of classes for turan");

  PairArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "Exact hom/inj/ind count of F in G");
  count_cmd->add_option("--kind", count_args.kind)->required()
      ->check(CLI::IsMember({"hom", "inj", "ind"}));
  count_cmd->add_option("--F", count_args.F)->required();
  count_cmd->add_option("--G", count_args.G)->required();
  count_cmd->add_option("--work-bound", count_args.work_bound);

  PairArgs density_args;
  auto* density_cmd = app.add_subcommand("density", "Homomorphism or sparse density of F in G");
  density_cmd->add_option("--kind", density_args.kind)->required()
      ->check(CLI::IsMember({"t", "t_inj", "t_ind", "s", "s_inj", "s_ind"}));
  density_cmd->add_option("--F", density_args.F)->required();
  density_cmd->add_option("--G", density_args.G)->required();
  density_cmd->add_option("--mc", density_args.mc, "Monte Carlo samples instead of exact count");
  density_cmd->add_option("--work-bound", density_args.work_bound);

  GraphonArgs graphon_args;
  auto* graphon_cmd = app.add_subcommand("graphon", "Graphon densities and W-random graphs");
  graphon_cmd->require_subcommand(1);
  auto* graphon_density = graphon_cmd->add_subcommand("density", "t(F, W) or t_ind(F, W)");
  graphon_density->add_option("--W", graphon_args.W)->required();
  graphon_density->add_option("--F", graphon_args.F);
  graphon_density->add_option("--kind", graphon_args.kind)->check(CLI::IsMember({"t", "t_ind"}));
  graphon_density->add_option("--samples", graphon_args.samples);
  graphon_density->add_flag("--mc", graphon_args.mc, "Monte Carlo even for step graphons");
  auto* graphon_sample = graphon_cmd->add_subcommand("sample", "Edge list of G(n, W)");
  graphon_sample->add_option("--W", graphon_args.W)->required();
  graphon_sample->add_option("--n", graphon_args.n)->required();

  DistArgs dist_args;
  auto* dist = app.add_subcommand("dist", "Cut, unlabeled cut and sample distances");
  dist->add_option("--metric", dist_args.metric)->check(CLI::IsMember({"cut", "delta", "sample"}));
  dist->add_option("--mode", dist_args.mode)->check(CLI::IsMember({"exact", "heuristic"}));
  dist->add_option("--G", dist_args.G)->required();
  dist->add_option("--H", dist_args.H)->required();
  dist->add_option("--kmax", dist_args.kmax);

  RegularityArgs reg_args;
  auto* regularity = app.add_subcommand("regularity", "Sampling-based weak regularity");
  regularity->require_subcommand(1);
  auto* reg_run = regularity->add_subcommand("run", "Representatives, partition, quality, cut");
  reg_run->add_option("--eps", reg_args.eps);
  reg_run->add_option("--backing", reg_args.backing, "Graph spec, or graphon:<spec>")->required();
  reg_run->add_option("--quality-max-nodes", reg_args.quality_max_nodes);

  EnergyArgs energy_args;
  auto* energy = app.add_subcommand("energy", "Cut energies and partition functions");
  energy->add_option("--model", energy_args.model)
      ->check(CLI::IsMember({"maxcut", "mmcut", "rmcut", "Z", "F"}));
  energy->add_option("--G", energy_args.G)->required();
  energy->add_option("--weights", energy_args.weights, "JSON beta/J matrix or weighted graph");
  energy->add_option("--mode", energy_args.mode)->check(CLI::IsMember({"exact", "local"}));
  energy->add_option("--variant", energy_args.variant)->check(CLI::IsMember({"hard", "meanfield"}));

  AlgebraArgs alg_args;
  auto* algebra = app.add_subcommand("algebra", "Quantum graph certificates and connection matrices");
  algebra->require_subcommand(1);
  auto* verify = algebra->add_subcommand("verify-certificate", "Expand a square-sum certificate");
  verify->add_option("--file", alg_args.file);
  verify->add_flag("--goodman", alg_args.goodman, "Use the builtin Goodman certificate");
  auto* connmatrix = algebra->add_subcommand("connmatrix", "Connection submatrix with PSD check");
  connmatrix->add_option("--param", alg_args.param)->check(CLI::IsMember({"hom", "pm", "signed"}));
  connmatrix->add_option("--target", alg_args.target, "Weighted graph JSON or graph spec");
  connmatrix->add_option("--k", alg_args.k);
  connmatrix->add_option("--max-nodes", alg_args.max_nodes);

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Subgraph and neighborhood sample distributions");
  sample->add_option("--kind", sample_args.kind)
      ->check(CLI::IsMember({"sigma", "rho", "rho-s", "concentration"}));
  sample->add_option("--G", sample_args.G)->required();
  sample->add_option("--k", sample_args.k);
  sample->add_option("--r", sample_args.r);
  sample->add_option("--d", sample_args.d);
  sample->add_option("--mode", sample_args.mode)->check(CLI::IsMember({"exact", "empirical"}));
  sample->add_option("--trials", sample_args.trials);
  sample->add_option("--F", sample_args.F, "Pattern for --kind concentration");

  ConvergeArgs conv_args;
  auto* converge = app.add_subcommand("converge", "Densities along a growing family");
  converge->add_option("--family", conv_args.family)->required()->check(CLI::IsMember(graph_names));
  converge->add_option("--sizes", conv_args.sizes)->required();
  converge->add_option("--F", conv_args.F, "Comma-separated pattern names");
  converge->add_option("--samples", conv_args.samples);

  BatteryArgs bat_args;
  auto* battery = app.add_subcommand("battery", "Inequality or quasirandomness battery");
  battery->add_option("--kind", bat_args.kind)->check(CLI::IsMember({"inequality", "quasirandom"}));
  battery->add_option("--G", bat_args.G);
  battery->add_option("--W", bat_args.W);
  battery->add_option("--sidorenko", bat_args.sidorenko);
  battery->add_option("--p", bat_args.p);
  battery->add_option("--samples", bat_args.samples);
  battery->add_option("--subsets", bat_args.subsets);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  try {
    if (!paper_check.empty()) return run_paper_check(paper_check, g);
    if (generate->parsed()) {
      run_generate(gen_args, g);
    } else if (count_cmd->parsed()) {
      run_count(count_args, g);
    } else if (density_cmd->parsed()) {
      run_density(density_args, g);
    } else if (graphon_density->parsed()) {
      run_graphon_density(graphon_args, g);
    } else if (graphon_sample->parsed()) {
      run_graphon_sample(graphon_args, g);
    } else if (dist->parsed()) {
      run_dist(dist_args, g);
    } else if (reg_run->parsed()) {
      run_regularity(reg_args, g);
    } else if (energy->parsed()) {
      run_energy(energy_args, g);
    } else if (verify->parsed()) {
      run_verify_certificate(alg_args, g);
    } else if (connmatrix->parsed()) {
      run_connmatrix(alg_args, g);
    } else if (sample->parsed()) {
      run_sample(sample_args, g);
    } else if (converge->parsed()) {
      run_converge(conv_args, g);
    } else if (battery->parsed()) {
      run_battery(bat_args, g);
    } else {
      std::cerr << app.help();
      return kExitUsage;
    }
  } catch (const BoundExceeded& e) {
    std::cerr << "error: bound exceeded: " << e.what() << "\n";
    return kExitBound;
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range and domain_error: bad input.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
