#include "graphlim/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace graphlim {

namespace {

void check_node(int n, Node v) {
  if (v < 0 || v >= n) {
    throw std::out_of_range("node " + std::to_string(v) + " outside 0.." +
                            std::to_string(n - 1));
  }
}

}  // namespace

// ---------------------------------------------------------------- Multigraph

Multigraph::Multigraph(int n, bool loops_allowed) : n_(n), loops_allowed_(loops_allowed) {
  if (n < 0) throw std::invalid_argument("negative node count");
}

Multigraph::Multigraph(int n, std::span<const std::pair<Node, Node>> pairs,
                       bool loops_allowed)
    : Multigraph(n, loops_allowed) {
  for (auto [u, v] : pairs) add_edge(u, v);
}

void Multigraph::add_edge(Node u, Node v, int multiplicity) {
  check_node(n_, u);
  check_node(n_, v);
  if (multiplicity <= 0) throw std::invalid_argument("multiplicity must be positive");
  if (u == v && !loops_allowed_) throw std::invalid_argument("loop in loopless multigraph");
  if (u > v) std::swap(u, v);
  Edge key{u, v, 0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  if (it != edges_.end() && it->u == u && it->v == v) {
    it->multiplicity += multiplicity;
  } else {
    edges_.insert(it, Edge{u, v, multiplicity});
  }
}

std::int64_t Multigraph::num_edges() const {
  std::int64_t total = 0;
  for (const auto& e : edges_) total += e.multiplicity;
  return total;
}

int Multigraph::multiplicity(Node u, Node v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v, 0},
                             [](const Edge& a, const Edge& b) {
                               return std::pair(a.u, a.v) < std::pair(b.u, b.v);
                             });
  return (it != edges_.end() && it->u == u && it->v == v) ? it->multiplicity : 0;
}

int Multigraph::degree(Node v) const {
  int d = 0;
  for (const auto& e : edges_) {
    if (e.u == v) d += e.multiplicity;
    if (e.v == v) d += e.multiplicity;
  }
  return d;
}

bool Multigraph::is_simple() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.u != e.v && e.multiplicity == 1; });
}

Eigen::MatrixXi Multigraph::multiplicity_matrix() const {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n_, n_);
  for (const auto& e : edges_) {
    m(e.u, e.v) = e.multiplicity;
    m(e.v, e.u) = e.multiplicity;
  }
  return m;
}

// ---------------------------------------------------------------- SimpleGraph

SimpleGraph::SimpleGraph(int n)
    : n_(n), words_(static_cast<std::size_t>((n + 63) / 64)), adj_(n),
      rows_(static_cast<std::size_t>(n) * words_, 0) {
  if (n < 0) throw std::invalid_argument("negative node count");
}

SimpleGraph::SimpleGraph(int n, std::span<const std::pair<Node, Node>> edges) : SimpleGraph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

SimpleGraph::SimpleGraph(const Multigraph& g) : SimpleGraph(g.num_nodes()) {
  if (!g.is_simple()) throw std::invalid_argument("multigraph has loops or multi-edges");
  for (const auto& e : g.edges()) add_edge(e.u, e.v);
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

void SimpleGraph::add_edge(Node u, Node v) {
  check_node(n_, u);
  check_node(n_, v);
  if (u == v) throw std::invalid_argument("loop in simple graph");
  if (adjacent(u, v)) {
    throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  auto insert_sorted = [](std::vector<Node>& a, Node x) {
    a.insert(std::upper_bound(a.begin(), a.end(), x), x);
  };
  insert_sorted(adj_[u], v);
  insert_sorted(adj_[v], u);
  ++m_;
}

int SimpleGraph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

std::vector<std::pair<Node, Node>> SimpleGraph::edge_list() const {
  std::vector<std::pair<Node, Node>> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (Node u = 0; u < n_; ++u) {
    for (Node v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Multigraph SimpleGraph::to_multigraph() const {
  auto e = edge_list();
  return Multigraph(n_, e);
}

Eigen::MatrixXd SimpleGraph::adjacency_matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (Node u = 0; u < n_; ++u) {
    for (Node v : adj_[u]) a(u, v) = 1.0;
  }
  return a;
}

// ---------------------------------------------------------------- WeightedGraph

WeightedGraph::WeightedGraph(Eigen::VectorXd node_weights, Eigen::MatrixXd edge_weights)
    : alpha(std::move(node_weights)), beta(std::move(edge_weights)) {
  const auto q = alpha.size();
  if (beta.rows() != q || beta.cols() != q) {
    throw std::invalid_argument("edgeweight matrix must be q x q");
  }
  if ((alpha.array() <= 0.0).any()) throw std::invalid_argument("nodeweights must be positive");
  if (q > 0 && (beta - beta.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("edgeweights must be symmetric");
  }
}

WeightedGraph WeightedGraph::from_graph(const SimpleGraph& g) {
  return {Eigen::VectorXd::Ones(g.num_nodes()), g.adjacency_matrix()};
}

WeightedGraph WeightedGraph::from_multigraph(const Multigraph& g) {
  return {Eigen::VectorXd::Ones(g.num_nodes()), g.multiplicity_matrix().cast<double>()};
}

// ---------------------------------------------------------------- LabeledGraph

LabeledGraph::LabeledGraph(Multigraph g, std::vector<Node> label_nodes)
    : base(std::move(g)), labels(std::move(label_nodes)) {
  std::vector<char> seen(static_cast<std::size_t>(base.num_nodes()), 0);
  for (Node v : labels) {
    check_node(base.num_nodes(), v);
    if (seen[v]) throw std::invalid_argument("labels must be injective");
    seen[v] = 1;
  }
}

LabeledGraph LabeledGraph::empty(int k) {
  std::vector<Node> l(static_cast<std::size_t>(k));
  std::iota(l.begin(), l.end(), 0);
  return {Multigraph(k), std::move(l)};
}

// ---------------------------------------------------------------- Partition

Partition::Partition(int n, std::vector<std::vector<Node>> blocks)
    : n_(n), blocks_(std::move(blocks)), block_of_(static_cast<std::size_t>(n), -1) {
  for (int b = 0; b < num_blocks(); ++b) {
    if (blocks_[b].empty()) throw std::invalid_argument("empty partition block");
    for (Node v : blocks_[b]) {
      check_node(n, v);
      if (block_of_[v] != -1) throw std::invalid_argument("partition blocks overlap");
      block_of_[v] = b;
    }
  }
  if (std::find(block_of_.begin(), block_of_.end(), -1) != block_of_.end()) {
    throw std::invalid_argument("partition does not cover all nodes");
  }
}

Partition Partition::from_assignment(std::span<const int> block_of) {
  const int n = static_cast<int>(block_of.size());
  std::vector<int> ids(block_of.begin(), block_of.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::vector<Node>> blocks(ids.size());
  for (Node v = 0; v < n; ++v) {
    auto b = std::lower_bound(ids.begin(), ids.end(), block_of[v]) - ids.begin();
    blocks[static_cast<std::size_t>(b)].push_back(v);
  }
  return {n, std::move(blocks)};
}

Partition Partition::discrete(int n) {
  std::vector<std::vector<Node>> blocks;
  for (Node v = 0; v < n; ++v) blocks.push_back({v});
  return {n, std::move(blocks)};
}

Partition Partition::single(int n) {
  std::vector<Node> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  return {n, {std::move(all)}};
}

// ---------------------------------------------------------------- operations

LabeledGraph glue(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.k() != b.k()) throw std::invalid_argument("glue: label counts differ");
  const int na = a.num_nodes();
  std::vector<Node> map_b(static_cast<std::size_t>(b.num_nodes()), -1);
  for (int i = 0; i < b.k(); ++i) map_b[b.labels[i]] = a.labels[i];
  int next = na;
  for (auto& m : map_b) {
    if (m == -1) m = next++;
  }
  Multigraph g(next, a.base.loops_allowed() || b.base.loops_allowed());
  for (const auto& e : a.base.edges()) g.add_edge(e.u, e.v, e.multiplicity);
  for (const auto& e : b.base.edges()) g.add_edge(map_b[e.u], map_b[e.v], e.multiplicity);
  return {std::move(g), a.labels};
}

LabeledGraph tensor(const LabeledGraph& a, const LabeledGraph& b) {
  const int na = a.num_nodes();
  Multigraph g(na + b.num_nodes(), a.base.loops_allowed() || b.base.loops_allowed());
  for (const auto& e : a.base.edges()) g.add_edge(e.u, e.v, e.multiplicity);
  for (const auto& e : b.base.edges()) g.add_edge(e.u + na, e.v + na, e.multiplicity);
  std::vector<Node> labels = a.labels;
  for (Node v : b.labels) labels.push_back(v + na);
  return {std::move(g), std::move(labels)};
}

Multigraph remove_isolated(const Multigraph& g) {
  std::vector<Node> index(static_cast<std::size_t>(g.num_nodes()), -1);
  for (const auto& e : g.edges()) {
    index[e.u] = 0;
    index[e.v] = 0;
  }
  int next = 0;
  for (auto& i : index) {
    if (i == 0) i = next++;
  }
  Multigraph out(next, g.loops_allowed());
  for (const auto& e : g.edges()) out.add_edge(index[e.u], index[e.v], e.multiplicity);
  return out;
}

Multigraph unlabel(const LabeledGraph& g, bool drop_isolated) {
  return drop_isolated ? remove_isolated(g.base) : g.base;
}

Multigraph simplify(const Multigraph& g) {
  Multigraph out(g.num_nodes());
  for (const auto& e : g.edges()) {
    if (e.u != e.v) out.add_edge(e.u, e.v, 1);
  }
  return out;
}

SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
  auto edges = a.edge_list();
  for (auto [u, v] : b.edge_list()) edges.emplace_back(u + a.num_nodes(), v + a.num_nodes());
  return {a.num_nodes() + b.num_nodes(), edges};
}

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  return tensor(LabeledGraph(a, {}), LabeledGraph(b, {})).base;
}

SimpleGraph blow_up(const SimpleGraph& g, int m) {
  if (m < 1) throw std::invalid_argument("blow_up: factor must be positive");
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(static_cast<std::size_t>(g.num_edges()) * m * m);
  for (auto [u, v] : g.edge_list()) {
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) edges.emplace_back(u * m + a, v * m + b);
    }
  }
  return {g.num_nodes() * m, edges};
}

SimpleGraph induce(const SimpleGraph& g, std::span<const Node> nodes) {
  const int k = static_cast<int>(nodes.size());
  for (Node v : nodes) check_node(g.num_nodes(), v);
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (nodes[i] == nodes[j]) throw std::invalid_argument("induce: repeated node");
      if (g.adjacent(nodes[i], nodes[j])) edges.emplace_back(i, j);
    }
  }
  return {k, edges};
}

SimpleGraph complement(const SimpleGraph& g) {
  std::vector<std::pair<Node, Node>> edges;
  for (Node u = 0; u < g.num_nodes(); ++u) {
    for (Node v = u + 1; v < g.num_nodes(); ++v) {
      if (!g.adjacent(u, v)) edges.emplace_back(u, v);
    }
  }
  return {g.num_nodes(), edges};
}

SimpleGraph relabel(const SimpleGraph& g, std::span<const Node> perm) {
  if (static_cast<int>(perm.size()) != g.num_nodes()) {
    throw std::invalid_argument("relabel: permutation size mismatch");
  }
  auto edges = g.edge_list();
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  return {g.num_nodes(), edges};
}

std::vector<std::vector<Node>> connected_components(const SimpleGraph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<std::vector<Node>> out;
  for (Node s = 0; s < g.num_nodes(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<Node> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Node w : g.neighbors(members[i])) {
        if (comp[w] == -1) {
          comp[w] = comp[s];
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_connected(const SimpleGraph& g) {
  return g.num_nodes() <= 1 || connected_components(g).size() == 1;
}

}  // namespace graphlim
