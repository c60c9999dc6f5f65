#ifndef GRAPHLIM_GRAPH_HPP
#define GRAPHLIM_GRAPH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace graphlim {

using Node = int;

struct Edge {
  Node u = 0;
  Node v = 0;
  int multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite graph on nodes 0..n-1 with positive integer edge multiplicities.
/// Edges are stored once per unordered pair with u <= v, sorted.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n, bool loops_allowed = false);
  /// Repeated pairs in `pairs` accumulate multiplicity.
  Multigraph(int n, std::span<const std::pair<Node, Node>> pairs,
             bool loops_allowed = false);

  int num_nodes() const { return n_; }
  bool loops_allowed() const { return loops_allowed_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Total number of edges counted with multiplicity.
  std::int64_t num_edges() const;
  int multiplicity(Node u, Node v) const;
  int degree(Node v) const;
  bool is_simple() const;

  void add_edge(Node u, Node v, int multiplicity = 1);

  /// Symmetric n x n matrix of multiplicities (loops on the diagonal).
  Eigen::MatrixXi multiplicity_matrix() const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  int n_ = 0;
  bool loops_allowed_ = false;
  std::vector<Edge> edges_;
};

/// Loopless graph with multiplicities at most one. Adjacency lists and
/// packed bit rows are kept for constant-time adjacency queries.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n);
  SimpleGraph(int n, std::span<const std::pair<Node, Node>> edges);
  /// Throws std::invalid_argument if `g` has loops or multi-edges.
  explicit SimpleGraph(const Multigraph& g);

  int num_nodes() const { return n_; }
  std::int64_t num_edges() const { return m_; }

  bool adjacent(Node u, Node v) const {
    return (rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  const std::vector<Node>& neighbors(Node v) const { return adj_[v]; }
  int degree(Node v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  /// Packed adjacency row of `v` (bit w of word w/64).
  std::span<const std::uint64_t> row(Node v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::size_t words_per_row() const { return words_; }

  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<std::pair<Node, Node>> edge_list() const;
  Multigraph to_multigraph() const;
  Eigen::MatrixXd adjacency_matrix() const;

  void add_edge(Node u, Node v);

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  int n_ = 0;
  std::int64_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<Node>> adj_;
  std::vector<std::uint64_t> rows_;
};

/// Target graph with positive nodeweights alpha and symmetric edgeweights
/// beta (diagonal entries are loop weights).
struct WeightedGraph {
  Eigen::VectorXd alpha;
  Eigen::MatrixXd beta;

  WeightedGraph() = default;
  WeightedGraph(Eigen::VectorXd node_weights, Eigen::MatrixXd edge_weights);

  int num_nodes() const { return static_cast<int>(alpha.size()); }
  double total_weight() const { return alpha.sum(); }

  /// Unit nodeweights, beta = adjacency matrix.
  static WeightedGraph from_graph(const SimpleGraph& g);
  /// Unit nodeweights, beta = multiplicity matrix.
  static WeightedGraph from_multigraph(const Multigraph& g);
};

/// Graph with k distinguished nodes; labels[i] is the node carrying label i+1.
struct LabeledGraph {
  Multigraph base;
  std::vector<Node> labels;

  LabeledGraph() = default;
  LabeledGraph(Multigraph g, std::vector<Node> label_nodes);

  int k() const { return static_cast<int>(labels.size()); }
  int num_nodes() const { return base.num_nodes(); }
  bool fully_labeled() const { return k() == num_nodes(); }

  /// O_k: k labeled nodes, no edges.
  static LabeledGraph empty(int k);
};

/// Partition of 0..n-1 into nonempty disjoint blocks.
class Partition {
 public:
  Partition() = default;
  Partition(int n, std::vector<std::vector<Node>> blocks);
  /// block_of[v] = index of the block containing v.
  static Partition from_assignment(std::span<const int> block_of);
  static Partition discrete(int n);
  static Partition single(int n);

  int num_nodes() const { return n_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<Node>>& blocks() const { return blocks_; }
  int block_of(Node v) const { return block_of_[v]; }

 private:
  int n_ = 0;
  std::vector<std::vector<Node>> blocks_;
  std::vector<int> block_of_;
};

// Labeled-graph algebra.

/// Disjoint union with equally labeled nodes identified; multiplicities add.
LabeledGraph glue(const LabeledGraph& a, const LabeledGraph& b);
/// Disjoint union; labels of `b` are shifted by a.k().
LabeledGraph tensor(const LabeledGraph& a, const LabeledGraph& b);
Multigraph unlabel(const LabeledGraph& g, bool drop_isolated);

Multigraph remove_isolated(const Multigraph& g);
/// Collapses every multiplicity to one and drops loops.
Multigraph simplify(const Multigraph& g);
SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b);
Multigraph disjoint_union(const Multigraph& a, const Multigraph& b);

/// Each node replaced by m independent twins (no edges inside a twin class).
SimpleGraph blow_up(const SimpleGraph& g, int m);
/// Induced subgraph on `nodes`, relabeled 0..|S|-1 in the given order.
SimpleGraph induce(const SimpleGraph& g, std::span<const Node> nodes);
SimpleGraph complement(const SimpleGraph& g);
/// Graph with node v of `g` renamed perm[v].
SimpleGraph relabel(const SimpleGraph& g, std::span<const Node> perm);

bool is_connected(const SimpleGraph& g);
std::vector<std::vector<Node>> connected_components(const SimpleGraph& g);

}  // namespace graphlim

#endif  // GRAPHLIM_GRAPH_HPP
