#ifndef GRAPHLIM_CANONICAL_HPP
#define GRAPHLIM_CANONICAL_HPP

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "graphlim/graph.hpp"

namespace graphlim {

/// Byte string identifying an isomorphism class. Two inputs get equal codes
/// iff they are isomorphic by a map preserving node colors.
using CanonicalCode = std::string;

inline constexpr int kDefaultCanonicalBound = 10;
inline constexpr int kDefaultRootedCanonicalBound = 30;

struct CanonicalLabeling {
  /// order[i] is the original node placed at canonical position i.
  std::vector<Node> order;
  CanonicalCode code;
};

/// Canonical labeling of a colored multigraph given by its symmetric
/// multiplicity matrix (loops on the diagonal). Color refinement followed by
/// individualization search; the lexicographically smallest encoding over all
/// leaves is returned.
CanonicalLabeling canonical_labeling(const Eigen::MatrixXi& multiplicities,
                                     std::span<const int> colors,
                                     int max_nodes = kDefaultCanonicalBound);

CanonicalCode canonical_form(const Multigraph& g, int max_nodes = kDefaultCanonicalBound);
CanonicalCode canonical_form(const SimpleGraph& g, int max_nodes = kDefaultCanonicalBound);
/// Labels are fixed: label i must map to label i.
CanonicalCode canonical_form(const LabeledGraph& g,
                             int max_nodes = kDefaultRootedCanonicalBound);
CanonicalCode rooted_canonical_form(const SimpleGraph& g, Node root,
                                    int max_nodes = kDefaultRootedCanonicalBound);

/// Relabels `g` so that labels occupy nodes 0..k-1 and the rest follow the
/// canonical order; isomorphic inputs yield identical outputs.
LabeledGraph canonical_representative(const LabeledGraph& g,
                                      int max_nodes = kDefaultRootedCanonicalBound);
SimpleGraph canonical_representative(const SimpleGraph& g,
                                     int max_nodes = kDefaultCanonicalBound);

bool isomorphic(const SimpleGraph& a, const SimpleGraph& b);

// Small-graph enumeration.

/// All 2^(n choose 2) simple graphs on nodes 0..n-1, indexed by edge mask
/// over the pairs in lexicographic order.
std::vector<SimpleGraph> all_labeled_graphs(int n);
/// One representative per isomorphism class of simple graphs on n nodes
/// (n <= 6).
std::vector<SimpleGraph> all_graphs(int n);
/// Isomorphism classes of k-labeled simple graphs with between k and
/// max_nodes nodes.
std::vector<LabeledGraph> labeled_basis(int k, int max_nodes);

/// Pairs (i, j), i < j, in lexicographic order.
std::vector<std::pair<Node, Node>> node_pairs(int n);

}  // namespace graphlim

#endif  // GRAPHLIM_CANONICAL_HPP
