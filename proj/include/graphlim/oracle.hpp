#ifndef GRAPHLIM_ORACLE_HPP
#define GRAPHLIM_ORACLE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

using Handle = std::int64_t;

/// Black-box access to a large graph: fresh uniform nodes and adjacency
/// queries between issued handles. Backed by a concrete graph or by a
/// graphon (each handle then carries its latent point, and adjacency is a
/// fixed function of the two points).
class SamplingOracle {
 public:
  static SamplingOracle from_graph(SimpleGraph G);
  static SamplingOracle from_graphon(Graphon W, std::uint64_t edge_seed);

  /// Fresh handle, uniform over the backing population and independent of
  /// all earlier handles. Uses the caller's generator.
  Handle sample(Rng& rng);
  /// Handle for a given node of the backing graph (graph backing only).
  Handle handle_of_node(Node v);

  bool adjacent(Handle a, Handle b) const;

  bool has_graph() const { return graph_ != nullptr; }
  const SimpleGraph& graph() const;
  /// Backing node of a handle (graph backing only).
  std::optional<Node> node(Handle h) const;
  const Point& point(Handle h) const;
  /// Key identifying the backing element; equal keys answer every query
  /// identically.
  std::uint64_t identity(Handle h) const;

  std::int64_t num_handles() const { return static_cast<std::int64_t>(entries_.size()); }
  std::int64_t adjacency_queries() const { return queries_; }

  /// Induced subgraph on k fresh handles. For graph backing the k nodes are a
  /// uniform k-subset; for graphon backing they are k independent points.
  SimpleGraph sample_induced(int k, Rng& rng, std::vector<Handle>* handles = nullptr);

 private:
  struct Entry {
    Node node = -1;
    Point point;
  };

  std::shared_ptr<const SimpleGraph> graph_;
  std::shared_ptr<const Graphon> graphon_;
  std::uint64_t edge_seed_ = 0;
  std::vector<Entry> entries_;
  mutable std::int64_t queries_ = 0;
};

}  // namespace graphlim

#endif  // GRAPHLIM_ORACLE_HPP
