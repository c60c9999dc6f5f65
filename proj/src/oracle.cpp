#include "graphlim/oracle.hpp"

#include <stdexcept>

namespace graphlim {

SamplingOracle SamplingOracle::from_graph(SimpleGraph G) {
  if (G.num_nodes() == 0) throw std::invalid_argument("SamplingOracle: empty graph");
  SamplingOracle o;
  o.graph_ = std::make_shared<const SimpleGraph>(std::move(G));
  return o;
}

SamplingOracle SamplingOracle::from_graphon(Graphon W, std::uint64_t edge_seed) {
  SamplingOracle o;
  o.graphon_ = std::make_shared<const Graphon>(std::move(W));
  o.edge_seed_ = edge_seed;
  return o;
}

Handle SamplingOracle::sample(Rng& rng) {
  Entry e;
  if (graph_) {
    e.node = static_cast<Node>(uniform_index(rng, static_cast<std::uint64_t>(graph_->num_nodes())));
  } else {
    e.point = graphon_->sample(rng);
  }
  entries_.push_back(e);
  return static_cast<Handle>(entries_.size()) - 1;
}

Handle SamplingOracle::handle_of_node(Node v) {
  if (!graph_) throw std::logic_error("handle_of_node: oracle is not graph-backed");
  if (v < 0 || v >= graph_->num_nodes()) throw std::out_of_range("handle_of_node: node out of range");
  entries_.push_back(Entry{v, {}});
  return static_cast<Handle>(entries_.size()) - 1;
}

bool SamplingOracle::adjacent(Handle a, Handle b) const {
  ++queries_;
  const Entry& x = entries_.at(static_cast<std::size_t>(a));
  const Entry& y = entries_.at(static_cast<std::size_t>(b));
  if (graph_) return graph_->adjacent(x.node, y.node);
  if (a == b || x.point == y.point) return false;
  const double w = graphon_->eval(x.point, y.point);
  return pair_uniform(edge_seed_, point_hash(x.point), point_hash(y.point)) < w;
}

const SimpleGraph& SamplingOracle::graph() const {
  if (!graph_) throw std::logic_error("graph(): oracle is not graph-backed");
  return *graph_;
}

std::optional<Node> SamplingOracle::node(Handle h) const {
  if (!graph_) return std::nullopt;
  return entries_.at(static_cast<std::size_t>(h)).node;
}

const Point& SamplingOracle::point(Handle h) const {
  return entries_.at(static_cast<std::size_t>(h)).point;
}

std::uint64_t SamplingOracle::identity(Handle h) const {
  const Entry& e = entries_.at(static_cast<std::size_t>(h));
  if (graph_) return static_cast<std::uint64_t>(e.node);
  return point_hash(e.point);
}

SimpleGraph SamplingOracle::sample_induced(int k, Rng& rng, std::vector<Handle>* handles) {
  std::vector<Handle> hs;
  hs.reserve(static_cast<std::size_t>(k));
  if (graph_) {
    for (Node v : sample_subset(rng, graph_->num_nodes(), k)) hs.push_back(handle_of_node(v));
  } else {
    for (int i = 0; i < k; ++i) hs.push_back(sample(rng));
  }
  SimpleGraph out(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (adjacent(hs[i], hs[j])) out.add_edge(i, j);
    }
  }
  if (handles != nullptr) *handles = std::move(hs);
  return out;
}

}  // namespace graphlim
