#include "graphlim/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

using Cells = std::vector<std::vector<Node>>;

class Canonizer {
 public:
  Canonizer(const Eigen::MatrixXi& m, std::span<const int> colors)
      : m_(m), colors_(colors.begin(), colors.end()), n_(static_cast<int>(m.rows())) {}

  CanonicalLabeling run() {
    std::map<int, std::vector<Node>> by_color;
    for (Node v = 0; v < n_; ++v) by_color[colors_[v]].push_back(v);
    Cells cells;
    for (auto& [c, nodes] : by_color) cells.push_back(std::move(nodes));
    search(std::move(cells));
    return {best_order_, best_code_};
  }

 private:
  // Splits cells by the multiset of (cell, multiplicity) over neighbors until
  // stable. New cell order is (old cell, signature), which is
  // isomorphism-invariant.
  Cells refine(Cells cells) const {
    std::vector<int> cell_of(static_cast<std::size_t>(n_));
    while (true) {
      for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
        for (Node v : cells[c]) cell_of[v] = c;
      }
      Cells next;
      for (const auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::vector<std::pair<std::vector<int>, Node>> keyed;
        keyed.reserve(cell.size());
        for (Node v : cell) {
          std::vector<int> sig;
          sig.push_back(m_(v, v));
          std::vector<std::pair<int, int>> nb;
          for (Node u = 0; u < n_; ++u) {
            if (u != v && m_(v, u) != 0) nb.emplace_back(cell_of[u], m_(v, u));
          }
          std::sort(nb.begin(), nb.end());
          for (auto [c, w] : nb) {
            sig.push_back(c);
            sig.push_back(w);
          }
          keyed.emplace_back(std::move(sig), v);
        }
        std::sort(keyed.begin(), keyed.end());
        std::vector<Node> current{keyed[0].second};
        for (std::size_t i = 1; i < keyed.size(); ++i) {
          if (keyed[i].first != keyed[i - 1].first) {
            next.push_back(std::move(current));
            current.clear();
          }
          current.push_back(keyed[i].second);
        }
        next.push_back(std::move(current));
      }
      if (next.size() == cells.size()) return next;
      cells = std::move(next);
    }
  }

  bool twins(Node a, Node b) const {
    if (m_(a, a) != m_(b, b)) return false;
    for (Node u = 0; u < n_; ++u) {
      if (u == a || u == b) continue;
      if (m_(a, u) != m_(b, u)) return false;
    }
    return true;
  }

  CanonicalCode encode(const std::vector<Node>& order) const {
    std::vector<int> data;
    data.reserve(static_cast<std::size_t>(1 + n_ + n_ * (n_ + 1) / 2));
    data.push_back(n_);
    for (Node v : order) data.push_back(colors_[v]);
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) data.push_back(m_(order[i], order[j]));
    }
    CanonicalCode code(data.size() * sizeof(int), '\0');
    // Big-endian byte order keeps lexicographic comparison of codes stable.
    for (std::size_t i = 0; i < data.size(); ++i) {
      auto x = static_cast<unsigned>(data[i]);
      for (int b = 0; b < 4; ++b) {
        code[i * 4 + static_cast<std::size_t>(b)] = static_cast<char>((x >> (24 - 8 * b)) & 0xFF);
      }
    }
    return code;
  }

  void search(Cells cells) {
    cells = refine(std::move(cells));
    auto open = std::find_if(cells.begin(), cells.end(),
                             [](const auto& c) { return c.size() > 1; });
    if (open == cells.end()) {
      std::vector<Node> order;
      order.reserve(static_cast<std::size_t>(n_));
      for (const auto& c : cells) order.push_back(c[0]);
      auto code = encode(order);
      if (!have_best_ || code < best_code_) {
        best_code_ = std::move(code);
        best_order_ = std::move(order);
        have_best_ = true;
      }
      return;
    }
    const auto idx = static_cast<std::size_t>(open - cells.begin());
    const std::vector<Node> cell = *open;
    bool all_twins = true;
    for (std::size_t i = 0; i < cell.size() && all_twins; ++i) {
      for (std::size_t j = i + 1; j < cell.size() && all_twins; ++j) {
        all_twins = twins(cell[i], cell[j]);
      }
    }
    const std::size_t branches = all_twins ? 1 : cell.size();
    for (std::size_t b = 0; b < branches; ++b) {
      Cells next;
      next.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != idx) {
          next.push_back(cells[c]);
          continue;
        }
        next.push_back({cell[b]});
        std::vector<Node> rest;
        for (Node v : cell) {
          if (v != cell[b]) rest.push_back(v);
        }
        next.push_back(std::move(rest));
      }
      search(std::move(next));
    }
  }

  const Eigen::MatrixXi& m_;
  std::vector<int> colors_;
  int n_;
  bool have_best_ = false;
  CanonicalCode best_code_;
  std::vector<Node> best_order_;
};

Eigen::MatrixXi simple_matrix(const SimpleGraph& g) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(g.num_nodes(), g.num_nodes());
  for (Node u = 0; u < g.num_nodes(); ++u) {
    for (Node v : g.neighbors(u)) m(u, v) = 1;
  }
  return m;
}

std::vector<int> label_colors(const LabeledGraph& g) {
  std::vector<int> colors(static_cast<std::size_t>(g.num_nodes()), 0);
  for (int i = 0; i < g.k(); ++i) colors[g.labels[i]] = i + 1;
  return colors;
}

}  // namespace

CanonicalLabeling canonical_labeling(const Eigen::MatrixXi& multiplicities,
                                     std::span<const int> colors, int max_nodes) {
  const auto n = multiplicities.rows();
  if (multiplicities.cols() != n || static_cast<Eigen::Index>(colors.size()) != n) {
    throw std::invalid_argument("canonical_labeling: shape mismatch");
  }
  if (n > max_nodes) {
    throw BoundExceeded("canonical.max_nodes", std::to_string(n) + " nodes exceeds bound " +
                                                   std::to_string(max_nodes));
  }
  return Canonizer(multiplicities, colors).run();
}

CanonicalCode canonical_form(const Multigraph& g, int max_nodes) {
  std::vector<int> colors(static_cast<std::size_t>(g.num_nodes()), 0);
  return canonical_labeling(g.multiplicity_matrix(), colors, max_nodes).code;
}

CanonicalCode canonical_form(const SimpleGraph& g, int max_nodes) {
  std::vector<int> colors(static_cast<std::size_t>(g.num_nodes()), 0);
  return canonical_labeling(simple_matrix(g), colors, max_nodes).code;
}

CanonicalCode canonical_form(const LabeledGraph& g, int max_nodes) {
  return canonical_labeling(g.base.multiplicity_matrix(), label_colors(g), max_nodes).code;
}

CanonicalCode rooted_canonical_form(const SimpleGraph& g, Node root, int max_nodes) {
  if (root < 0 || root >= g.num_nodes()) throw std::out_of_range("root outside graph");
  std::vector<int> colors(static_cast<std::size_t>(g.num_nodes()), 0);
  colors[root] = 1;
  return canonical_labeling(simple_matrix(g), colors, max_nodes).code;
}

LabeledGraph canonical_representative(const LabeledGraph& g, int max_nodes) {
  const auto m = g.base.multiplicity_matrix();
  const auto lab = canonical_labeling(m, label_colors(g), max_nodes);
  // Colors 1..k sort after 0, so the labeled nodes come last in `order`
  // unless they were split earlier; place them explicitly at 0..k-1.
  std::vector<Node> pos(static_cast<std::size_t>(g.num_nodes()), -1);
  for (int i = 0; i < g.k(); ++i) pos[g.labels[i]] = i;
  int next = g.k();
  for (Node v : lab.order) {
    if (pos[v] == -1) pos[v] = next++;
  }
  Multigraph out(g.num_nodes(), g.base.loops_allowed());
  for (const auto& e : g.base.edges()) out.add_edge(pos[e.u], pos[e.v], e.multiplicity);
  std::vector<Node> labels(static_cast<std::size_t>(g.k()));
  std::iota(labels.begin(), labels.end(), 0);
  return {std::move(out), std::move(labels)};
}

SimpleGraph canonical_representative(const SimpleGraph& g, int max_nodes) {
  std::vector<int> colors(static_cast<std::size_t>(g.num_nodes()), 0);
  const auto lab = canonical_labeling(simple_matrix(g), colors, max_nodes);
  std::vector<Node> perm(static_cast<std::size_t>(g.num_nodes()));
  for (int i = 0; i < g.num_nodes(); ++i) perm[lab.order[i]] = i;
  return relabel(g, perm);
}

bool isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) return false;
  const int bound = std::max(a.num_nodes(), kDefaultCanonicalBound);
  return canonical_form(a, bound) == canonical_form(b, bound);
}

std::vector<std::pair<Node, Node>> node_pairs(int n) {
  std::vector<std::pair<Node, Node>> pairs;
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<SimpleGraph> all_labeled_graphs(int n) {
  const auto pairs = node_pairs(n);
  if (pairs.size() > 21) throw BoundExceeded("enumeration.max_nodes", "n <= 7 required");
  std::vector<SimpleGraph> out;
  const std::uint32_t count = 1u << pairs.size();
  out.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    std::vector<std::pair<Node, Node>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1u) edges.push_back(pairs[i]);
    }
    out.emplace_back(n, edges);
  }
  return out;
}

std::vector<SimpleGraph> all_graphs(int n) {
  if (n > 6) throw BoundExceeded("enumeration.max_nodes", "all_graphs requires n <= 6");
  std::set<CanonicalCode> seen;
  std::vector<SimpleGraph> out;
  for (auto& g : all_labeled_graphs(n)) {
    if (seen.insert(canonical_form(g)).second) out.push_back(canonical_representative(g));
  }
  return out;
}

std::vector<LabeledGraph> labeled_basis(int k, int max_nodes) {
  if (max_nodes > 6) throw BoundExceeded("enumeration.max_nodes", "labeled_basis requires <= 6 nodes");
  std::set<CanonicalCode> seen;
  std::vector<LabeledGraph> out;
  std::vector<Node> labels(static_cast<std::size_t>(k));
  std::iota(labels.begin(), labels.end(), 0);
  for (int n = k; n <= max_nodes; ++n) {
    for (auto& g : all_labeled_graphs(n)) {
      LabeledGraph lg(g.to_multigraph(), labels);
      if (seen.insert(canonical_form(lg)).second) out.push_back(canonical_representative(lg));
    }
  }
  return out;
}

}  // namespace graphlim
