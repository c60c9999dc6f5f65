#ifndef GRAPHLIM_GENERATORS_HPP
#define GRAPHLIM_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim::gen {

SimpleGraph complete(int n);
SimpleGraph empty(int n);
SimpleGraph cycle(int n);
/// Path on n nodes 0-1-...-(n-1).
SimpleGraph path(int n);
/// K_{1,leaves}, center 0.
SimpleGraph star(int leaves);
SimpleGraph complete_bipartite(int a, int b);
SimpleGraph petersen();
/// n x n grid; node (r, c) is r*n + c.
SimpleGraph grid(int n);
/// Complete r-partite graph with contiguous, equitable classes.
SimpleGraph turan(int n, int r);
/// Paley graph on Z_p for a prime p = 1 mod 4: i ~ j iff i - j is a nonzero
/// square mod p.
SimpleGraph paley(int p);
/// Nodes 0..n-1; i ~ j (i != j) iff (i+1) + (j+1) <= n.
SimpleGraph threshold(int n);
/// Disjoint union of two copies of K_m.
SimpleGraph two_cliques(int m);

SimpleGraph erdos_renyi(int n, double p, std::uint64_t seed);
/// Stochastic block model with contiguous blocks of the given sizes.
SimpleGraph planted(const std::vector<int>& sizes, double p_in, double p_out,
                    std::uint64_t seed);

/// Uniform attachment graph after n steps, nodes in birth order 0..n-1.
/// Sampled from its exact law: pairs are independent and i < j stay
/// nonadjacent with probability j/n.
SimpleGraph uniform_attachment(int n, std::uint64_t seed);

struct PrefixAttachment {
  SimpleGraph graph;
  /// prefix[k] = number of earlier nodes that node k connected to.
  std::vector<int> prefix;
};
/// Node k (birth order, 0-based) draws z uniformly from {0..k} and connects
/// to nodes 0..z-1.
PrefixAttachment prefix_attachment_process(int n, std::uint64_t seed);
SimpleGraph prefix_attachment(int n, std::uint64_t seed);

/// Random graph with maximum degree <= 3: random pair proposals accepted
/// while both endpoints have spare degree.
SimpleGraph random_subcubic(int n, std::uint64_t seed);

/// Family names accepted by `by_name` (CLI spelling).
std::vector<std::string> family_names();

struct FamilyParams {
  int n = 0;
  int r = 2;
  double p = 0.5;
  std::uint64_t seed = 0;
};
/// Dispatch by family name; `params.n` doubles as the prime for paley and
/// the side for grid.
SimpleGraph by_name(const std::string& family, const FamilyParams& params);
bool family_is_random(const std::string& family);

bool is_prime(int p);

}  // namespace graphlim::gen

#endif  // GRAPHLIM_GENERATORS_HPP
