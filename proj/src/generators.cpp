#include "graphlim/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "graphlim/random.hpp"

namespace graphlim::gen {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

SimpleGraph complete(int n) {
  require(n >= 0, "complete: n < 0");
  SimpleGraph g(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

SimpleGraph empty(int n) {
  require(n >= 0, "empty: n < 0");
  return SimpleGraph(n);
}

SimpleGraph cycle(int n) {
  require(n >= 3, "cycle: n >= 3 required");
  SimpleGraph g(n);
  for (Node i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

SimpleGraph path(int n) {
  require(n >= 1, "path: n >= 1 required");
  SimpleGraph g(n);
  for (Node i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

SimpleGraph star(int leaves) {
  require(leaves >= 0, "star: leaves < 0");
  SimpleGraph g(leaves + 1);
  for (Node i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

SimpleGraph complete_bipartite(int a, int b) {
  require(a >= 0 && b >= 0, "complete_bipartite: negative side");
  SimpleGraph g(a + b);
  for (Node i = 0; i < a; ++i) {
    for (Node j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

SimpleGraph petersen() {
  SimpleGraph g(10);
  for (Node i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

SimpleGraph grid(int n) {
  require(n >= 1, "grid: n >= 1 required");
  SimpleGraph g(n * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c + 1 < n) g.add_edge(r * n + c, r * n + c + 1);
      if (r + 1 < n) g.add_edge(r * n + c, (r + 1) * n + c);
    }
  }
  return g;
}

SimpleGraph turan(int n, int r) {
  require(n >= 0 && r >= 1, "turan: need n >= 0, r >= 1");
  std::vector<int> cls(static_cast<std::size_t>(n));
  // The first n % r classes get one extra node.
  int node = 0;
  for (int c = 0; c < r; ++c) {
    const int size = n / r + (c < n % r ? 1 : 0);
    for (int i = 0; i < size; ++i) cls[node++] = c;
  }
  SimpleGraph g(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (cls[i] != cls[j]) g.add_edge(i, j);
    }
  }
  return g;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

SimpleGraph paley(int p) {
  require(is_prime(p) && p % 4 == 1, "paley: p must be a prime with p = 1 mod 4");
  std::vector<char> square(static_cast<std::size_t>(p), 0);
  for (long long x = 1; x < p; ++x) square[static_cast<std::size_t>(x * x % p)] = 1;
  SimpleGraph g(p);
  for (Node i = 0; i < p; ++i) {
    for (Node j = i + 1; j < p; ++j) {
      if (square[static_cast<std::size_t>(j - i)]) g.add_edge(i, j);
    }
  }
  return g;
}

SimpleGraph threshold(int n) {
  require(n >= 1, "threshold: n >= 1 required");
  SimpleGraph g(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if ((i + 1) + (j + 1) <= n) g.add_edge(i, j);
    }
  }
  return g;
}

SimpleGraph two_cliques(int m) {
  require(m >= 1, "two_cliques: m >= 1 required");
  return disjoint_union(complete(m), complete(m));
}

SimpleGraph erdos_renyi(int n, double p, std::uint64_t seed) {
  require(n >= 0 && p >= 0.0 && p <= 1.0, "erdos_renyi: need n >= 0 and p in [0,1]");
  Rng rng(seed);
  SimpleGraph g(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p) g.add_edge(i, j);
    }
  }
  return g;
}

SimpleGraph planted(const std::vector<int>& sizes, double p_in, double p_out,
                    std::uint64_t seed) {
  require(p_in >= 0 && p_in <= 1 && p_out >= 0 && p_out <= 1, "planted: probabilities outside [0,1]");
  std::vector<int> cls;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    require(sizes[c] >= 1, "planted: empty block");
    cls.insert(cls.end(), static_cast<std::size_t>(sizes[c]), static_cast<int>(c));
  }
  const int n = static_cast<int>(cls.size());
  Rng rng(seed);
  SimpleGraph g(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (uniform01(rng) < (cls[i] == cls[j] ? p_in : p_out)) g.add_edge(i, j);
    }
  }
  return g;
}

SimpleGraph uniform_attachment(int n, std::uint64_t seed) {
  require(n >= 1, "uniform_attachment: n >= 1 required");
  Rng rng(seed);
  SimpleGraph g(n);
  for (Node j = 1; j < n; ++j) {
    const double keep_apart = static_cast<double>(j) / n;
    for (Node i = 0; i < j; ++i) {
      if (uniform01(rng) >= keep_apart) g.add_edge(i, j);
    }
  }
  return g;
}

PrefixAttachment prefix_attachment_process(int n, std::uint64_t seed) {
  require(n >= 1, "prefix_attachment: n >= 1 required");
  Rng rng(seed);
  PrefixAttachment out{SimpleGraph(n), std::vector<int>(static_cast<std::size_t>(n))};
  for (Node k = 0; k < n; ++k) {
    const int z = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(k + 1)));
    out.prefix[k] = z;
    for (Node i = 0; i < z; ++i) out.graph.add_edge(i, k);
  }
  return out;
}

SimpleGraph prefix_attachment(int n, std::uint64_t seed) {
  return prefix_attachment_process(n, seed).graph;
}

SimpleGraph random_subcubic(int n, std::uint64_t seed) {
  require(n >= 1, "random_subcubic: n >= 1 required");
  Rng rng(seed);
  SimpleGraph g(n);
  if (n < 2) return g;
  const int attempts = 4 * n;
  for (int t = 0; t < attempts; ++t) {
    const auto u = static_cast<Node>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    const auto v = static_cast<Node>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    if (u == v || g.adjacent(u, v) || g.degree(u) >= 3 || g.degree(v) >= 3) continue;
    g.add_edge(u, v);
  }
  return g;
}

std::vector<std::string> family_names() {
  return {"complete", "empty", "cycle", "path", "star", "complete-bipartite", "petersen",
          "grid", "turan", "paley", "threshold", "two-cliques", "er",
          "uniform-attachment", "prefix-attachment", "subcubic"};
}

bool family_is_random(const std::string& family) {
  return family == "er" || family == "uniform-attachment" || family == "prefix-attachment" ||
         family == "subcubic";
}

SimpleGraph by_name(const std::string& family, const FamilyParams& q) {
  if (family == "complete") return complete(q.n);
  if (family == "empty") return empty(q.n);
  if (family == "cycle") return cycle(q.n);
  if (family == "path") return path(q.n);
  if (family == "star") return star(q.n);
  if (family == "complete-bipartite") return complete_bipartite(q.n, q.n);
  if (family == "petersen") return petersen();
  if (family == "grid") return grid(q.n);
  if (family == "turan") return turan(q.n, q.r);
  if (family == "paley") return paley(q.n);
  if (family == "threshold") return threshold(q.n);
  if (family == "two-cliques") return two_cliques(q.n);
  if (family == "er") return erdos_renyi(q.n, q.p, q.seed);
  if (family == "uniform-attachment") return uniform_attachment(q.n, q.seed);
  if (family == "prefix-attachment") return prefix_attachment(q.n, q.seed);
  if (family == "subcubic") return random_subcubic(q.n, q.seed);
  throw std::invalid_argument("unknown graph family: " + family);
}

}  // namespace graphlim::gen
