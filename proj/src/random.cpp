#include "graphlim/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace graphlim {

std::vector<int> sample_subset(Rng& rng, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("sample_subset: need 0 <= k <= n");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  if (4 * static_cast<long long>(k) >= n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < k; ++i) {
      auto j = i + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - i)));
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  // Floyd's algorithm, then a shuffle so the order is uniform too.
  std::unordered_set<int> chosen;
  for (int j = n - k; j < n; ++j) {
    int t = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(j + 1)));
    if (!chosen.insert(t).second) {
      chosen.insert(j);
      out.push_back(j);
    } else {
      out.push_back(t);
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace graphlim
