#include "hamq/random.hpp"

#include <algorithm>
#include <set>

#include "hamq/error.hpp"

namespace hamq {

Graph random_gnp(int n, double p, SplitMix64 &rng) {
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.unit() < p)
        es.emplace_back(u, v);
  return Graph(n, es);
}

Graph random_gnm(int n, long long m, SplitMix64 &rng) {
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      pairs.emplace_back(u, v);
  if (m < 0 || m > static_cast<long long>(pairs.size()))
    throw BadParameters("gnm: edge count out of range");
  for (long long i = 0; i < m; ++i) {
    auto j = i + static_cast<long long>(rng.bounded(pairs.size() - i));
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(static_cast<std::size_t>(m));
  return Graph(n, pairs);
}

std::vector<Vertex> random_permutation(int n, SplitMix64 &rng) {
  std::vector<Vertex> perm(n);
  for (int i = 0; i < n; ++i)
    perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.bounded(static_cast<std::uint64_t>(i) + 1)]);
  return perm;
}

std::vector<std::size_t> random_subset(std::size_t size, std::size_t count, SplitMix64 &rng) {
  if (count > size)
    throw BadParameters("random_subset: count exceeds size");
  std::set<std::size_t> chosen;
  for (std::size_t j = size - count; j < size; ++j) {
    std::size_t t = rng.bounded(j + 1);
    if (!chosen.insert(t).second)
      chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

} // namespace hamq
