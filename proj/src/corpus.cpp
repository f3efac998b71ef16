#include "hamq/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "hamq/error.hpp"

namespace hamq {

namespace {

constexpr int kMaxCorpusOrder = 11;

// Colour classes of the coarsest equitable refinement of the degree
// partition. Colours are ranked by signature, so they are invariant under
// relabelling.
std::vector<int> refine(const Graph &g) {
  const int n = g.n();
  std::vector<int> colour(n, 0);
  int classes = 1;
  for (;;) {
    std::vector<std::pair<std::vector<int>, Vertex>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      std::vector<int> s{colour[v]};
      std::vector<int> nb;
      for (Vertex u : g.neighbors(v))
        nb.push_back(colour[u]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {std::move(s), v};
    }
    std::map<std::vector<int>, int> rank;
    for (auto &[s, v] : sig)
      rank.emplace(s, 0);
    int r = 0;
    for (auto &[s, id] : rank)
      id = r++;
    for (auto &[s, v] : sig)
      colour[v] = rank[s];
    if (r == classes)
      return colour;
    classes = r;
  }
}

std::uint64_t code_of(const Graph &g, const std::vector<Vertex> &order) {
  std::uint64_t c = 0;
  const int n = g.n();
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      c = (c << 1) | (g.adjacent(order[i], order[j]) ? 1U : 0U);
  return c;
}

// Best ordering: vertices grouped by colour, every ordering inside cells.
std::pair<std::uint64_t, std::vector<Vertex>> best_order(const Graph &g) {
  const int n = g.n();
  if (n > kMaxCorpusOrder)
    throw SizeLimit("canonical code limited to n <= 11");
  auto colour = refine(g);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return colour[a] < colour[b]; });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && colour[order[j]] == colour[order[i]])
      ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = 0;
  std::vector<Vertex> best_ord = order;
  bool first = true;
  // Odometer over per-cell permutations.
  for (;;) {
    std::uint64_t c = code_of(g, order);
    if (first || c > best) {
      best = c;
      best_ord = order;
      first = false;
    }
    std::size_t ci = 0;
    for (; ci < cells.size(); ++ci) {
      auto [a, b] = cells[ci];
      if (std::next_permutation(order.begin() + a, order.begin() + b))
        break;
    }
    if (ci == cells.size())
      break;
  }
  return {best, best_ord};
}

Graph from_order(const Graph &g, const std::vector<Vertex> &order) {
  std::vector<Vertex> perm(g.n());
  for (int i = 0; i < g.n(); ++i)
    perm[order[i]] = i;
  return g.relabeled(perm);
}

} // namespace

std::uint64_t canonical_code(const Graph &g) { return best_order(g).first; }

Graph canonical_form(const Graph &g) { return from_order(g, best_order(g).second); }

std::vector<Graph> all_graphs(int n) {
  if (n < 1 || n > 10)
    throw BadParameters("all_graphs supports 1 <= n <= 10");
  std::vector<Graph> level{Graph(1)};
  for (int order = 2; order <= n; ++order) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<std::uint64_t, Graph>> next;
    for (const Graph &p : level) {
      auto base = p.edges();
      for (std::uint32_t s = 0; s < (1U << (order - 1)); ++s) {
        std::vector<Edge> e = base;
        for (int v = 0; v < order - 1; ++v)
          if (s >> v & 1U)
            e.emplace_back(v, order - 1);
        Graph child(order, e);
        auto [code, ord] = best_order(child);
        if (seen.insert(code).second)
          next.emplace_back(code, from_order(child, ord));
      }
    }
    std::sort(next.begin(), next.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    level.clear();
    for (auto &[c, g] : next)
      level.push_back(std::move(g));
  }
  return level;
}

std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for (auto &g : all_graphs(n))
    if (is_connected(g))
      out.push_back(std::move(g));
  return out;
}

} // namespace hamq
