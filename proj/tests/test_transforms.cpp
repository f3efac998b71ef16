#include <doctest.h>

#include "hamq/error.hpp"
#include "hamq/random.hpp"
#include "hamq/spectral.hpp"
#include "hamq/transforms.hpp"
#include "oracles.hpp"

using namespace hamq;

TEST_CASE("closure examples") {
  CHECK(closure(cycle(4), 5).graph == cycle(4));
  CHECK(closure(cycle(4), 5).trace.added.empty());
  Graph k5e = complete(5).without_edges(std::vector<Edge>{{1, 3}});
  auto r = closure(k5e, 6);
  CHECK(r.graph == complete(5));
  CHECK(r.trace.added == std::vector<Edge>{{1, 3}});
  CHECK(closure(cycle(5), 6).graph == cycle(5));
  CHECK_THROWS_AS(closure(cycle(5), 0), BadParameters);
}

TEST_CASE("closure trace replays and respects degree sums") {
  SplitMix64 rng(21);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + static_cast<int>(rng.bounded(14));
    Graph g = random_gnp(n, rng.unit(), rng);
    int k = 1 + static_cast<int>(rng.bounded(2 * n));
    auto r = closure(g, k);
    CHECK(r.trace.k == k);
    Graph h = g;
    for (const auto &e : r.trace.added) {
      CHECK_FALSE(h.adjacent(e.u, e.v));
      CHECK(h.degree(e.u) + h.degree(e.v) >= k);
      h = h.with_edge(e);
    }
    CHECK(h == r.graph);
    for (const auto &e : r.graph.non_edges())
      CHECK(r.graph.degree(e.u) + r.graph.degree(e.v) < k);
    CHECK(closure(r.graph, k).trace.added.empty());
    CHECK(r.graph == oracle::closure_naive(g, k));
  }
}

TEST_CASE("closure is independent of scan order") {
  SplitMix64 rng(22);
  for (int t = 0; t < 500; ++t) {
    int n = 2 + static_cast<int>(rng.bounded(11));
    Graph g = random_gnp(n, rng.unit(), rng);
    int k = n + 1;
    Graph expect = closure(g, k).graph;
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        pairs.emplace_back(u, v);
    for (int o = 0; o < 10; ++o) {
      for (std::size_t i = pairs.size(); i > 1; --i)
        std::swap(pairs[i - 1], pairs[rng.bounded(i)]);
      CHECK(closure_in_order(g, k, pairs).graph == expect);
    }
  }
}

TEST_CASE("kelmans examples") {
  Graph p3 = path(3);
  CHECK(kelmans(p3, 0, 2) == p3);
  // C4 on 1-2-3-4-1 relabelled to 0..3
  Graph c4 = cycle(4);
  Graph moved = kelmans(c4, 0, 1);
  CHECK(moved == Graph(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {2, 3}}));
  CHECK_THROWS_AS(kelmans(c4, 1, 1), BadParameters);
  Graph star = join(complete(1), empty_graph(4));
  CHECK(kelmans(star, 0, 2) == star);
}

TEST_CASE("kelmans preserves other degrees and the u-v adjacency") {
  SplitMix64 rng(23);
  for (int t = 0; t < 400; ++t) {
    int n = 2 + static_cast<int>(rng.bounded(15));
    Graph g = random_gnp(n, rng.unit(), rng);
    Vertex u = static_cast<Vertex>(rng.bounded(n));
    Vertex v = static_cast<Vertex>(rng.bounded(n - 1));
    if (v >= u)
      ++v;
    Graph h = kelmans(g, u, v);
    CHECK(h.m() == g.m());
    CHECK(h.adjacent(u, v) == g.adjacent(u, v));
    CHECK(h.degree(u) + h.degree(v) == g.degree(u) + g.degree(v));
    for (Vertex x = 0; x < n; ++x) {
      if (x == u || x == v)
        continue;
      CHECK(h.degree(x) == g.degree(x));
      bool movable = g.adjacent(v, x) && !g.adjacent(u, x);
      CHECK(h.adjacent(u, x) == (g.adjacent(u, x) || movable));
      CHECK(h.adjacent(v, x) == (g.adjacent(v, x) && !movable));
    }
  }
}

TEST_CASE("kelmans never lowers the spectral radius") {
  SplitMix64 rng(24);
  int tested = 0;
  while (tested < 300) {
    int n = 2 + static_cast<int>(rng.bounded(29));
    Graph g = random_gnp(n, 0.1 + 0.8 * rng.unit(), rng);
    if (!is_connected(g))
      continue;
    Vertex u = static_cast<Vertex>(rng.bounded(n));
    Vertex v = static_cast<Vertex>(rng.bounded(n - 1));
    if (v >= u)
      ++v;
    Graph h = kelmans(g, u, v);
    if (!is_connected(h))
      continue;
    ++tested;
    auto a = perron_pair(g), b = perron_pair(h);
    CHECK(a.lo <= b.hi + 1e-8);
    CHECK(b.q_hat >= a.q_hat - 1e-8);
  }
}
