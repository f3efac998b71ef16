#include "hamq/transforms.hpp"

#include "hamq/error.hpp"

namespace hamq {

ClosureResult closure_in_order(const Graph &g, int k, const std::vector<Edge> &order) {
  if (k < 1)
    throw BadParameters("closure needs k >= 1");
  std::vector<int> deg = g.degrees();
  const int n = g.n();
  std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
  for (const auto &e : g.edges())
    adj[e.u * n + e.v] = adj[e.v * n + e.u] = 1;

  std::vector<int> pos(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t i = 0; i < order.size(); ++i)
    pos[order[i].u * n + order[i].v] = pos[order[i].v * n + order[i].u] = static_cast<int>(i);
  auto eligible = [&](const Edge &e) { return !adj[e.u * n + e.v] && deg[e.u] + deg[e.v] >= k; };

  ClosureTrace trace{k, {}};
  // Equivalent to restarting the scan after each addition: only pairs
  // touching the endpoints of the new edge can have become eligible
  // before the current position.
  std::size_t i = 0;
  while (i < order.size()) {
    const Edge e = order[i];
    if (!eligible(e)) {
      ++i;
      continue;
    }
    adj[e.u * n + e.v] = adj[e.v * n + e.u] = 1;
    ++deg[e.u];
    ++deg[e.v];
    trace.added.push_back(e);
    std::size_t next = i + 1;
    for (Vertex end : {e.u, e.v})
      for (Vertex x = 0; x < n; ++x) {
        if (x == end)
          continue;
        int p = pos[end * n + x];
        if (p >= 0 && static_cast<std::size_t>(p) < next && eligible(order[p]))
          next = static_cast<std::size_t>(p);
      }
    i = next;
  }
  return {g.with_edges(trace.added), std::move(trace)};
}

ClosureResult closure(const Graph &g, int k) {
  std::vector<Edge> order;
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = u + 1; v < g.n(); ++v)
      order.emplace_back(u, v);
  return closure_in_order(g, k, order);
}

Graph kelmans(const Graph &g, Vertex u, Vertex v) {
  if (u == v)
    throw BadParameters("kelmans needs distinct vertices");
  std::vector<Edge> moved_from, moved_to;
  for (Vertex x : g.neighbors(v)) {
    if (x == u || g.adjacent(u, x))
      continue;
    moved_from.emplace_back(v, x);
    moved_to.emplace_back(u, x);
  }
  return g.without_edges(moved_from).with_edges(moved_to);
}

} // namespace hamq
