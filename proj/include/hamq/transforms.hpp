#pragma once

#include <vector>

#include "hamq/graph.hpp"

namespace hamq {

/// Edges added by the k-closure, in insertion order.
struct ClosureTrace {
  int k = 0;
  std::vector<Edge> added;
};

struct ClosureResult {
  Graph graph;
  ClosureTrace trace;
};

/// Repeatedly joins nonadjacent pairs with degree sum >= k. Pairs are
/// scanned lexicographically and the scan restarts after every addition.
ClosureResult closure(const Graph &g, int k);

/// Same fixpoint reached by scanning pairs in the given order (used to
/// check order independence).
ClosureResult closure_in_order(const Graph &g, int k, const std::vector<Edge> &order);

/// Moves every edge vx with x in N(v) \ N[u] over to ux.
Graph kelmans(const Graph &g, Vertex u, Vertex v);

} // namespace hamq
