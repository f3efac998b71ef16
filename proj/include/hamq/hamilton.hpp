#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hamq/graph.hpp"

namespace hamq {

enum class Verdict { Yes, No, Timeout };

const char *to_string(Verdict v);

constexpr std::uint64_t kDefaultPairBudget = 100'000'000;

struct SearchStats {
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
};

struct PathSearch {
  Verdict verdict = Verdict::No;
  std::vector<Vertex> path;
  SearchStats stats;
};

/// Hamilton path from u to v by depth-first backtracking; ascending
/// neighbour order. `budget` bounds node expansions (Timeout beyond it).
/// Limited to n <= 64 (SizeLimit otherwise).
PathSearch hamilton_path_between(const Graph &g, Vertex u, Vertex v,
                                 std::uint64_t budget = kDefaultPairBudget);

struct OracleAnswer {
  Verdict verdict = Verdict::No;
  /// Yes from is_hamilton_connected: one path per pair, ascending (u, v).
  std::vector<std::pair<Edge, std::vector<Vertex>>> pair_paths;
  /// Yes from is_hamiltonian / is_traceable: the cycle (without repeating
  /// the first vertex) or the path.
  std::vector<Vertex> walk;
  /// No from is_hamilton_connected: the smallest pair without a path.
  std::optional<Edge> failing_pair;
  /// Timeout: the pair being searched.
  std::optional<Edge> timeout_pair;
  bool closure_complete = false;
  SearchStats stats;
};

OracleAnswer is_hamilton_connected(const Graph &g, std::uint64_t budget = kDefaultPairBudget);
OracleAnswer is_hamiltonian(const Graph &g, std::uint64_t budget = kDefaultPairBudget);
OracleAnswer is_traceable(const Graph &g, std::uint64_t budget = kDefaultPairBudget);

/// 2-connected and every nonadjacent pair has degree sum >= n + 1.
bool ore_check(const Graph &g);

/// True when `path` visits every vertex once along edges of g, from u to v.
bool valid_hamilton_path(const Graph &g, const std::vector<Vertex> &path, Vertex u, Vertex v);
bool valid_hamilton_cycle(const Graph &g, const std::vector<Vertex> &cycle);

} // namespace hamq
