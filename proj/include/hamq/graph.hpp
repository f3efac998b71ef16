#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hamq {

using Vertex = int;

/// Unordered vertex pair, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Set of distinct unordered pairs, kept sorted.
class EdgeSet {
public:
  EdgeSet() = default;
  EdgeSet(std::initializer_list<Edge> edges);
  explicit EdgeSet(std::vector<Edge> edges);

  void insert(Edge e);
  bool contains(Edge e) const;
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }
  const std::vector<Edge> &edges() const { return edges_; }

  friend bool operator==(const EdgeSet &, const EdgeSet &) = default;

private:
  std::vector<Edge> edges_;
};

/// Immutable simple undirected graph on vertices 0..n-1 with bit-set rows.
class Graph {
public:
  /// Edgeless graph on n vertices.
  explicit Graph(int n = 1);
  Graph(int n, std::span<const Edge> edges);

  int n() const { return n_; }
  long long m() const { return m_; }
  int degree(Vertex v) const { return degree_[v]; }
  const std::vector<int> &degrees() const { return degree_; }
  bool adjacent(Vertex u, Vertex v) const {
    return (row(u)[v >> 6] >> (v & 63)) & 1U;
  }

  std::span<const std::uint64_t> row(Vertex v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::size_t words() const { return words_; }

  std::vector<Vertex> neighbors(Vertex v) const;
  std::vector<Edge> edges() const;
  std::vector<Edge> non_edges() const;

  Graph with_edges(std::span<const Edge> add) const;
  Graph with_edge(Edge e) const { return with_edges(std::span(&e, 1)); }
  Graph without_edges(std::span<const Edge> remove) const;

  /// Relabel: vertex v of this graph becomes perm[v].
  Graph relabeled(std::span<const Vertex> perm) const;

  int min_degree() const;
  int max_degree() const;
  bool is_complete() const { return 2 * m_ == static_cast<long long>(n_) * (n_ - 1); }

  friend bool operator==(const Graph &a, const Graph &b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

private:
  void set(Vertex u, Vertex v, bool on);
  void check_vertex(Vertex v) const;

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<int> degree_;
  long long m_ = 0;
};

Graph complete(int n);
Graph empty_graph(int n);
Graph cycle(int n);
Graph path(int n);
Graph petersen();

/// G's vertices first, then H's, plus every cross edge.
Graph join(const Graph &g, const Graph &h);
Graph disjoint_union(const Graph &g, const Graph &h);
Graph copies(int k, const Graph &g);

/// Throws NotAnEdge when a pair is absent.
Graph delete_edges(const Graph &g, const EdgeSet &e);

int min_degree(const Graph &g);
bool is_connected(const Graph &g);
std::vector<std::vector<Vertex>> components(const Graph &g);
bool is_2_connected(const Graph &g);

/// Exact maximum clique size; throws SizeLimit for n > 64.
int clique_number(const Graph &g);

std::string emit_graph6(const Graph &g);
Graph parse_graph6(std::string_view text);
Graph parse_edgelist(std::string_view text);
std::string emit_edgelist(const Graph &g);

/// graph6 if the first line parses as a single graph6 token, otherwise
/// the edge-list format.
Graph parse_graph_sniff(std::string_view text);

} // namespace hamq
