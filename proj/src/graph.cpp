#include "hamq/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>

#include "hamq/error.hpp"

namespace hamq {

EdgeSet::EdgeSet(std::initializer_list<Edge> edges)
    : EdgeSet(std::vector<Edge>(edges)) {}

EdgeSet::EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
  for (const auto &e : edges_)
    if (e.u == e.v)
      throw BadParameters("edge with identical endpoints");
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw BadParameters("duplicate edge in edge set");
}

void EdgeSet::insert(Edge e) {
  if (e.u == e.v)
    throw BadParameters("edge with identical endpoints");
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e)
    edges_.insert(it, e);
}

bool EdgeSet::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

Graph::Graph(int n)
    : n_(n), words_(static_cast<std::size_t>((n + 63) / 64)),
      bits_(static_cast<std::size_t>(n) * words_, 0), degree_(n, 0) {
  if (n < 1)
    throw BadParameters("graph needs at least one vertex");
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (const auto &e : edges) {
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.u == e.v)
      throw BadParameters("loop at vertex " + std::to_string(e.u));
    if (!adjacent(e.u, e.v))
      set(e.u, e.v, true);
  }
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_)
    throw BadParameters("vertex " + std::to_string(v) + " out of range");
}

void Graph::set(Vertex u, Vertex v, bool on) {
  auto flip = [&](Vertex a, Vertex b) {
    auto &w = bits_[static_cast<std::size_t>(a) * words_ + (b >> 6)];
    std::uint64_t mask = std::uint64_t{1} << (b & 63);
    if (on)
      w |= mask;
    else
      w &= ~mask;
  };
  flip(u, v);
  flip(v, u);
  int delta = on ? 1 : -1;
  degree_[u] += delta;
  degree_[v] += delta;
  m_ += delta;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(degree_[v]);
  auto r = row(v);
  for (std::size_t w = 0; w < words_; ++w)
    for (std::uint64_t b = r[w]; b; b &= b - 1)
      out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(b)));
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors(u))
      if (u < v)
        out.emplace_back(u, v);
  return out;
}

std::vector<Edge> Graph::non_edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v)
      if (!adjacent(u, v))
        out.emplace_back(u, v);
  return out;
}

Graph Graph::with_edges(std::span<const Edge> add) const {
  Graph g = *this;
  for (const auto &e : add) {
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.u == e.v)
      throw BadParameters("loop at vertex " + std::to_string(e.u));
    if (!g.adjacent(e.u, e.v))
      g.set(e.u, e.v, true);
  }
  return g;
}

Graph Graph::without_edges(std::span<const Edge> remove) const {
  Graph g = *this;
  for (const auto &e : remove) {
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.u == e.v || !g.adjacent(e.u, e.v))
      throw NotAnEdge("pair " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                      " is not an edge");
    g.set(e.u, e.v, false);
  }
  return g;
}

Graph Graph::relabeled(std::span<const Vertex> perm) const {
  if (static_cast<int>(perm.size()) != n_)
    throw DimensionMismatch("permutation size differs from vertex count");
  std::vector<Edge> es;
  for (const auto &e : edges())
    es.emplace_back(perm[e.u], perm[e.v]);
  return Graph(n_, es);
}

int Graph::min_degree() const { return *std::min_element(degree_.begin(), degree_.end()); }
int Graph::max_degree() const { return *std::max_element(degree_.begin(), degree_.end()); }

Graph complete(int n) {
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      es.emplace_back(u, v);
  return Graph(n, es);
}

Graph empty_graph(int n) { return Graph(n); }

Graph cycle(int n) {
  if (n < 3)
    throw BadParameters("cycle needs n >= 3");
  std::vector<Edge> es;
  for (int v = 0; v < n; ++v)
    es.emplace_back(v, (v + 1) % n);
  return Graph(n, es);
}

Graph path(int n) {
  std::vector<Edge> es;
  for (int v = 0; v + 1 < n; ++v)
    es.emplace_back(v, v + 1);
  return Graph(n, es);
}

Graph petersen() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(i, i + 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, es);
}

Graph join(const Graph &g, const Graph &h) {
  std::vector<Edge> es = g.edges();
  for (const auto &e : h.edges())
    es.emplace_back(e.u + g.n(), e.v + g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < h.n(); ++v)
      es.emplace_back(u, g.n() + v);
  return Graph(g.n() + h.n(), es);
}

Graph disjoint_union(const Graph &g, const Graph &h) {
  std::vector<Edge> es = g.edges();
  for (const auto &e : h.edges())
    es.emplace_back(e.u + g.n(), e.v + g.n());
  return Graph(g.n() + h.n(), es);
}

Graph copies(int k, const Graph &g) {
  if (k < 1)
    throw BadParameters("copies needs k >= 1");
  Graph out = g;
  for (int i = 1; i < k; ++i)
    out = disjoint_union(out, g);
  return out;
}

Graph delete_edges(const Graph &g, const EdgeSet &e) {
  return g.without_edges(e.edges());
}

int min_degree(const Graph &g) { return g.min_degree(); }

namespace {

// Vertices reachable from `start` avoiding `skip` (-1 for none).
std::vector<std::uint64_t> reach(const Graph &g, Vertex start, Vertex skip) {
  const std::size_t W = g.words();
  std::vector<std::uint64_t> seen(W, 0), frontier(W, 0), next(W, 0);
  seen[start >> 6] |= std::uint64_t{1} << (start & 63);
  if (skip >= 0)
    seen[skip >> 6] |= std::uint64_t{1} << (skip & 63);
  frontier[start >> 6] |= std::uint64_t{1} << (start & 63);
  bool any = true;
  while (any) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t w = 0; w < W; ++w)
      for (std::uint64_t b = frontier[w]; b; b &= b - 1) {
        auto r = g.row(static_cast<Vertex>(w * 64 + std::countr_zero(b)));
        for (std::size_t i = 0; i < W; ++i)
          next[i] |= r[i];
      }
    any = false;
    for (std::size_t w = 0; w < W; ++w) {
      frontier[w] = next[w] & ~seen[w];
      seen[w] |= frontier[w];
      any = any || frontier[w];
    }
  }
  if (skip >= 0)
    seen[skip >> 6] &= ~(std::uint64_t{1} << (skip & 63));
  return seen;
}

int popcount(const std::vector<std::uint64_t> &bits) {
  int c = 0;
  for (auto w : bits)
    c += std::popcount(w);
  return c;
}

} // namespace

bool is_connected(const Graph &g) { return popcount(reach(g, 0, -1)) == g.n(); }

std::vector<std::vector<Vertex>> components(const Graph &g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0)
      continue;
    auto seen = reach(g, s, -1);
    out.emplace_back();
    for (Vertex v = 0; v < g.n(); ++v)
      if ((seen[v >> 6] >> (v & 63)) & 1U) {
        comp[v] = static_cast<int>(out.size()) - 1;
        out.back().push_back(v);
      }
  }
  return out;
}

bool is_2_connected(const Graph &g) {
  if (g.n() < 3 || !is_connected(g))
    return false;
  for (Vertex v = 0; v < g.n(); ++v) {
    Vertex start = v == 0 ? 1 : 0;
    if (popcount(reach(g, start, v)) != g.n() - 1)
      return false;
  }
  return true;
}

namespace {

struct CliqueSearch {
  std::vector<std::uint64_t> adj;
  int best = 0;

  // Greedy colouring bound over `cand` in the given order.
  void expand(std::uint64_t cand, int size) {
    if (!cand) {
      best = std::max(best, size);
      return;
    }
    // colour classes
    std::vector<int> order, colour;
    std::uint64_t rest = cand;
    int c = 0;
    while (rest) {
      ++c;
      std::uint64_t avail = rest;
      while (avail) {
        int v = std::countr_zero(avail);
        avail &= ~(std::uint64_t{1} << v);
        avail &= ~adj[v];
        rest &= ~(std::uint64_t{1} << v);
        order.push_back(v);
        colour.push_back(c);
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (size + colour[i] <= best)
        return;
      int v = order[i];
      expand(cand & adj[v], size + 1);
      cand &= ~(std::uint64_t{1} << v);
    }
  }
};

} // namespace

int clique_number(const Graph &g) {
  if (g.n() > 64)
    throw SizeLimit("clique_number is limited to n <= 64");
  // relabel by degeneracy order so low-core vertices are branched last
  std::vector<int> deg = g.degrees();
  std::vector<bool> removed(g.n(), false);
  std::vector<Vertex> order;
  for (int step = 0; step < g.n(); ++step) {
    Vertex pick = -1;
    for (Vertex v = 0; v < g.n(); ++v)
      if (!removed[v] && (pick < 0 || deg[v] < deg[pick]))
        pick = v;
    removed[pick] = true;
    order.push_back(pick);
    for (Vertex u : g.neighbors(pick))
      if (!removed[u])
        --deg[u];
  }
  std::reverse(order.begin(), order.end());
  std::vector<Vertex> pos(g.n());
  for (int i = 0; i < g.n(); ++i)
    pos[order[i]] = i;
  CliqueSearch s;
  s.adj.assign(g.n(), 0);
  for (const auto &e : g.edges()) {
    s.adj[pos[e.u]] |= std::uint64_t{1} << pos[e.v];
    s.adj[pos[e.v]] |= std::uint64_t{1} << pos[e.u];
  }
  std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
  s.best = 1;
  s.expand(all, 0);
  return s.best;
}

// graph6: N(n) header, then the upper triangle column by column
// (x(0,1), x(0,2), x(1,2), x(0,3), ...) packed six bits per byte, each
// byte offset by 63.
std::string emit_graph6(const Graph &g) {
  std::string out;
  const long long n = g.n();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  if (nbits > 0)
    out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.starts_with(header))
    pos = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.remove_suffix(1);
  auto byte = [&](std::size_t at) -> int {
    if (at >= text.size())
      throw ParseError("graph6: unexpected end of input", at);
    int c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126)
      throw ParseError("graph6: byte out of range", at);
    return c - 63;
  };
  long long n = 0;
  if (pos < text.size() && text[pos] == '~') {
    if (pos + 1 < text.size() && text[pos + 1] == '~') {
      for (int i = 0; i < 6; ++i)
        n = (n << 6) | byte(pos + 2 + i);
      pos += 8;
    } else {
      for (int i = 0; i < 3; ++i)
        n = (n << 6) | byte(pos + 1 + i);
      pos += 4;
    }
  } else {
    n = byte(pos);
    pos += 1;
  }
  if (n < 1)
    throw ParseError("graph6: graphs need at least one vertex", pos - 1);
  if (n > 1'000'000)
    throw ParseError("graph6: vertex count too large", pos - 1);
  const long long bits = n * (n - 1) / 2;
  const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() - pos != need)
    throw ParseError("graph6: expected " + std::to_string(need) + " data bytes",
                     std::min(text.size(), pos + need));
  std::vector<Edge> es;
  long long k = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++k) {
      int b = byte(pos + static_cast<std::size_t>(k / 6));
      if ((b >> (5 - k % 6)) & 1)
        es.emplace_back(i, j);
    }
  if (bits % 6 != 0) {
    int last = byte(pos + need - 1);
    if (last & ((1 << (6 - bits % 6)) - 1))
      throw ParseError("graph6: nonzero padding bits", pos + need - 1);
  }
  return Graph(static_cast<int>(n), es);
}

namespace {

struct Tokens {
  std::string_view text;
  std::size_t pos = 0;

  long long next_int(const char *what) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos >= text.size())
      throw ParseError(std::string("edge list: missing ") + what, pos);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{})
      throw ParseError(std::string("edge list: bad ") + what, pos);
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
  }
};

} // namespace

Graph parse_edgelist(std::string_view text) {
  Tokens t{text};
  std::size_t at = t.pos;
  long long n = t.next_int("vertex count");
  if (n < 1 || n > 1'000'000)
    throw ParseError("edge list: vertex count out of range", at);
  long long m = t.next_int("edge count");
  if (m < 0 || m > n * (n - 1) / 2)
    throw ParseError("edge list: edge count out of range", at);
  std::vector<Edge> es;
  es.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    std::size_t where = t.pos;
    long long u = t.next_int("endpoint");
    long long v = t.next_int("endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("edge list: endpoint out of range", where);
    if (u == v)
      throw ParseError("edge list: loop", where);
    es.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  while (t.pos < text.size() && std::isspace(static_cast<unsigned char>(text[t.pos])))
    ++t.pos;
  if (t.pos != text.size())
    throw ParseError("edge list: trailing data", t.pos);
  Graph g(static_cast<int>(n), es);
  if (g.m() != m)
    throw ParseError("edge list: duplicate edge", 0);
  return g;
}

std::string emit_edgelist(const Graph &g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (const auto &e : g.edges())
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

Graph parse_graph_sniff(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start])))
    ++start;
  auto eol = text.find('\n', start);
  std::string_view first = text.substr(start, eol == std::string_view::npos ? text.npos : eol - start);
  while (!first.empty() && std::isspace(static_cast<unsigned char>(first.back())))
    first.remove_suffix(1);
  if (first.find_first_of(" \t") == std::string_view::npos && !first.empty() &&
      !std::all_of(first.begin(), first.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return parse_graph6(first);
  return parse_edgelist(text);
}

} // namespace hamq
