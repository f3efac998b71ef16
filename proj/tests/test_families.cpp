#include <doctest.h>

#include <map>
#include <set>

#include "hamq/corpus.hpp"
#include "hamq/error.hpp"
#include "hamq/families.hpp"
#include "hamq/random.hpp"
#include "hamq/spectral.hpp"
#include "oracles.hpp"

using namespace hamq;

namespace {

std::map<int, int> degree_histogram(const Graph &g) {
  std::map<int, int> h;
  for (int d : g.degrees())
    ++h[d];
  return h;
}

long long choose2(long long a) { return a * (a - 1) / 2; }

// The witness labelling really exhibits g as host minus `missing`.
void check_witness(const Graph &g, const FamilyWitness &w, bool spanning) {
  const int n = g.n();
  const int k = w.k;
  REQUIRE(static_cast<int>(w.X.size()) == k - 1);
  REQUIRE(static_cast<int>(w.Y.size()) == (w.kind == FamilyKind::S ? k : 2));
  REQUIRE(static_cast<int>(w.X.size() + w.Y.size() + w.Z.size()) == n);
  std::vector<int> part(n, -1);
  for (Vertex v : w.X)
    part[v] = 0;
  for (Vertex v : w.Y)
    part[v] = 1;
  for (Vertex v : w.Z)
    part[v] = 2;
  for (int p : part)
    REQUIRE(p >= 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      bool host;
      int a = part[u], b = part[v];
      if (a != 0 && b != 0)
        host = true;
      else if (a == 0 && b == 0)
        host = w.kind == FamilyKind::T;
      else
        host = a == 1 || b == 1;
      bool miss = w.missing.contains({u, v});
      if (!host)
        CHECK_FALSE(g.adjacent(u, v));
      else
        CHECK(g.adjacent(u, v) == !miss);
      if (!spanning && miss)
        CHECK((a != 0 && b != 0));
    }
}

// Does some vertex ordering place every edge of g inside the host?
bool embeds_brute(const Graph &g, const Graph &host) {
  std::vector<Vertex> p(g.n());
  std::iota(p.begin(), p.end(), 0);
  auto es = g.edges();
  do {
    bool ok = true;
    for (const auto &e : es)
      if (!host.adjacent(p[e.u], p[e.v])) {
        ok = false;
        break;
      }
    if (ok)
      return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Independent evaluation of max A - min B with |E'| taken from the floor.
Rational gap_oracle(long k, long n) {
  Rational K = k, N = n;
  long e1 = k * (k - 1) / 4 + 1;
  Rational up = 1 + K / (2 * N - 3 * K - 1);
  Rational down = 1 - (K * K + 6 * K + 6) / (2 * N - 4 * K);
  return K * (K - 1) * up * up - Rational(4 * e1) * down * down;
}

} // namespace

TEST_CASE("family construction") {
  auto s = build_S(6, 2);
  CHECK(s.graph.m() == 12);
  auto degs = s.graph.degrees();
  std::sort(degs.begin(), degs.end());
  CHECK(degs == std::vector<int>{2, 4, 4, 4, 5, 5});
  CHECK(build_T(7, 3).graph.m() == 15);
  for (int n = 5; n <= 14; ++n)
    CHECK(build_S(n, 2).graph == build_T(n, 2).graph);
  CHECK_THROWS_AS(build_S(4, 2), BadParameters);
  CHECK_THROWS_AS(build_T(9, 5), BadParameters);
  CHECK_THROWS_AS(build_S(9, 1), BadParameters);
}

TEST_CASE("degree spectrum and edge counts") {
  for (int n = 5; n <= 24; ++n)
    for (int k = 2; 2 * k <= n; ++k) {
      auto s = build_S(n, k);
      auto t = build_T(n, k);
      std::map<int, int> hs, ht;
      hs[k] += k - 1;
      hs[n - 1] += k;
      hs[n - k] += n - 2 * k + 1;
      ht[k] += k - 1;
      ht[n - 1] += 2;
      ht[n - k] += n - k - 1;
      if (k == n - k) // coinciding degree classes
        continue;
      CHECK(degree_histogram(s.graph) == hs);
      CHECK(degree_histogram(t.graph) == ht);
      CHECK(s.graph.m() == choose2(n - k + 1) + static_cast<long long>(k) * (k - 1));
      CHECK(t.graph.m() == choose2(n - k + 1) + 2 * (k - 1) + choose2(k - 1));
      CHECK(s.E0->size() == static_cast<std::size_t>(choose2(n - k + 1)));
      for (Vertex x : s.X)
        CHECK(s.graph.neighbors(x) == s.Y);
      for (Vertex a : t.X)
        for (Vertex b : t.X)
          if (a != b)
            CHECK(t.graph.adjacent(a, b));
      CHECK(clique_number(s.graph) == n - k + 1);
    }
}

TEST_CASE("members and class bounds") {
  auto s6 = build_S(6, 2);
  CHECK(family_member(s6, {}).graph == s6.graph);
  auto s9 = build_S(9, 3);
  auto m = family_member(s9, EdgeSet{{0, 5}});
  CHECK(m.graph.m() == s9.graph.m() - 1);
  CHECK(admissible_deletions(FamilyClass::S1, 3, m.deleted.size()));
  auto t9 = build_T(9, 3);
  auto m2 = family_member(t9, EdgeSet{{0, 1}, {3, 4}});
  CHECK(admissible_deletions(FamilyClass::T2, 3, m2.deleted.size()));
  CHECK(m2.Y1().empty());
  CHECK(m2.Y2() == std::vector<Vertex>{0, 1});
  CHECK(m2.Z2() == std::vector<Vertex>{3, 4});
  CHECK(m2.Z1() == std::vector<Vertex>{2, 5, 6});
  CHECK_THROWS_AS(family_member(s9, EdgeSet{{0, 8}}), NotInE0);

  CHECK(class_bound(FamilyClass::S1, 4) == 3);
  CHECK(class_bound(FamilyClass::T2, 2) == 1);
  CHECK(class_bound(FamilyClass::S1, 2) == 0);
  CHECK(class_bound(FamilyClass::S2, 3) == 2);
  CHECK(class_bound(FamilyClass::T1, 5) == 2);
  CHECK(parse_family_class("T2") == FamilyClass::T2);
  CHECK_THROWS_AS(parse_family_class("S3"), BadParameters);
}

TEST_CASE("exhaustive enumeration") {
  auto count = [](FamilyClass c, int n, int k) {
    ClassEnumerator e(c, n, k, Exhaustive{});
    std::size_t total = 0;
    std::set<std::vector<Edge>> seen;
    std::vector<Edge> prev_key;
    std::size_t prev_size = 0;
    for_each_member(e, [&](const FamilyHandle &h) {
      ++total;
      CHECK(admissible_deletions(c, k, h.deleted.size()));
      CHECK(seen.insert(h.deleted.edges()).second);
      // by size, then sorted edge tuple
      if (h.deleted.size() == prev_size && total > 1)
        CHECK(prev_key < h.deleted.edges());
      CHECK(h.deleted.size() >= prev_size);
      prev_size = h.deleted.size();
      prev_key = h.deleted.edges();
    });
    return total;
  };
  CHECK(count(FamilyClass::S1, 6, 2) == 1);
  CHECK(count(FamilyClass::T1, 9, 3) == 22);
  CHECK(count(FamilyClass::S2, 92, 2) == 4095);
  CHECK(count(FamilyClass::S1, 10, 4) == class_size(FamilyClass::S1, 10, 4).get_ui());
  CHECK(class_size(FamilyClass::S2, 92, 2) == 4095);
  CHECK_THROWS_AS(ClassEnumerator(FamilyClass::S1, 40, 5, Exhaustive{1000}), BudgetExceeded);
}

TEST_CASE("sampled enumeration") {
  ClassEnumerator e(FamilyClass::T2, 9, 3, Sample{7, 10});
  int total = 0;
  for_each_member(e, [&](const FamilyHandle &h) {
    ++total;
    CHECK(h.deleted.size() == 2);
  });
  CHECK(total == 10);

  ClassEnumerator a(FamilyClass::S1, 30, 4, Sample{1, 20});
  ClassEnumerator b(FamilyClass::S1, 30, 4, Sample{1, 20});
  while (auto h = a.next())
    CHECK(b.next()->deleted == h->deleted);

  ClassEnumerator s2(FamilyClass::S2, 92, 2, Sample{3, 5});
  int c = 0;
  while (auto h = s2.next()) {
    ++c;
    CHECK(h->deleted.size() == 1);
  }
  CHECK(c == 5);
}

TEST_CASE("membership recovers relabelled members") {
  auto w = membership(build_S(6, 2).graph, FamilyClass::S1, 2);
  REQUIRE(w);
  CHECK(w->missing.empty());
  CHECK(w->X == std::vector<Vertex>{5});
  CHECK_FALSE(membership(complete(6), FamilyClass::S1, 2));

  SplitMix64 rng(51);
  for (int t = 0; t < 200; ++t) {
    int k = 2 + static_cast<int>(rng.bounded(4));
    int n = 2 * k + static_cast<int>(rng.bounded(10));
    if (n < 5)
      n = 5;
    FamilyClass c = t % 2 ? FamilyClass::S1 : FamilyClass::T1;
    ClassEnumerator e(c, n, k, Sample{rng.next(), 1});
    auto h = *e.next();
    Graph g = h.graph.relabeled(random_permutation(n, rng));
    auto wit = membership(g, c, k);
    REQUIRE(wit);
    CHECK(wit->missing.size() == h.deleted.size());
    check_witness(g, *wit, false);
  }
}

TEST_CASE("membership rejects near misses") {
  // one deletion too many for the first class
  auto s9 = build_S(9, 3);
  auto g = family_member(s9, EdgeSet{{0, 1}, {4, 5}}).graph;
  CHECK_FALSE(membership(g, FamilyClass::S1, 3));
  CHECK(membership(g, FamilyClass::S2, 3));
  // an extra edge at an X vertex
  Graph h = s9.graph.with_edge({7, 8});
  CHECK_FALSE(membership(h, FamilyClass::S1, 3));
}

TEST_CASE("spanning subgraph search") {
  auto s = build_S(6, 2);
  for (const auto &e : s.graph.edges()) {
    Graph g = s.graph.without_edges(std::span(&e, 1));
    auto w = spanning_subgraph_of(g, FamilyKind::S, 2);
    REQUIRE(w);
    check_witness(g, *w, true);
  }
  CHECK_FALSE(spanning_subgraph_of(complete(6), FamilyKind::S, 2));
  CHECK(spanning_subgraph_of(cycle(6), FamilyKind::S, 2).has_value() ==
        embeds_brute(cycle(6), s.graph));

  SplitMix64 rng(52);
  for (int t = 0; t < 150; ++t) {
    int n = 5 + static_cast<int>(rng.bounded(3));
    int k = 2 + static_cast<int>(rng.bounded(2));
    if (2 * k > n)
      k = 2;
    FamilyKind kind = t % 2 ? FamilyKind::S : FamilyKind::T;
    Graph g = random_gnp(n, 0.3 + 0.6 * rng.unit(), rng);
    auto w = spanning_subgraph_of(g, kind, k);
    CHECK(w.has_value() == embeds_brute(g, build_host(kind, n, k).graph));
    if (w)
      check_witness(g, *w, true);
  }
}

TEST_CASE("thresholds") {
  CHECK(thresholds(2).n_min == 92);
  CHECK(thresholds(2).edge(22) == 196);
  CHECK(thresholds(3).spectral(270) == 534);
  CHECK(thresholds(3).n_min == 270);
  CHECK(thresholds(4).n_min == 652);
  CHECK(thresholds(5).order_edge == 55);
}

TEST_CASE("appendix inequality in exact arithmetic") {
  auto r = appendix_check(2, 92);
  CHECK(r.branch == 2);
  CHECK(r.primed);
  CHECK(r.bound == 2);
  CHECK(r.holds);
  auto r4 = appendix_check(4, 652);
  CHECK(r4.branch == 0);
  CHECK_FALSE(r4.primed);
  CHECK(r4.bound == 4);
  CHECK(r4.holds);
  auto r3 = appendix_check(3, 270);
  CHECK(r3.branch == 3);
  CHECK(r3.deleted == 2);
  CHECK(r3.holds);
  for (int k = 2; k <= 12; ++k)
    for (long long n : {thresholds(k).n_min, thresholds(k).n_min + 1000}) {
      auto a = appendix_check(k, n);
      CHECK(a.hypothesis_met);
      CHECK(a.holds);
      CHECK(a.deleted == k * (k - 1) / 4 + 1);
      CHECK(a.margin == Rational(a.bound) - (a.A1 + a.A2 + a.A3 - a.A4));
      Rational gap = gap_oracle(k, static_cast<long>(n));
      CHECK(gap == (a.A1 + a.A2 + a.A3 - a.A4) - a.bound);
      CHECK(gap == appendix_unexpanded_gap(k, n));
      CHECK(gap < 0);
    }
  CHECK_FALSE(appendix_check(2, 50).hypothesis_met);
  CHECK_THROWS_AS(appendix_check(3, 6), BadParameters);
}

TEST_CASE("indicator certificate equals the closed form") {
  SplitMix64 rng(53);
  for (int t = 0; t < 100; ++t) {
    int k = 2 + static_cast<int>(rng.bounded(4));
    int n = 2 * k + 1 + static_cast<int>(rng.bounded(30));
    FamilyClass c = static_cast<FamilyClass>(rng.bounded(4));
    ClassEnumerator e(c, n, k, Sample{rng.next(), 1});
    auto h = *e.next();
    long base = kind_of(c) == FamilyKind::S ? k * (k - 1) : 2 * (k - 1);
    Rational expect = Rational(2 * n - 2 * k) +
                      Rational(static_cast<long>(base - 4 * static_cast<long long>(h.deleted.size())), n - k + 1);
    expect.canonicalize();
    CHECK(rayleigh_quotient_exact(h.graph, h.big_clique_indicator()) == expect);
  }
}

TEST_CASE("orbit representatives cover the class") {
  for (auto c : {FamilyClass::S2, FamilyClass::T2, FamilyClass::S1}) {
    const int n = 10, k = 3;
    auto reps = orbit_representatives(c, n, k);
    std::set<std::uint64_t> rep_codes;
    for (const auto &h : reps)
      rep_codes.insert(canonical_code(h.graph));
    std::set<std::uint64_t> all_codes;
    ClassEnumerator e(c, n, k, Exhaustive{});
    double best_all = 0, best_rep = 0;
    for_each_member(e, [&](const FamilyHandle &h) {
      all_codes.insert(canonical_code(h.graph));
      if (is_connected(h.graph))
        best_all = std::max(best_all, perron_pair(h.graph).q_hat);
    });
    for (const auto &h : reps)
      if (is_connected(h.graph))
        best_rep = std::max(best_rep, perron_pair(h.graph).q_hat);
    CHECK(rep_codes == all_codes);
    CHECK(best_rep == doctest::Approx(best_all).epsilon(1e-12));
  }
}

TEST_CASE("json sidecar") {
  auto h = family_member(build_S(9, 3), EdgeSet{{0, 1}});
  auto j = to_json(h);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it)
    keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"kind", "n", "k", "X", "Y", "Z", "deleted"});
  CHECK(j["deleted"].dump() == "[[0,1]]");
  CHECK(j["X"].dump() == "[7,8]");
}
