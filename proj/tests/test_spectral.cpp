#include <doctest.h>

#include <cmath>

#include "hamq/error.hpp"
#include "hamq/families.hpp"
#include "hamq/random.hpp"
#include "hamq/spectral.hpp"
#include "oracles.hpp"

using namespace hamq;

namespace {

Graph random_connected(int n, SplitMix64 &rng) {
  for (;;) {
    Graph g = random_gnp(n, 0.15 + 0.8 * rng.unit(), rng);
    if (is_connected(g))
      return g;
  }
}

} // namespace

TEST_CASE("q_apply") {
  CHECK(q_apply(complete(3), std::vector<double>{1, 1, 1}) == std::vector<double>{4, 4, 4});
  CHECK(q_apply(cycle(4), std::vector<double>{1, 1, 1, 1}) == std::vector<double>{4, 4, 4, 4});
  CHECK(q_apply(path(3), std::vector<double>{1, 0, 0}) == std::vector<double>{1, 1, 0});
  CHECK_THROWS_AS(q_apply(path(3), std::vector<double>{1, 0}), DimensionMismatch);
}

TEST_CASE("perron pair on regular graphs") {
  for (int n : {2, 3, 10, 50}) {
    auto e = perron_pair(complete(n));
    CHECK(e.converged);
    CHECK(std::abs(e.q_hat - (2 * n - 2)) <= 1e-10);
    for (double f : e.f)
      CHECK(f == doctest::Approx(1.0));
  }
  auto c6 = perron_pair(cycle(6));
  CHECK(std::abs(c6.q_hat - 4) <= 1e-10);
  auto p = perron_pair(petersen());
  CHECK(std::abs(p.q_hat - 6) <= 1e-10);
}

TEST_CASE("perron pair on S_6^2") {
  Graph s = build_S(6, 2).graph;
  auto e = perron_pair(s);
  CHECK(e.converged);
  CHECK(e.lo >= 8.4);
  CHECK(e.hi <= 8.8);
  CHECK(std::abs(e.q_hat - oracle::q_dense(s)) <= 1e-9);
}

TEST_CASE("perron pair errors") {
  CHECK_THROWS_AS(perron_pair(disjoint_union(complete(2), complete(2))), NotConnected);
  CHECK_THROWS_AS(perron_pair(complete(1)), BadParameters);
  auto e = perron_pair(path(40), 1e-14, 3);
  CHECK_FALSE(e.converged);
  CHECK(e.lo <= e.hi);
}

TEST_CASE("exact Rayleigh quotients") {
  CHECK(rayleigh_quotient_exact(complete(3), std::vector<long long>{1, 1, 1}) == 4);
  auto s = build_S(6, 2);
  CHECK(rayleigh_quotient_exact(s.graph, s.big_clique_indicator()) == Rational(42, 5));
  auto t = build_T(9, 3);
  CHECK(rayleigh_quotient_exact(t.graph, t.big_clique_indicator()) == Rational(88, 7));
  CHECK_THROWS_AS(rayleigh_quotient_exact(complete(3), std::vector<long long>{0, 0, 0}), ZeroVector);
  CHECK_THROWS_AS(rayleigh_quotient_exact(complete(3), std::vector<long long>{1, 1}), DimensionMismatch);

  // integer path agrees with the arbitrary-precision path
  SplitMix64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Graph g = random_gnp(2 + static_cast<int>(rng.bounded(90)), rng.unit(), rng);
    std::vector<long long> x(g.n());
    std::vector<mpz_class> big(g.n());
    long long scale = t % 2 ? (1LL << 24) : (1LL << 40);
    for (int v = 0; v < g.n(); ++v) {
      x[v] = static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(scale))) - scale / 2;
      big[v] = static_cast<long>(x[v]);
    }
    x[0] = 1;
    big[0] = 1;
    CHECK(rayleigh_quotient_exact(g, x) == rayleigh_quotient_exact(g, big));
  }
}

TEST_CASE("edge-count upper bound") {
  CHECK(upper_bound_edge_count(complete(4)) == 6);
  CHECK(upper_bound_edge_count(cycle(5)) == Rational(11, 2));
  CHECK(upper_bound_edge_count(build_S(6, 2).graph) == Rational(44, 5));
  CHECK_THROWS_AS(upper_bound_edge_count(empty_graph(3)), NotConnected);
}

TEST_CASE("eigen residual") {
  CHECK(eigen_residual(complete(3), 4, std::vector<double>{1, 1, 1}) == 0);
  CHECK(eigen_residual(cycle(4), 4, std::vector<double>{1, 1, 1, 1}) == 0);
  CHECK(eigen_residual(complete(3), 3.9, std::vector<double>{1, 1, 1}) == doctest::Approx(0.1));
}

TEST_CASE("enclosures against a dense solver") {
  SplitMix64 rng(11);
  for (int t = 0; t < 300; ++t) {
    Graph g = random_connected(2 + static_cast<int>(rng.bounded(40)), rng);
    auto e = perron_pair(g);
    double q = oracle::q_dense(g);
    REQUIRE(e.converged);
    CHECK(e.lo <= q + 1e-12);
    CHECK(e.hi >= q - 1e-12);
    CHECK(e.width() <= kDefaultTol);
    CHECK(e.lo <= e.q_hat);
    CHECK(e.q_hat <= e.hi);
    CHECK(e.residual <= 10 * kDefaultTol);
    CHECK(*std::min_element(e.f.begin(), e.f.end()) > 0);
    CHECK(*std::max_element(e.f.begin(), e.f.end()) == 1.0);
    // rounded eigenvector certifies a value below hi
    CHECK(rounded_rayleigh(g, e.f).get_d() <= e.hi);
    CHECK(e.lo <= upper_bound_edge_count(g).get_d());
    // edge-count bound
    CHECK(e.q_hat - e.residual <= upper_bound_edge_count(g).get_d() + 1e-9);
  }
}

TEST_CASE("deleting an edge never raises the spectral radius") {
  SplitMix64 rng(12);
  int tested = 0;
  while (tested < 200) {
    Graph g = random_connected(3 + static_cast<int>(rng.bounded(20)), rng);
    auto es = g.edges();
    Edge e = es[rng.bounded(es.size())];
    Graph h = g.without_edges(std::span(&e, 1));
    if (!is_connected(h))
      continue;
    ++tested;
    CHECK(perron_pair(h).lo <= perron_pair(g).hi);
  }
}

TEST_CASE("regular graphs satisfy q = 2d") {
  SplitMix64 rng(13);
  for (int n = 5; n <= 30; ++n) {
    // circulant C_n(1, 2) is 4-regular
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
      es.emplace_back(i, (i + 1) % n);
      es.emplace_back(i, (i + 2) % n);
    }
    Graph g(n, es);
    int d = g.degree(0);
    CHECK(std::abs(perron_pair(g).q_hat - 2 * d) <= kDefaultTol);
  }
}

TEST_CASE("adjacent-pair identity holds for converged pairs") {
  SplitMix64 rng(14);
  for (int t = 0; t < 100; ++t) {
    Graph g = random_connected(3 + static_cast<int>(rng.bounded(25)), rng);
    auto e = perron_pair(g);
    for (const auto &uv : g.edges()) {
      CHECK(std::abs(adjacent_pair_defect(g, e.q_hat, e.f, uv.u, uv.v)) <= 10 * kDefaultTol);
      CHECK(std::abs(adjacent_pair_defect(g, e.q_hat, e.f, uv.v, uv.u)) <= 10 * kDefaultTol);
    }
  }
}

TEST_CASE("comparison against thresholds") {
  SpectralEstimate e;
  e.lo = 4;
  e.hi = 5;
  CHECK(compare(e, 4) == Comparison::Above);
  CHECK(compare(e, 4.5) == Comparison::Straddles);
  CHECK(compare(e, 5.5) == Comparison::Below);
}
