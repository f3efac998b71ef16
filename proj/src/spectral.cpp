#include "hamq/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>

#include "hamq/error.hpp"

namespace hamq {

namespace {

// Compressed adjacency for repeated multiplies.
struct Csr {
  std::vector<int> start;
  std::vector<int> target;
  std::vector<int> degree;

  explicit Csr(const Graph &g) : start(g.n() + 1, 0), degree(g.degrees()) {
    target.reserve(static_cast<std::size_t>(2 * g.m()));
    for (Vertex v = 0; v < g.n(); ++v) {
      for (Vertex u : g.neighbors(v))
        target.push_back(u);
      start[v + 1] = static_cast<int>(target.size());
    }
  }

  void apply(std::span<const double> x, std::span<double> y) const {
    const int n = static_cast<int>(degree.size());
    for (int v = 0; v < n; ++v) {
      double s = degree[v] * x[v];
      for (int i = start[v]; i < start[v + 1]; ++i)
        s += x[target[i]];
      y[v] = s;
    }
  }
};

// Outward widening applied to the floating enclosure.
double rounding_allowance(double q) { return 64.0 * DBL_EPSILON * std::abs(q); }

} // namespace

long default_max_iter(int n) { return 200L * n + 10'000; }

std::vector<double> q_apply(const Graph &g, std::span<const double> x) {
  if (static_cast<int>(x.size()) != g.n())
    throw DimensionMismatch("q_apply: vector length differs from vertex count");
  std::vector<double> y(x.size());
  Csr(g).apply(x, y);
  return y;
}

SpectralEstimate perron_pair(const Graph &g, double tol, long max_iter) {
  if (g.n() < 2)
    throw BadParameters("perron_pair needs n >= 2");
  if (!is_connected(g))
    throw NotConnected("perron_pair requires a connected graph");
  if (max_iter <= 0)
    max_iter = default_max_iter(g.n());
  const Csr q(g);
  const std::size_t n = static_cast<std::size_t>(g.n());
  std::vector<double> x(n, 1.0), y(n);
  SpectralEstimate est;
  est.lo = -INFINITY;
  est.hi = INFINITY;
  double rq = 0;
  for (long it = 1; it <= max_iter; ++it) {
    q.apply(x, y);
    long double xy = 0, xx = 0;
    double ratio = 0, ymax = 0, xmax = 0;
    for (std::size_t v = 0; v < n; ++v) {
      xy += static_cast<long double>(x[v]) * y[v];
      xx += static_cast<long double>(x[v]) * x[v];
      ratio = std::max(ratio, y[v] / x[v]);
      ymax = std::max(ymax, y[v]);
      xmax = std::max(xmax, x[v]);
    }
    rq = static_cast<double>(xy / xx);
    // residual of the current iterate, in the max-1 normalisation
    double defect = 0;
    for (std::size_t v = 0; v < n; ++v)
      defect = std::max(defect, std::abs(y[v] - rq * x[v]));
    defect /= xmax;
    est.lo = std::max(est.lo, rq - rounding_allowance(rq));
    est.hi = std::min(est.hi, ratio + rounding_allowance(ratio));
    est.iterations = it;
    if (est.hi - est.lo <= tol && defect <= tol) {
      est.converged = true;
      break;
    }
    if (it == max_iter)
      break;
    for (std::size_t v = 0; v < n; ++v)
      x[v] = y[v] / ymax;
  }
  double fmax = *std::max_element(x.begin(), x.end());
  for (auto &v : x)
    v /= fmax;
  est.q_hat = std::clamp(rq, est.lo, est.hi);
  est.f = std::move(x);
  est.residual = eigen_residual(g, est.q_hat, est.f);
  return est;
}

Rational rayleigh_quotient_exact(const Graph &g, std::span<const mpz_class> x) {
  if (static_cast<int>(x.size()) != g.n())
    throw DimensionMismatch("rayleigh: vector length differs from vertex count");
  mpz_class num = 0, den = 0;
  for (const auto &e : g.edges()) {
    mpz_class s = x[e.u] + x[e.v];
    num += s * s;
  }
  for (const auto &v : x)
    den += v * v;
  if (den == 0)
    throw ZeroVector("rayleigh: zero vector");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rayleigh_quotient_exact(const Graph &g, std::span<const long long> x) {
  if (static_cast<int>(x.size()) != g.n())
    throw DimensionMismatch("rayleigh: vector length differs from vertex count");
  long long biggest = 0;
  for (long long v : x)
    biggest = std::max(biggest, v < 0 ? -v : v);
  if (biggest > (1LL << 24)) {
    std::vector<mpz_class> big;
    big.reserve(x.size());
    for (long long v : x)
      big.emplace_back(static_cast<long>(v));
    return rayleigh_quotient_exact(g, big);
  }
  // (x_u + x_v)^2 <= 2^50 per edge, so 128-bit sums cannot overflow
  __int128 num = 0, den = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    den += static_cast<__int128>(x[u]) * x[u];
    auto r = g.row(u);
    for (std::size_t w = static_cast<std::size_t>(u) >> 6; w < r.size(); ++w) {
      std::uint64_t b = r[w];
      if (w == static_cast<std::size_t>(u) >> 6)
        b &= ~((std::uint64_t{2} << (u & 63)) - 1);
      for (; b; b &= b - 1) {
        long long s = x[u] + x[static_cast<std::size_t>(w * 64) + std::countr_zero(b)];
        num += static_cast<__int128>(s) * s;
      }
    }
  }
  if (den == 0)
    throw ZeroVector("rayleigh: zero vector");
  auto to_mpz = [](__int128 v) {
    mpz_class hi = static_cast<long>(v >> 64);
    mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
    return mpz_class(hi * mpz_class("18446744073709551616") + lo);
  };
  Rational r(to_mpz(num), to_mpz(den));
  r.canonicalize();
  return r;
}

Rational rounded_rayleigh(const Graph &g, std::span<const double> f, int bits) {
  std::vector<mpz_class> x;
  x.reserve(f.size());
  for (double v : f)
    x.emplace_back(static_cast<long>(std::llround(std::ldexp(v, bits))));
  return rayleigh_quotient_exact(g, x);
}

Rational upper_bound_edge_count(const Graph &g) {
  if (g.n() < 2)
    throw BadParameters("edge-count bound needs n >= 2");
  if (!is_connected(g))
    throw NotConnected("edge-count bound requires a connected graph");
  Rational r(static_cast<long>(2 * g.m()), static_cast<long>(g.n() - 1));
  r.canonicalize();
  return r + static_cast<long>(g.n() - 2);
}

double eigen_residual(const Graph &g, double q_hat, std::span<const double> f) {
  if (static_cast<int>(f.size()) != g.n())
    throw DimensionMismatch("eigen_residual: vector length differs from vertex count");
  double worst = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    double s = 0;
    for (Vertex u : g.neighbors(v))
      s += f[u];
    worst = std::max(worst, std::abs((q_hat - g.degree(v)) * f[v] - s));
  }
  return worst;
}

Comparison compare(const SpectralEstimate &est, double threshold) {
  if (est.lo >= threshold)
    return Comparison::Above;
  if (est.hi < threshold)
    return Comparison::Below;
  return Comparison::Straddles;
}

double adjacent_pair_defect(const Graph &g, double q_hat, std::span<const double> f,
                            Vertex u, Vertex v) {
  double lhs = (q_hat - g.degree(u) + 1) * (f[u] - f[v]);
  double rhs = (g.degree(u) - g.degree(v)) * f[v];
  for (Vertex s : g.neighbors(u))
    if (s != v && !g.adjacent(v, s))
      rhs += f[s];
  for (Vertex t : g.neighbors(v))
    if (t != u && !g.adjacent(u, t))
      rhs -= f[t];
  return lhs - rhs;
}

} // namespace hamq
