#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "hamq/graph.hpp"

namespace hamq {

using Rational = mpq_class;

/// Approximate Perron pair of Q(G) = D(G) + A(G) with an enclosure of q(G).
///
/// `lo` is the best Rayleigh quotient seen and `hi` the smallest
/// Collatz-Wielandt ratio max_v (Qx)_v / x_v over the iterates, each widened
/// outward by a floating-point rounding allowance. `f` is the last iterate,
/// scaled so that its largest entry is 1. Converged means the interval is
/// within tol and the iterate's eigen-equation defect is at most tol.
struct SpectralEstimate {
  double q_hat = 0;
  std::vector<double> f;
  double residual = 0;
  double lo = 0;
  double hi = 0;
  long iterations = 0;
  bool converged = false;

  double width() const { return hi - lo; }
};

constexpr double kDefaultTol = 1e-10;

long default_max_iter(int n);

/// y_v = d(v) x_v + sum over neighbours u of x_u, summed in ascending order.
std::vector<double> q_apply(const Graph &g, std::span<const double> x);

/// Power iteration from the all-ones vector. Throws NotConnected (or
/// BadParameters for n < 2). When the interval is still wider than `tol`
/// after `max_iter` steps the best estimate is returned with
/// `converged == false`.
SpectralEstimate perron_pair(const Graph &g, double tol = kDefaultTol, long max_iter = 0);

/// Sum over edges of (x_u + x_v)^2 divided by sum of x_v^2, exactly.
Rational rayleigh_quotient_exact(const Graph &g, std::span<const long long> x);
Rational rayleigh_quotient_exact(const Graph &g, std::span<const mpz_class> x);

/// Exact Rayleigh quotient of f rounded to integers at scale 2^bits.
Rational rounded_rayleigh(const Graph &g, std::span<const double> f, int bits = 30);

/// 2m/(n-1) + n - 2.
Rational upper_bound_edge_count(const Graph &g);

/// max_v |(q_hat - d(v)) f_v - sum over neighbours of f_u|.
double eigen_residual(const Graph &g, double q_hat, std::span<const double> f);

enum class Comparison { Above, Below, Straddles };

/// Above if lo >= threshold, Below if hi < threshold, else Straddles.
Comparison compare(const SpectralEstimate &est, double threshold);

/// Adjacent-pair identity: (q - d(u) + 1)(f_u - f_v) minus
/// [(d(u) - d(v)) f_v + sum_{N(u)\N[v]} f - sum_{N(v)\N[u]} f].
double adjacent_pair_defect(const Graph &g, double q_hat, std::span<const double> f,
                            Vertex u, Vertex v);

} // namespace hamq
