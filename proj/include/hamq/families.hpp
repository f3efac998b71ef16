#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamq/graph.hpp"
#include "hamq/random.hpp"
#include "hamq/spectral.hpp"

namespace hamq {

enum class FamilyKind { S, T };

/// S1/T1: at most class_bound deletions. S2/T2: exactly class_bound.
enum class FamilyClass { S1, T1, S2, T2 };

const char *to_string(FamilyKind k);
const char *to_string(FamilyClass c);
FamilyClass parse_family_class(const std::string &s);
FamilyKind kind_of(FamilyClass c);
bool is_first_class(FamilyClass c);

/// A member of S_n^k or T_n^k with edges deleted inside the big clique.
///
/// Vertex layout: Y then Z occupy 0..n-k, X occupies the last k-1 indices.
/// For S, Y = 0..k-1 (the K_k of the join). For T, Y = {0, 1}.
struct FamilyHandle {
  FamilyKind kind = FamilyKind::S;
  int n = 0;
  int k = 0;
  Graph graph;
  std::vector<Vertex> X, Y, Z;
  /// Edges with both endpoints in Y u Z; shared by all members of a host.
  std::shared_ptr<const EdgeSet> E0;
  EdgeSet deleted;

  /// Y1/Y2 and Z1/Z2: vertices untouched / touched by the deleted edges.
  std::vector<Vertex> Y1() const;
  std::vector<Vertex> Y2() const;
  std::vector<Vertex> Z1() const;
  std::vector<Vertex> Z2() const;

  /// Indicator vector of Y union Z.
  std::vector<long long> big_clique_indicator() const;
};

/// K_k v (K_{n-2k+1} + (k-1)K_1). Needs n >= 5, 2 <= k <= n/2.
FamilyHandle build_S(int n, int k);
/// K_2 v (K_{n-k-1} + K_{k-1}). Same parameter range.
FamilyHandle build_T(int n, int k);
FamilyHandle build_host(FamilyKind kind, int n, int k);

/// base minus E; throws NotInE0 unless E is inside base.E0.
FamilyHandle family_member(const FamilyHandle &base, const EdgeSet &e);

/// floor(k(k-1)/4) for S, floor((k-1)/2) for T; +1 for the second classes.
int class_bound(FamilyClass c, int k);
bool admissible_deletions(FamilyClass c, int k, std::size_t deleted);

struct Exhaustive {
  std::uint64_t budget = 50'000'000;
};
struct Sample {
  std::uint64_t seed = 0;
  std::size_t count = 0;
};

/// Number of admissible deletion sets for the class (exact, may be large).
mpz_class class_size(FamilyClass c, int n, int k);

/// Single-consumer stream over class members.
///
/// Exhaustive: every admissible E' once, by size and then by sorted edge
/// tuple. Throws BudgetExceeded when class_size exceeds the budget.
/// Sample: `count` members drawn independently; the deletion-set size is
/// drawn with weight C(|E0|, s) so each admissible set is equally likely.
class ClassEnumerator {
public:
  ClassEnumerator(FamilyClass c, int n, int k, Exhaustive mode);
  ClassEnumerator(FamilyClass c, int n, int k, Sample mode);

  std::optional<FamilyHandle> next();
  const FamilyHandle &host() const { return host_; }

private:
  bool advance_combination();

  FamilyClass cls_;
  FamilyHandle host_;
  bool exhaustive_;
  int size_ = 0;
  int max_size_ = 0;
  std::vector<std::size_t> combo_;
  bool started_ = false;
  bool done_ = false;
  std::optional<SplitMix64> rng_;
  std::size_t remaining_ = 0;
  std::vector<double> size_weights_;
};

/// Invoke `fn` on every class member produced by the enumerator.
void for_each_member(ClassEnumerator &e, const std::function<void(const FamilyHandle &)> &fn);

/// Deletion-set orbit representatives under the host's symmetry (any
/// permutation of Y and of Z, plus the X-fixing symmetries). Only for small
/// class bounds.
std::vector<FamilyHandle> orbit_representatives(FamilyClass c, int n, int k);

/// Labelling of a graph as a family member or a spanning subgraph of a host.
struct FamilyWitness {
  FamilyKind kind = FamilyKind::S;
  int k = 0;
  std::vector<Vertex> X, Y, Z;
  /// Host edges missing from the graph (E' for class members).
  EdgeSet missing;
};

/// Recognize G as a member of the class (up to relabelling).
std::optional<FamilyWitness> membership(const Graph &g, FamilyClass c, int k);

/// Labelling under which every edge of G is an edge of S_n^k (resp. T_n^k).
/// Throws BudgetExceeded after `budget` candidate labellings.
std::optional<FamilyWitness> spanning_subgraph_of(const Graph &g, FamilyKind kind, int k,
                                                  std::uint64_t budget = 10'000'000);

struct Thresholds {
  int k = 0;
  long long n_min = 0;         ///< k^4 + 5k^3 + 2k^2 + 8k + 12
  long long order_edge = 0;    ///< 11k
  long long spectral(long long n) const { return 2 * n - 2 * k; }
  /// C(n-k, 2) + k(k+1); the edge condition is strict: m > edge(n).
  long long edge(long long n) const { return (n - k) * (n - k - 1) / 2 + static_cast<long long>(k) * (k + 1); }
};

Thresholds thresholds(int k);

struct AppendixReport {
  int k = 0;
  long long n = 0;
  int branch = 0;          ///< k mod 4
  bool primed = false;     ///< k = 2, 3 (mod 4)
  long long deleted = 0;   ///< |E'| = floor(k(k-1)/4) + 1
  Rational A1, A2, A3, A4;
  int bound = 4;
  Rational margin;         ///< bound - (A1 + A2 + A3 - A4)
  bool holds = false;
  bool hypothesis_met = false;  ///< n >= n_min(k)
};

/// Exact evaluation of the closing inequality for the second classes.
AppendixReport appendix_check(int k, long long n);

/// max A - min B computed from its unexpanded form (test cross-check).
Rational appendix_unexpanded_gap(int k, long long n);

nlohmann::ordered_json to_json(const FamilyHandle &h);
nlohmann::ordered_json to_json(const FamilyWitness &w);

} // namespace hamq
