#include <doctest.h>

#include <set>

#include "hamq/corpus.hpp"
#include "hamq/random.hpp"

using namespace hamq;

TEST_CASE("class counts match the published sequences") {
  const std::vector<std::size_t> all{1, 2, 4, 11, 34, 156, 1044};
  const std::vector<std::size_t> conn{1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 7; ++n) {
    CHECK(all_graphs(n).size() == all[n - 1]);
    CHECK(connected_graphs(n).size() == conn[n - 1]);
  }
}

TEST_CASE("canonical code is a relabelling invariant") {
  SplitMix64 rng(41);
  for (int t = 0; t < 300; ++t) {
    int n = 1 + static_cast<int>(rng.bounded(9));
    Graph g = random_gnp(n, rng.unit(), rng);
    Graph h = g.relabeled(random_permutation(n, rng));
    CHECK(canonical_code(g) == canonical_code(h));
    CHECK(canonical_form(g) == canonical_form(h));
    CHECK(canonical_form(g).m() == g.m());
  }
}

TEST_CASE("corpus members are pairwise non-isomorphic") {
  auto gs = all_graphs(6);
  std::set<std::uint64_t> codes;
  for (const auto &g : gs)
    codes.insert(canonical_code(g));
  CHECK(codes.size() == gs.size());
}
