#include <doctest.h>

#include "hamq/certifier.hpp"
#include "hamq/corpus.hpp"
#include "hamq/random.hpp"
#include "oracles.hpp"

using namespace hamq;

namespace {

bool implies_yes(Outcome o) { return o == Outcome::CertifiedHamiltonConnected || o == Outcome::ExactYes; }
bool implies_no(Outcome o) { return o == Outcome::ExactNo || o == Outcome::NotHamiltonConnected; }

std::vector<std::string> keys(const nlohmann::ordered_json &j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out.push_back(it.key());
  return out;
}

} // namespace

TEST_CASE("complete graphs certify by the degree condition") {
  auto c = certify(complete(22));
  CHECK(c.outcome == Outcome::CertifiedHamiltonConnected);
  CHECK(c.fired == Condition::Ore);
  CHECK(c.exit_code() == 0);
  auto j = explain(certify(complete(4)));
  CHECK(j["fired_condition"] == "Ore");
  for (const auto &h : j["trace"][0]["hypotheses"])
    CHECK(h["pass"] == true);
}

TEST_CASE("cycles fall through to the oracle") {
  auto c = certify(cycle(6));
  CHECK(c.outcome == Outcome::ExactNo);
  CHECK(c.exit_code() == 1);
  auto j = explain(c);
  CHECK(j["fired_condition"] == "Oracle");
  CHECK(j["trace"].back()["verdict"] == "no");
  for (const auto &t : j["trace"])
    if (t["condition"] != "Oracle")
      CHECK(t["verdict"] == "failed");
}

TEST_CASE("host of the edge-count family is exceptional") {
  auto s = build_S(22, 2);
  CHECK(s.graph.m() == 212);
  auto c = certify(s.graph);
  CHECK(c.outcome == Outcome::ExceptionalFamily);
  CHECK(c.exceptional_source == "EdgeCount(2)");
  CHECK(c.exceptional_confirmed);
  CHECK(c.exit_code() == 1);
  REQUIRE(c.exceptional);
  CHECK(c.exceptional->X.size() == 1);
}

TEST_CASE("explain lists the family witness") {
  auto c = certify(build_S(6, 2).graph);
  auto j = explain(c);
  CHECK(keys(j) == std::vector<std::string>{"outcome", "fired_condition", "parameters", "witnesses", "trace"});
  CHECK(keys(j["parameters"]) == std::vector<std::string>{"n", "delta", "m", "q_interval"});
  CHECK(j["outcome"] == "ExactNo");
  CHECK(j["witnesses"]["non_hamilton_pair"].dump() == "[0,1]");
}

TEST_CASE("second-class member at the spectral order is not certified") {
  auto s = family_member(build_S(92, 2), EdgeSet{{0, 5}});
  auto c = certify(s.graph);
  CHECK(c.outcome != Outcome::CertifiedHamiltonConnected);
  CHECK(c.outcome == Outcome::ExceptionalFamily);
  CHECK(c.exit_code() == 2);
  REQUIRE(c.q_interval);
  CHECK(c.q_interval->second < 180);
  bool saw = false;
  for (const auto &t : c.trace)
    if (t.condition == Condition::Spectral && t.k == 2) {
      saw = true;
      CHECK(t.verdict == "failed");
      CHECK(t.notes["member_S1"] == false);
      CHECK(t.notes["member_S2"] == true);
    }
  CHECK(saw);
}

TEST_CASE("edge-count threshold is strict") {
  // n = 22, k = 2: exactly C(20,2) + 6 = 196 edges never fires the branch
  SplitMix64 rng(61);
  int tried = 0;
  while (tried < 20) {
    Graph g = random_gnm(22, 196, rng);
    if (g.min_degree() < 2)
      continue;
    ++tried;
    CertifyConfig cfg;
    cfg.use_oracle = false;
    auto c = certify(g, cfg);
    CHECK(c.fired != Condition::EdgeCount);
    for (const auto &t : c.trace)
      if (t.condition == Condition::EdgeCount)
        CHECK(t.verdict == "failed");
  }
}

TEST_CASE("pinned regression: gnp(10, 0.2) seed 1") {
  SplitMix64 rng(1);
  Graph g = random_gnp(10, 0.2, rng);
  CHECK(emit_graph6(g) == "I??P@@OG?");
  auto c = certify(g);
  CHECK(c.outcome == Outcome::NotHamiltonConnected);
  CHECK(c.exit_code() == 1);
}

TEST_CASE("small trivial orders") {
  CHECK(certify(complete(1)).exit_code() == 0);
  CHECK(certify(complete(2)).exit_code() == 0);
  CHECK(certify(empty_graph(2)).exit_code() == 1);
  CHECK(certify(path(3)).exit_code() == 1);
}

TEST_CASE("soundness against the oracle on the n <= 7 corpus") {
  for (int n = 1; n <= 7; ++n)
    for (const Graph &g : connected_graphs(n)) {
      auto c = certify(g);
      bool hc = oracle::hamilton_connected_brute(g);
      if (implies_yes(c.outcome))
        CHECK(hc);
      if (implies_no(c.outcome) || (c.outcome == Outcome::ExceptionalFamily && c.exceptional_confirmed))
        CHECK_FALSE(hc);
    }
}

TEST_CASE("certificates without oracle are sound on random graphs") {
  SplitMix64 rng(62);
  CertifyConfig cfg;
  cfg.use_oracle = false;
  for (int t = 0; t < 500; ++t) {
    int n = 3 + static_cast<int>(rng.bounded(6));
    Graph g = random_gnp(n, 0.5 + 0.5 * rng.unit(), rng);
    auto c = certify(g, cfg);
    if (c.outcome == Outcome::CertifiedHamiltonConnected)
      CHECK(oracle::hamilton_connected_brute(g));
    CHECK(c.outcome != Outcome::ExactYes);
  }
}
