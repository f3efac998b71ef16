#include <doctest.h>

#include <set>

#include "hamq/error.hpp"
#include "hamq/suites.hpp"

using namespace hamq;

TEST_CASE("parse_range") {
  CHECK(parse_range("2..5") == std::vector<long long>{2, 3, 4, 5});
  CHECK(parse_range("3,2") == std::vector<long long>{2, 3});
  CHECK(parse_range("8..10,20") == std::vector<long long>{8, 9, 10, 20});
  CHECK(parse_range("7") == std::vector<long long>{7});
  CHECK_THROWS_AS(parse_range(""), BadParameters);
  CHECK_THROWS_AS(parse_range("5..2"), BadParameters);
  CHECK_THROWS_AS(parse_range("a"), BadParameters);
  CHECK_THROWS_AS(parse_range("2,,3"), BadParameters);
}

TEST_CASE("every coverage statement maps to a registered suite") {
  auto ids = suite_ids();
  std::set<std::string> known(ids.begin(), ids.end());
  std::set<std::string> used;
  for (const auto &e : coverage_table()) {
    CHECK_MESSAGE(known.count(e.suite), e.statement);
    used.insert(e.suite);
  }
  for (const auto &id : ids)
    CHECK_MESSAGE(used.count(id), id);
}

TEST_CASE("unknown suite and bad params") {
  CHECK_THROWS_AS(run_suite("nope", {}), BadSuite);
  SuiteParams p;
  p.mode = "sometimes";
  CHECK_THROWS_AS(run_suite("eigen", p), BadParameters);
  CHECK_THROWS_AS(hunt(8, 10, 1, "gnp(2)"), BadParameters);
  CHECK_THROWS_AS(hunt(8, 10, 1, "bogus"), BadParameters);
  CHECK_THROWS_AS(hunt(9, 0, 1, "all-connected"), BadParameters);
}

TEST_CASE("small suites pass and are byte-stable") {
  SuiteParams p;
  p.ns = {3, 4, 5, 6, 20};
  auto a = run_suite("eigen", p);
  CHECK(a.ok());
  CHECK(a.cases == 10);

  SuiteParams q;
  q.count = 200;
  q.ns = {20};
  auto r1 = run_suite("qbound", q), r2 = run_suite("qbound", q);
  CHECK(r1.ok());
  CHECK(r1.to_json().dump() == r2.to_json().dump());
  CHECK_FALSE(r1.to_json().contains("elapsed_ms"));
  CHECK(r1.to_json(true).contains("elapsed_ms"));
}

TEST_CASE("hunt is deterministic and sound on small inputs") {
  auto a = hunt(7, 300, 5, "gnp(0.5)");
  auto b = hunt(7, 300, 5, "gnp(0.5)");
  CHECK(a.ok());
  CHECK(a.cases == 300);
  CHECK(a.to_json().dump() == b.to_json().dump());
  auto c = hunt(6, 0, 1, "all-connected");
  CHECK(c.ok());
  CHECK(c.cases == 112);
}

TEST_CASE("family and closure suites on small orders") {
  SuiteParams p;
  p.ks = {2};
  p.ns = {8, 9};
  CHECK(run_suite("family-nonhc", p).ok());
  SuiteParams c;
  c.ns = {5, 6};
  auto r = run_suite("closure", c);
  CHECK(r.ok());
  CHECK(r.cases == 21 + 112);
  CHECK(run_suite("ore", c).ok());
  SuiteParams k;
  k.count = 100;
  k.ns = {12};
  CHECK(run_suite("kelmans", k).ok());
}

TEST_CASE("host ordering suite skips k=2 and passes for k=3") {
  SuiteParams p;
  p.ks = {2, 3};
  p.ns = {30};
  auto r = run_suite("corollary", p);
  CHECK(r.ok());
  CHECK(r.cases == 1);
  CHECK(r.notes["skipped"].size() == 1);
}
