#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamq/families.hpp"
#include "hamq/graph.hpp"
#include "hamq/hamilton.hpp"

namespace hamq {

enum class Outcome {
  CertifiedHamiltonConnected,
  ExceptionalFamily,
  NotHamiltonConnected,
  Inconclusive,
  ExactYes,
  ExactNo,
  Timeout,
};

enum class Condition { None, Ore, ClosureComplete, EdgeCount, Spectral, HostSpectral, Oracle };

const char *to_string(Outcome o);
const char *to_string(Condition c);

/// CLI exit status for an outcome (0 yes, 1 no, 2 inconclusive, 3 timeout).
int exit_code(Outcome o, bool exceptional_confirmed);

struct Hypothesis {
  std::string name;
  std::string required;
  std::string actual;
  bool pass = false;
};

struct TraceEntry {
  Condition condition = Condition::None;
  int k = 0;  ///< 0 when the condition has no parameter
  std::string verdict;  ///< fired | failed | escaped | inconclusive | skipped | yes | no | timeout
  std::vector<Hypothesis> hypotheses;
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
};

struct Certificate {
  Outcome outcome = Outcome::Inconclusive;
  Condition fired = Condition::None;
  int fired_k = 0;
  int n = 0;
  int delta = 0;
  long long m = 0;
  std::optional<std::pair<double, double>> q_interval;
  /// Family embedding / membership found by an escape clause.
  std::optional<FamilyWitness> exceptional;
  std::string exceptional_source;  ///< e.g. "EdgeCount(2)"
  bool exceptional_confirmed = false;
  std::string confirmation;  ///< how non-Hamilton-connectivity was confirmed
  std::optional<Edge> non_hc_pair;
  std::vector<TraceEntry> trace;

  int exit_code() const { return hamq::exit_code(outcome, exceptional_confirmed); }
};

struct CertifyConfig {
  /// Run the exact oracle when n is at most this.
  int oracle_gate = 24;
  std::uint64_t pair_budget = kDefaultPairBudget;
  std::uint64_t embedding_budget = 10'000'000;
  double spectral_tol = 1e-10;
  bool use_oracle = true;
};

Certificate certify(const Graph &g, const CertifyConfig &config = {});

/// Stable-order JSON: outcome, fired_condition, parameters, witnesses, trace.
nlohmann::ordered_json explain(const Certificate &cert);

/// q(G) enclosure for possibly disconnected graphs (max over components).
std::pair<double, double> q_interval(const Graph &g, double tol = 1e-10);

} // namespace hamq
