#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hamq {

/// One violated check: the offending graph (empty when the check is purely
/// arithmetic) and the failed inequality with its numbers.
struct SuiteFailure {
  std::string graph6;
  std::string violation;
  friend auto operator<=>(const SuiteFailure &, const SuiteFailure &) = default;
};

struct SuiteReport {
  std::string id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t cases = 0;
  std::vector<SuiteFailure> failures;  ///< sorted by graph6, then violation
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  double elapsed_ms = 0;

  bool ok() const { return failures.empty(); }
  /// Report JSON; elapsed time is left out unless asked for, so that the
  /// default output is byte-stable.
  nlohmann::ordered_json to_json(bool with_elapsed = false) const;
};

/// Parameters shared by all suites; each suite reads the ones it needs and
/// fills in its own defaults for empty lists.
struct SuiteParams {
  std::vector<int> ks;
  std::vector<long long> ns;
  std::string mode;  ///< "exhaustive" or "sample"; empty = suite default
  std::uint64_t seed = 1;
  std::uint64_t count = 0;  ///< 0 = suite default
  std::string model;        ///< hunt only
};

/// Parse "2..12", "2,3" or "8..12,20" into a sorted list.
std::vector<long long> parse_range(const std::string &text);

std::vector<std::string> suite_ids();

/// Throws BadSuite for an unknown id, BadParameters for invalid params.
SuiteReport run_suite(const std::string &id, const SuiteParams &params);

/// Randomised or exhaustive certifier-versus-oracle comparison.
/// Models: gnp(p), gnm(m), dense-above-edge-threshold(k=K), all-connected.
/// `trials == 0` means exhaustive (all-connected only).
SuiteReport hunt(int n, std::uint64_t trials, std::uint64_t seed, const std::string &model);

/// Checked statement -> suite that exercises it.
struct CoverageEntry {
  std::string statement;
  std::string suite;
};
const std::vector<CoverageEntry> &coverage_table();

/// Worker count: HAMQ_THREADS if set and positive, else hardware threads.
unsigned worker_count();

/// Run fn(i) for i in [0, count) on worker_count() threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn);

} // namespace hamq
