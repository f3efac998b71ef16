#include "hamq/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "hamq/certifier.hpp"
#include "hamq/corpus.hpp"
#include "hamq/error.hpp"
#include "hamq/families.hpp"
#include "hamq/hamilton.hpp"
#include "hamq/random.hpp"
#include "hamq/spectral.hpp"
#include "hamq/transforms.hpp"

namespace hamq {

nlohmann::ordered_json SuiteReport::to_json(bool with_elapsed) const {
  nlohmann::ordered_json j;
  j["suite"] = id;
  j["params"] = params;
  j["cases"] = cases;
  j["ok"] = ok();
  auto fs = nlohmann::ordered_json::array();
  for (const auto &f : failures)
    fs.push_back({{"graph6", f.graph6}, {"violation", f.violation}});
  j["failures"] = fs;
  if (!notes.empty())
    j["notes"] = notes;
  if (with_elapsed)
    j["elapsed_ms"] = elapsed_ms;
  return j;
}

unsigned worker_count() {
  if (const char *env = std::getenv("HAMQ_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0)
      return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count)
          return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error)
            error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

std::vector<long long> parse_range(const std::string &text) {
  std::set<long long> out;
  std::size_t pos = 0;
  auto parse_int = [&](const std::string &s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception &) {
      throw BadParameters("bad range '" + text + "'");
    }
    if (used != s.size())
      throw BadParameters("bad range '" + text + "'");
    return v;
  };
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty())
      throw BadParameters("bad range '" + text + "'");
    std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.insert(parse_int(item));
    } else {
      long long a = parse_int(item.substr(0, dots)), b = parse_int(item.substr(dots + 2));
      if (a > b || b - a > 1'000'000)
        throw BadParameters("bad range '" + text + "'");
      for (long long v = a; v <= b; ++v)
        out.insert(v);
    }
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  return {out.begin(), out.end()};
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Rational &r) { return r.get_str(); }

// Thread-safe failure sink.
class Collector {
public:
  void fail(const Graph *g, std::string violation) {
    std::string g6 = g ? emit_graph6(*g) : std::string();
    std::lock_guard lock(mutex_);
    failures_.push_back({std::move(g6), std::move(violation)});
  }
  void add_cases(std::uint64_t c) { cases_ += c; }

  void finish(SuiteReport &r) {
    std::sort(failures_.begin(), failures_.end());
    r.failures = std::move(failures_);
    r.cases = cases_;
  }

private:
  std::mutex mutex_;
  std::vector<SuiteFailure> failures_;
  std::atomic<std::uint64_t> cases_{0};
};

// Independent per-case seeds drawn from one stream, so results do not
// depend on scheduling.
std::vector<std::uint64_t> case_seeds(std::uint64_t seed, std::size_t count) {
  SplitMix64 rng(seed);
  std::vector<std::uint64_t> out(count);
  for (auto &s : out)
    s = rng.next();
  return out;
}

Graph random_connected(int n, SplitMix64 &rng, double p_lo = 0.05) {
  for (;;) {
    Graph g = random_gnp(n, p_lo + (1 - p_lo) * rng.unit(), rng);
    if (is_connected(g))
      return g;
  }
}

// Pull members in batches and check each batch in parallel.
void for_members(ClassEnumerator &e, const std::function<void(const FamilyHandle &)> &fn) {
  constexpr std::size_t kBatch = 128;
  for (;;) {
    std::vector<FamilyHandle> batch;
    while (batch.size() < kBatch) {
      auto h = e.next();
      if (!h)
        break;
      batch.push_back(std::move(*h));
    }
    if (batch.empty())
      return;
    parallel_for(batch.size(), [&](std::size_t i) { fn(batch[i]); });
    if (batch.size() < kBatch)
      return;
  }
}

ClassEnumerator make_enumerator(FamilyClass c, int n, int k, const SuiteParams &p,
                                std::uint64_t default_count) {
  if (p.mode == "sample")
    return ClassEnumerator(c, n, k, Sample{p.seed, p.count ? p.count : default_count});
  return ClassEnumerator(c, n, k, Exhaustive{});
}

std::vector<int> ks_or(const SuiteParams &p, std::vector<int> def) { return p.ks.empty() ? def : p.ks; }

std::vector<long long> ns_or(const SuiteParams &p, std::vector<long long> def) {
  return p.ns.empty() ? def : p.ns;
}

void record_common(SuiteReport &r, const SuiteParams &p, const std::string &mode) {
  if (!p.ks.empty())
    r.params["k"] = p.ks;
  if (!p.ns.empty())
    r.params["n"] = p.ns;
  r.params["mode"] = mode;
  r.params["seed"] = p.seed;
  if (p.count)
    r.params["count"] = p.count;
}

bool oracle_yes(const Graph &g, Collector &col, const char *what) {
  auto a = is_hamilton_connected(g);
  if (a.verdict == Verdict::Timeout)
    col.fail(&g, std::string(what) + ": oracle timeout");
  return a.verdict == Verdict::Yes;
}

// ---------------------------------------------------------------- eigen

SuiteReport suite_eigen(const SuiteParams &p) {
  SuiteReport r{"eigen"};
  record_common(r, p, "exhaustive");
  Collector col;
  auto ns = ns_or(p, parse_range("3..200"));
  parallel_for(ns.size() * 2, [&](std::size_t i) {
    int n = static_cast<int>(ns[i / 2]);
    bool is_cycle = i % 2;
    Graph g = is_cycle ? cycle(n) : complete(n);
    double expect = is_cycle ? 4.0 : 2.0 * n - 2;
    auto e = perron_pair(g);
    col.add_cases(1);
    std::string name = (is_cycle ? "C_" : "K_") + std::to_string(n);
    if (!e.converged)
      col.fail(&g, name + ": no convergence");
    if (std::abs(e.q_hat - expect) > 1e-9)
      col.fail(&g, name + ": |q_hat - " + fmt(expect) + "| = " + fmt(std::abs(e.q_hat - expect)) + " > 1e-9");
    if (!(e.lo <= expect && expect <= e.hi))
      col.fail(&g, name + ": enclosure [" + fmt(e.lo) + ", " + fmt(e.hi) + "] misses " + fmt(expect));
    if (e.residual > 10 * kDefaultTol)
      col.fail(&g, name + ": residual " + fmt(e.residual) + " > 10 tol");
  });
  col.finish(r);
  return r;
}

// ---------------------------------------------------------------- qbound

SuiteReport suite_qbound(const SuiteParams &p) {
  SuiteReport r{"qbound"};
  const std::uint64_t count = p.count ? p.count : 10'000;
  const long long nmax = p.ns.empty() ? 50 : p.ns.back();
  record_common(r, p, "sample");
  r.params["count"] = count;
  r.params["n_max"] = nmax;
  Collector col;
  auto seeds = case_seeds(p.seed, count);
  parallel_for(count, [&](std::size_t i) {
    SplitMix64 rng(seeds[i]);
    int n = 2 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(nmax - 1)));
    Graph g = random_connected(n, rng);
    auto e = perron_pair(g);
    double bound = upper_bound_edge_count(g).get_d();
    col.add_cases(1);
    if (!e.converged)
      col.fail(&g, "no convergence after " + std::to_string(e.iterations) + " iterations");
    double slack = bound - (e.q_hat - e.residual);
    if (slack < -1e-9)
      col.fail(&g, "q_hat - residual exceeds 2m/(n-1)+n-2 by " + fmt(-slack));
    if (e.lo > bound + 1e-9)
      col.fail(&g, "certified lo " + fmt(e.lo) + " > 2m/(n-1)+n-2 = " + fmt(bound));
  });
  col.finish(r);
  return r;
}

// ---------------------------------------------------------------- kelmans

SuiteReport suite_kelmans(const SuiteParams &p) {
  SuiteReport r{"kelmans"};
  const std::uint64_t count = p.count ? p.count : 1000;
  const long long nmax = p.ns.empty() ? 30 : p.ns.back();
  record_common(r, p, "sample");
  r.params["count"] = count;
  r.params["n_max"] = nmax;
  Collector col;
  auto seeds = case_seeds(p.seed, count);
  parallel_for(count, [&](std::size_t i) {
    SplitMix64 rng(seeds[i]);
    for (;;) {
      int n = 2 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(nmax - 1)));
      Graph g = random_connected(n, rng, 0.1);
      Vertex u = static_cast<Vertex>(rng.bounded(n));
      Vertex v = static_cast<Vertex>(rng.bounded(n - 1));
      if (v >= u)
        ++v;
      Graph h = kelmans(g, u, v);
      if (!is_connected(h))
        continue;
      auto a = perron_pair(g), b = perron_pair(h);
      col.add_cases(1);
      std::string where = " (u=" + std::to_string(u) + ", v=" + std::to_string(v) + ")";
      if (b.q_hat < a.q_hat - 1e-8)
        col.fail(&g, "q_hat(G*) = " + fmt(b.q_hat) + " < q_hat(G) - 1e-8 = " + fmt(a.q_hat) + where);
      if (a.lo > b.hi + 1e-8)
        col.fail(&g, "lo(G) = " + fmt(a.lo) + " > hi(G*) + 1e-8 = " + fmt(b.hi) + where);
      return;
    }
  });
  col.finish(r);
  return r;
}

// ---------------------------------------------------------------- ore / closure

std::vector<Graph> corpus_for(const SuiteParams &p, SuiteReport &r, std::vector<long long> def_ex,
                              std::vector<long long> def_sample) {
  std::vector<Graph> out;
  const bool sample = p.mode == "sample";
  auto ns = ns_or(p, sample ? def_sample : def_ex);
  record_common(r, p, sample ? "sample" : "exhaustive");
  r.params["n"] = ns;
  if (!sample) {
    for (long long n : ns) {
      if (n < 1 || n > 9)
        throw BadParameters("exhaustive corpus needs 1 <= n <= 9");
      auto gs = connected_graphs(static_cast<int>(n));
      out.insert(out.end(), gs.begin(), gs.end());
    }
    return out;
  }
  const std::uint64_t count = p.count ? p.count : 500;
  r.params["count"] = count;
  SplitMix64 rng(p.seed);
  for (long long n : ns) {
    if (n < 1 || n > 64)
      throw BadParameters("sample corpus needs 1 <= n <= 64");
    for (std::uint64_t i = 0; i < count; ++i)
      out.push_back(random_gnp(static_cast<int>(n), 0.3 + 0.6 * rng.unit(), rng));
  }
  return out;
}

SuiteReport suite_ore(const SuiteParams &p) {
  SuiteReport r{"ore"};
  auto corpus = corpus_for(p, r, {6, 7}, {8, 9});
  Collector col;
  std::atomic<std::uint64_t> fired{0};
  parallel_for(corpus.size(), [&](std::size_t i) {
    const Graph &g = corpus[i];
    col.add_cases(1);
    if (!ore_check(g))
      return;
    ++fired;
    if (!oracle_yes(g, col, "ore"))
      col.fail(&g, "degree condition holds but the oracle finds no Hamilton path for some pair");
  });
  col.finish(r);
  r.notes["condition_held"] = fired.load();
  return r;
}

SuiteReport suite_closure(const SuiteParams &p) {
  SuiteReport r{"closure"};
  auto corpus = corpus_for(p, r, {6, 7}, {8, 9});
  Collector col;
  std::atomic<std::uint64_t> changed{0};
  parallel_for(corpus.size(), [&](std::size_t i) {
    const Graph &g = corpus[i];
    col.add_cases(1);
    auto cl = closure(g, g.n() + 1);
    if (!cl.trace.added.empty())
      ++changed;
    bool a = oracle_yes(g, col, "G");
    bool b = oracle_yes(cl.graph, col, "closure");
    if (a != b)
      col.fail(&g, std::string("oracle(G) = ") + (a ? "Yes" : "No") + " but oracle(cl_{n+1}(G)) = " +
                       (b ? "Yes" : "No"));
  });
  col.finish(r);
  r.notes["closure_added_edges"] = changed.load();
  return r;
}

// ---------------------------------------------------------------- q-lower

SuiteReport suite_q_lower(const SuiteParams &p) {
  SuiteReport r{"q-lower"};
  auto ks = ks_or(p, {2, 3});
  record_common(r, p, p.mode == "sample" ? "sample" : "exhaustive");
  r.params["k"] = ks;
  Collector col;
  for (int k : ks) {
    auto ns = ns_or(p, {thresholds(k).n_min});
    for (long long n : ns)
      for (FamilyClass c : {FamilyClass::S1, FamilyClass::T1}) {
        auto e = make_enumerator(c, static_cast<int>(n), k, p, 500);
        const long long base = kind_of(c) == FamilyKind::S ? static_cast<long long>(k) * (k - 1) : 2LL * (k - 1);
        const Rational threshold = static_cast<long>(2 * n - 2 * k);
        for_members(e, [&](const FamilyHandle &h) {
          col.add_cases(1);
          Rational rq = rayleigh_quotient_exact(h.graph, h.big_clique_indicator());
          Rational closed(static_cast<long>(base - 4 * static_cast<long long>(h.deleted.size())),
                          static_cast<long>(n - k + 1));
          closed.canonicalize();
          closed += threshold;
          std::string tag = std::string(to_string(c)) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
          if (rq < threshold)
            col.fail(&h.graph, tag + ": indicator Rayleigh " + fmt(rq) + " < 2n-2k = " + fmt(threshold));
          if (rq != closed)
            col.fail(&h.graph, tag + ": indicator Rayleigh " + fmt(rq) + " != closed form " + fmt(closed));
        });
      }
  }
  col.finish(r);
  return r;
}

// ---------------------------------------------------------------- q-upper

struct MemberCheck {
  double q_hat = 0;
  std::optional<FamilyHandle> member;
};

double max_over(const SpectralEstimate &e, const std::vector<Vertex> &vs) {
  double m = -INFINITY;
  for (Vertex v : vs)
    m = std::max(m, e.f[v]);
  return m;
}

double min_over(const SpectralEstimate &e, const std::vector<Vertex> &vs) {
  double m = INFINITY;
  for (Vertex v : vs)
    m = std::min(m, e.f[v]);
  return m;
}

// Eigenvector ordering and spread on the spectral-radius maximiser.
void check_maximiser(const FamilyHandle &h, Collector &col, nlohmann::ordered_json &note) {
  const int n = h.n, k = h.k;
  auto e = perron_pair(h.graph);
  auto y1 = h.Y1(), y2 = h.Y2(), z1 = h.Z1(), z2 = h.Z2();
  std::string tag = std::string(to_string(h.kind)) + " k=" + std::to_string(k) + " n=" + std::to_string(n) + " maximiser";
  note["deleted"] = to_json(h)["deleted"];
  note["q_hat"] = e.q_hat;
  note["Y1"] = y1.size();
  note["Y2"] = y2.size();
  note["Z1"] = z1.size();
  note["Z2"] = z2.size();
  constexpr double eps = 1e-8;
  // ordering (1): Y1 above Y2 u Z1
  if (!y1.empty() && !y2.empty()) {
    auto rest = y2;
    rest.insert(rest.end(), z1.begin(), z1.end());
    double lo = min_over(e, y1), hi = max_over(e, rest);
    note["ordering_1_gap"] = lo - hi;
    if (!(lo > hi - eps))
      col.fail(&h.graph, tag + ": min f over Y1 = " + fmt(lo) + " not above max f over Y2 u Z1 = " + fmt(hi));
  }
  // ordering (2): Z1 above Z2 u Y2
  if (!z2.empty() && !y2.empty()) {
    auto rest = z2;
    rest.insert(rest.end(), y2.begin(), y2.end());
    double lo = min_over(e, z1), hi = max_over(e, rest);
    note["ordering_2_gap"] = lo - hi;
    if (!(lo > hi - eps))
      col.fail(&h.graph, tag + ": min f over Z1 = " + fmt(lo) + " not above max f over Z2 u Y2 = " + fmt(hi));
  }
  // spread over the big clique
  std::vector<Vertex> big = h.Y;
  big.insert(big.end(), h.Z.begin(), h.Z.end());
  double spread = max_over(e, big) - min_over(e, big);
  double bound = (static_cast<double>(k) * k + 6.0 * k + 6) / (2 * (e.q_hat - n + 1));
  note["spread"] = spread;
  note["spread_bound"] = bound;
  if (spread > bound + eps)
    col.fail(&h.graph, tag + ": f spread over Y u Z = " + fmt(spread) + " > (k^2+6k+6)/(2(q-n+1)) = " + fmt(bound));
}

SuiteReport suite_q_upper(const SuiteParams &p) {
  SuiteReport r{"q-upper"};
  auto ks = ks_or(p, {2});
  record_common(r, p, p.mode == "sample" ? "sample" : "exhaustive");
  r.params["k"] = ks;
  Collector col;
  nlohmann::ordered_json maxima = nlohmann::ordered_json::array();
  for (int k : ks) {
    auto ns = ns_or(p, {thresholds(k).n_min});
    for (long long n : ns)
      for (FamilyClass c : {FamilyClass::S2, FamilyClass::T2}) {
        const double threshold = 2.0 * n - 2.0 * k;
        const Rational claim1 = static_cast<long>(2 * n - 2 * k - 1);
        std::string tag = std::string(to_string(c)) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
        std::mutex best_mutex;
        MemberCheck best;
        auto e = make_enumerator(c, static_cast<int>(n), k, p, 200);
        for_members(e, [&](const FamilyHandle &h) {
          col.add_cases(1);
          if (!is_connected(h.graph)) {
            col.fail(&h.graph, tag + ": member is disconnected");
            return;
          }
          auto est = perron_pair(h.graph);
          if (!est.converged)
            col.fail(&h.graph, tag + ": no convergence");
          if (!(est.hi < threshold))
            col.fail(&h.graph, tag + ": certified hi " + fmt(est.hi) + " not below 2n-2k = " + fmt(threshold));
          if (!(est.lo > threshold - 1))
            col.fail(&h.graph, tag + ": certified lo " + fmt(est.lo) + " not above 2n-2k-1");
          Rational rq = rayleigh_quotient_exact(h.graph, h.big_clique_indicator());
          if (!(rq > claim1))
            col.fail(&h.graph, tag + ": indicator Rayleigh " + fmt(rq) + " not above 2n-2k-1");
          double fx = max_over(est, h.X);
          double bx = k / (est.q_hat - k);
          if (fx > bx + 1e-8)
            col.fail(&h.graph, tag + ": max f over X = " + fmt(fx) + " > k/(q-k) = " + fmt(bx));
          std::lock_guard lock(best_mutex);
          bool better = !best.member || est.q_hat > best.q_hat ||
                        (est.q_hat == best.q_hat && h.deleted.edges() < best.member->deleted.edges());
          if (better) {
            best.q_hat = est.q_hat;
            best.member = h;
          }
        });
        if (!best.member)
          continue;
        nlohmann::ordered_json note;
        note["class"] = to_string(c);
        note["k"] = k;
        note["n"] = n;
        note["scan_max_q"] = best.q_hat;
        // maximiser over orbit representatives, when the class is small enough
        std::optional<FamilyHandle> maximiser = best.member;
        try {
          auto reps = orbit_representatives(c, static_cast<int>(n), k);
          double orbit_best = -INFINITY;
          std::vector<double> qs(reps.size());
          parallel_for(reps.size(), [&](std::size_t i) { qs[i] = perron_pair(reps[i].graph).q_hat; });
          for (std::size_t i = 0; i < reps.size(); ++i)
            if (qs[i] > orbit_best) {
              orbit_best = qs[i];
              maximiser = reps[i];
            }
          note["orbits"] = reps.size();
          note["orbit_max_q"] = orbit_best;
          if (orbit_best < best.q_hat - 1e-9)
            col.fail(&best.member->graph, tag + ": orbit maximum " + fmt(orbit_best) + " below scanned maximum " + fmt(best.q_hat));
          if (p.mode != "sample" && std::abs(orbit_best - best.q_hat) > 1e-9)
            col.fail(&best.member->graph, tag + ": orbit maximum " + fmt(orbit_best) + " differs from exhaustive maximum " + fmt(best.q_hat));
        } catch (const BudgetExceeded &) {
          note["orbits"] = "unavailable";
        }
        check_maximiser(*maximiser, col, note);
        maxima.push_back(note);
      }
  }
  col.finish(r);
  r.notes["maximisers"] = maxima;
  return r;
}

// ---------------------------------------------------------------- appendix

SuiteReport suite_appendix(const SuiteParams &p) {
  SuiteReport r{"appendix"};
  auto ks = ks_or(p, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  record_common(r, p, "exhaustive");
  r.params["k"] = ks;
  Collector col;
  std::set<int> branches;
  auto rows = nlohmann::ordered_json::array();
  for (int k : ks) {
    auto ns = ns_or(p, {thresholds(k).n_min, thresholds(k).n_min + 1000});
    for (long long n : ns) {
      col.add_cases(1);
      auto a = appendix_check(k, n);
      branches.insert(a.branch);
      std::string tag = "k=" + std::to_string(k) + " n=" + std::to_string(n);
      if (!a.hypothesis_met)
        col.fail(nullptr, tag + ": below n_min(k) = " + std::to_string(thresholds(k).n_min));
      if (!a.holds)
        col.fail(nullptr, tag + ": A1+A2+A3-A4 = " + fmt(a.A1 + a.A2 + a.A3 - a.A4) + " not below " +
                              std::to_string(a.bound));
      Rational gap = appendix_unexpanded_gap(k, n);
      Rational expanded = a.A1 + a.A2 + a.A3 - a.A4 - a.bound;
      if (gap != expanded)
        col.fail(nullptr, tag + ": expanded terms " + fmt(expanded) + " != unexpanded gap " + fmt(gap));
      rows.push_back({{"k", k}, {"n", n}, {"branch", a.branch}, {"primed", a.primed},
                      {"deleted", a.deleted}, {"bound", a.bound}, {"margin", a.margin.get_d()},
                      {"holds", a.holds}});
    }
  }
  col.finish(r);
  r.notes["branches"] = std::vector<int>(branches.begin(), branches.end());
  r.notes["rows"] = rows;
  return r;
}

// ---------------------------------------------------------------- corollary

SuiteReport suite_corollary(const SuiteParams &p) {
  SuiteReport r{"corollary"};
  auto ks = ks_or(p, {2, 3, 4, 5});
  auto ns = ns_or(p, {30, 60});
  record_common(r, p, "exhaustive");
  r.params["k"] = ks;
  r.params["n"] = ns;
  Collector col;
  auto rows = nlohmann::ordered_json::array();
  auto skipped = nlohmann::ordered_json::array();
  for (int k : ks)
    for (long long n : ns) {
      if (k == 2) {
        skipped.push_back({{"k", k}, {"n", n}, {"reason", "S_n^2 and T_n^2 are the same graph"}});
        continue;
      }
      col.add_cases(1);
      auto s = build_S(static_cast<int>(n), k), t = build_T(static_cast<int>(n), k);
      auto qs = perron_pair(s.graph), qt = perron_pair(t.graph);
      double floor = 2.0 * n - 2.0 * k;
      double gap_st = qs.lo - qt.hi, gap_t = qt.lo - floor;
      std::string tag = "k=" + std::to_string(k) + " n=" + std::to_string(n);
      if (!(gap_st > 1e-6))
        col.fail(&s.graph, tag + ": lo(q(S)) - hi(q(T)) = " + fmt(gap_st) + " not above 1e-6");
      if (!(gap_t > 1e-6))
        col.fail(&t.graph, tag + ": lo(q(T)) - (2n-2k) = " + fmt(gap_t) + " not above 1e-6");
      rows.push_back({{"k", k}, {"n", n}, {"q_S", qs.q_hat}, {"q_T", qt.q_hat}, {"gap_S_T", gap_st},
                      {"gap_T_floor", gap_t}});
    }
  col.finish(r);
  r.notes["rows"] = rows;
  r.notes["skipped"] = skipped;
  return r;
}

// ---------------------------------------------------------------- family-nonhc

SuiteReport suite_family_nonhc(const SuiteParams &p) {
  SuiteReport r{"family-nonhc"};
  auto ks = ks_or(p, {2, 3});
  auto ns = ns_or(p, parse_range("8..12"));
  record_common(r, p, "exhaustive");
  r.params["k"] = ks;
  r.params["n"] = ns;
  Collector col;
  for (int k : ks)
    for (long long n : ns) {
      if (2 * k > n || n > 64)
        continue;
      for (FamilyClass c : {FamilyClass::S1, FamilyClass::T1}) {
        ClassEnumerator e(c, static_cast<int>(n), k, Exhaustive{});
        for_members(e, [&](const FamilyHandle &h) {
          col.add_cases(1);
          auto a = is_hamilton_connected(h.graph);
          std::string tag = std::string(to_string(c)) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
          if (a.verdict == Verdict::Yes)
            col.fail(&h.graph, tag + ": oracle says Hamilton-connected");
          else if (a.verdict == Verdict::Timeout)
            col.fail(&h.graph, tag + ": oracle timeout");
        });
      }
    }
  col.finish(r);
  return r;
}

// ---------------------------------------------------------------- spectral-theorem

// Every certified outcome must log exactly one fired condition whose
// hypotheses all passed.
std::optional<std::string> audit(const Certificate &c) {
  if (c.outcome != Outcome::CertifiedHamiltonConnected)
    return std::nullopt;
  int fired = 0;
  for (const auto &t : c.trace)
    if (t.verdict == "fired") {
      ++fired;
      for (const auto &h : t.hypotheses)
        if (!h.pass)
          return "fired condition has a failing hypothesis: " + h.name;
    }
  if (fired != 1)
    return "certificate has " + std::to_string(fired) + " fired conditions";
  return std::nullopt;
}

SuiteReport suite_spectral_theorem(const SuiteParams &p) {
  SuiteReport r{"spectral-theorem"};
  auto ks = ks_or(p, {2});
  const std::uint64_t count = p.count ? p.count : 20;
  record_common(r, p, "sample");
  r.params["k"] = ks;
  r.params["count"] = count;
  Collector col;
  for (int k : ks) {
    auto ns = ns_or(p, {thresholds(k).n_min});
    for (long long n : ns) {
      CertifyConfig cfg;
      cfg.use_oracle = false;
      // class members, relabelled: first class must escape, second class
      // must stay uncertified
      for (FamilyClass c : {FamilyClass::S1, FamilyClass::T1, FamilyClass::S2, FamilyClass::T2}) {
        ClassEnumerator e(c, static_cast<int>(n), k, Sample{p.seed, count});
        std::vector<FamilyHandle> members;
        while (auto h = e.next())
          members.push_back(std::move(*h));
        auto seeds = case_seeds(p.seed ^ static_cast<std::uint64_t>(c), members.size());
        parallel_for(members.size(), [&](std::size_t i) {
          SplitMix64 rng(seeds[i]);
          Graph g = members[i].graph.relabeled(random_permutation(static_cast<int>(n), rng));
          col.add_cases(1);
          auto cert = certify(g, cfg);
          std::string tag = std::string(to_string(c)) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
          if (cert.outcome == Outcome::CertifiedHamiltonConnected)
            col.fail(&g, tag + ": family member certified Hamilton-connected via " +
                             explain(cert)["fired_condition"].get<std::string>());
          if (is_first_class(c) && cert.outcome != Outcome::ExceptionalFamily)
            col.fail(&g, tag + ": first-class member not reported exceptional");
        });
      }
      // dense graphs with minimum degree >= k: any certificate must audit
      auto seeds = case_seeds(p.seed + 1, count);
      parallel_for(count, [&](std::size_t i) {
        SplitMix64 rng(seeds[i]);
        long long total = n * (n - 1) / 2;
        long long drop = static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(2 * n)));
        Graph g = random_gnm(static_cast<int>(n), total - drop, rng);
        if (g.min_degree() < k)
          return;
        col.add_cases(1);
        auto cert = certify(g, cfg);
        if (auto why = audit(cert))
          col.fail(&g, *why);
        if (cert.fired == Condition::Spectral) {
          if (!cert.q_interval || cert.q_interval->first < 2.0 * n - 2.0 * cert.fired_k)
            col.fail(&g, "spectral condition fired without lo >= 2n-2k");
        }
      });
    }
  }
  col.finish(r);
  return r;
}

} // namespace

// ---------------------------------------------------------------- hunt

namespace {

struct Model {
  enum Kind { Gnp, Gnm, Dense, AllConnected } kind = Gnp;
  double p = 0.5;
  long long m = 0;
  int k = 2;
};

Model parse_model(const std::string &text) {
  Model m;
  auto arg = [&](const std::string &prefix) -> std::optional<std::string> {
    if (text.rfind(prefix + "(", 0) != 0 || text.back() != ')')
      return std::nullopt;
    return text.substr(prefix.size() + 1, text.size() - prefix.size() - 2);
  };
  try {
    if (text == "all-connected") {
      m.kind = Model::AllConnected;
    } else if (auto a = arg("gnp")) {
      m.kind = Model::Gnp;
      std::size_t used = 0;
      m.p = std::stod(*a, &used);
      if (used != a->size() || m.p < 0 || m.p > 1)
        throw BadParameters("");
    } else if (auto a2 = arg("gnm")) {
      m.kind = Model::Gnm;
      std::size_t used = 0;
      m.m = std::stoll(*a2, &used);
      if (used != a2->size() || m.m < 0)
        throw BadParameters("");
    } else if (auto a3 = arg("dense-above-edge-threshold")) {
      m.kind = Model::Dense;
      std::string s = *a3;
      if (s.rfind("k=", 0) == 0)
        s = s.substr(2);
      std::size_t used = 0;
      m.k = std::stoi(s, &used);
      if (used != s.size() || m.k < 2)
        throw BadParameters("");
    } else {
      throw BadParameters("");
    }
  } catch (const std::exception &) {
    throw BadParameters("unknown hunt model '" + text +
                        "' (expected gnp(p), gnm(m), dense-above-edge-threshold(k=K) or all-connected)");
  }
  return m;
}

// Dense model: half the trials are uniform graphs just above the edge
// threshold, half are relabelled hosts S_n^k / T_n^k with a few edges removed
// (still above the threshold), so both branches of the edge-count test run.
Graph dense_trial(int n, int k, SplitMix64 &rng) {
  const long long threshold = thresholds(k).edge(n);
  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  for (;;) {
    Graph g(1);
    if (rng.bounded(2) == 0) {
      long long span = std::min<long long>(total - threshold, 3LL * n);
      long long m = threshold + 1 + static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(span)));
      g = random_gnm(n, m, rng);
    } else {
      auto host = build_host(rng.bounded(2) ? FamilyKind::S : FamilyKind::T, n, k).graph;
      long long room = host.m() - (threshold + 1);
      if (room < 0)
        continue;
      auto es = host.edges();
      auto drop = random_subset(es.size(), static_cast<std::size_t>(rng.bounded(static_cast<std::uint64_t>(room + 1))), rng);
      std::vector<Edge> gone;
      for (auto i : drop)
        gone.push_back(es[i]);
      g = host.without_edges(gone).relabeled(random_permutation(n, rng));
    }
    if (g.min_degree() >= k)
      return g;
  }
}

} // namespace

SuiteReport hunt(int n, std::uint64_t trials, std::uint64_t seed, const std::string &model_text) {
  auto start = std::chrono::steady_clock::now();
  Model model = parse_model(model_text);
  SuiteReport r{"hunt"};
  r.params["n"] = n;
  r.params["model"] = model_text;
  r.params["seed"] = seed;
  r.params["trials"] = trials == 0 ? nlohmann::ordered_json("exhaustive") : nlohmann::ordered_json(trials);
  if (n < 1 || n > 64)
    throw BadParameters("hunt needs 1 <= n <= 64");
  if (model.kind == Model::AllConnected && (trials != 0 || n > 8))
    throw BadParameters("all-connected runs exhaustively and needs n <= 8");
  if (model.kind != Model::AllConnected && trials == 0)
    throw BadParameters("exhaustive trials need the all-connected model");
  if (model.kind == Model::Gnm && model.m > static_cast<long long>(n) * (n - 1) / 2)
    throw BadParameters("gnm edge count exceeds C(n,2)");
  if (model.kind == Model::Dense && n < 2 * model.k + 1)
    throw BadParameters("dense model needs n > 2k");

  std::vector<Graph> corpus;
  if (model.kind == Model::AllConnected)
    corpus = connected_graphs(n);
  const std::size_t count = model.kind == Model::AllConnected ? corpus.size() : trials;
  auto seeds = case_seeds(seed, count);
  Collector col;
  std::mutex tally_mutex;
  std::map<std::string, std::uint64_t> tally;
  CertifyConfig cfg;
  cfg.use_oracle = false;
  parallel_for(count, [&](std::size_t i) {
    Graph g(1);
    SplitMix64 rng(seeds[i]);
    switch (model.kind) {
    case Model::AllConnected:
      g = corpus[i];
      break;
    case Model::Gnp:
      g = random_gnp(n, model.p, rng);
      break;
    case Model::Gnm:
      g = random_gnm(n, model.m, rng);
      break;
    case Model::Dense:
      g = dense_trial(n, model.k, rng);
      break;
    }
    col.add_cases(1);
    auto cert = certify(g, cfg);
    auto truth = is_hamilton_connected(g);
    {
      std::lock_guard lock(tally_mutex);
      ++tally[to_string(cert.outcome)];
    }
    if (truth.verdict == Verdict::Timeout) {
      col.fail(&g, "oracle timeout");
      return;
    }
    const bool hc = truth.verdict == Verdict::Yes;
    const std::string label = std::string(to_string(cert.outcome)) + " (" +
                              explain(cert)["fired_condition"].get<std::string>() + ")";
    if (auto why = audit(cert))
      col.fail(&g, *why);
    switch (cert.outcome) {
    case Outcome::CertifiedHamiltonConnected:
    case Outcome::ExactYes:
      if (!hc)
        col.fail(&g, label + " but the oracle finds no Hamilton path between " +
                         std::to_string(truth.failing_pair->u) + " and " + std::to_string(truth.failing_pair->v));
      break;
    case Outcome::NotHamiltonConnected:
    case Outcome::ExactNo:
      if (hc)
        col.fail(&g, label + " but the oracle says Hamilton-connected");
      break;
    case Outcome::ExceptionalFamily:
      if (hc && cert.exceptional_confirmed)
        col.fail(&g, label + " confirmed, but the oracle says Hamilton-connected");
      break;
    default:
      break;
    }
    if (model.kind == Model::Dense && cert.outcome != Outcome::CertifiedHamiltonConnected &&
        cert.outcome != Outcome::ExceptionalFamily)
      col.fail(&g, "dense graph above the edge threshold left " + label);
  });
  col.finish(r);
  nlohmann::ordered_json t = nlohmann::ordered_json::object();
  for (const auto &[k, v] : tally)
    t[k] = v;
  r.notes["outcomes"] = t;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------- registry

namespace {

using SuiteFn = SuiteReport (*)(const SuiteParams &);

SuiteReport suite_hunt(const SuiteParams &p) {
  if (p.ns.size() != 1)
    throw BadParameters("hunt needs a single --n");
  std::string model = p.model.empty() ? "gnp(0.5)" : p.model;
  std::uint64_t trials = p.mode == "exhaustive" ? 0 : (p.count ? p.count : 1000);
  return hunt(static_cast<int>(p.ns[0]), trials, p.seed, model);
}

const std::vector<std::pair<std::string, SuiteFn>> &registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"eigen", suite_eigen},
      {"qbound", suite_qbound},
      {"ore", suite_ore},
      {"closure", suite_closure},
      {"kelmans", suite_kelmans},
      {"q-lower", suite_q_lower},
      {"q-upper", suite_q_upper},
      {"appendix", suite_appendix},
      {"corollary", suite_corollary},
      {"family-nonhc", suite_family_nonhc},
      {"spectral-theorem", suite_spectral_theorem},
      {"hunt", suite_hunt},
  };
  return r;
}

} // namespace

std::vector<std::string> suite_ids() {
  std::vector<std::string> out;
  for (const auto &[id, fn] : registry())
    out.push_back(id);
  return out;
}

SuiteReport run_suite(const std::string &id, const SuiteParams &params) {
  if (!params.mode.empty() && params.mode != "exhaustive" && params.mode != "sample")
    throw BadParameters("mode must be exhaustive or sample");
  for (const auto &[name, fn] : registry())
    if (name == id) {
      auto start = std::chrono::steady_clock::now();
      SuiteReport r = fn(params);
      r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      return r;
    }
  throw BadSuite("unknown suite '" + id + "'");
}

const std::vector<CoverageEntry> &coverage_table() {
  static const std::vector<CoverageEntry> table{
      {"eigen-equation of the Perron pair", "eigen"},
      {"Rayleigh principle lower bound", "q-lower"},
      {"edge-count upper bound on q", "qbound"},
      {"degree-sum condition for Hamilton-connectivity", "ore"},
      {"closure preserves Hamilton-connectivity", "closure"},
      {"Kelmans transformation does not decrease q", "kelmans"},
      {"edge-count theorem with host escape", "hunt"},
      {"first-class members reach 2n-2k", "q-lower"},
      {"second-class members stay below 2n-2k", "q-upper"},
      {"second-class lower bound 2n-2k-1", "q-upper"},
      {"eigenvector bound on X", "q-upper"},
      {"eigenvector ordering on the maximiser", "q-upper"},
      {"eigenvector spread on the maximiser", "q-upper"},
      {"closing inequality max A - min B", "appendix"},
      {"spectral theorem with class escape", "spectral-theorem"},
      {"host ordering q(S) > q(T) > 2n-2k", "corollary"},
      {"exceptional families are not Hamilton-connected", "family-nonhc"},
  };
  return table;
}

} // namespace hamq
