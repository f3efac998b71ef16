#include "hamq/certifier.hpp"

#include <algorithm>
#include <sstream>

#include "hamq/error.hpp"
#include "hamq/spectral.hpp"
#include "hamq/transforms.hpp"

namespace hamq {

const char *to_string(Outcome o) {
  switch (o) {
  case Outcome::CertifiedHamiltonConnected:
    return "CertifiedHamiltonConnected";
  case Outcome::ExceptionalFamily:
    return "ExceptionalFamily";
  case Outcome::NotHamiltonConnected:
    return "NotHamiltonConnected";
  case Outcome::Inconclusive:
    return "Inconclusive";
  case Outcome::ExactYes:
    return "ExactYes";
  case Outcome::ExactNo:
    return "ExactNo";
  case Outcome::Timeout:
    return "Timeout";
  }
  return "?";
}

const char *to_string(Condition c) {
  switch (c) {
  case Condition::None:
    return "none";
  case Condition::Ore:
    return "Ore";
  case Condition::ClosureComplete:
    return "ClosureComplete";
  case Condition::EdgeCount:
    return "EdgeCount";
  case Condition::Spectral:
    return "Spectral";
  case Condition::HostSpectral:
    return "HostSpectral";
  case Condition::Oracle:
    return "Oracle";
  }
  return "?";
}

int exit_code(Outcome o, bool exceptional_confirmed) {
  switch (o) {
  case Outcome::CertifiedHamiltonConnected:
  case Outcome::ExactYes:
    return 0;
  case Outcome::ExactNo:
  case Outcome::NotHamiltonConnected:
    return 1;
  case Outcome::ExceptionalFamily:
    return exceptional_confirmed ? 1 : 2;
  case Outcome::Inconclusive:
    return 2;
  case Outcome::Timeout:
    return 3;
  }
  return 2;
}

namespace {

std::string num(long long v) { return std::to_string(v); }

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string condition_label(Condition c, int k) {
  return std::string(to_string(c)) + "(" + std::to_string(k) + ")";
}

Graph induced(const Graph &g, const std::vector<Vertex> &vs) {
  std::vector<Vertex> index(g.n(), -1);
  for (std::size_t i = 0; i < vs.size(); ++i)
    index[vs[i]] = static_cast<Vertex>(i);
  std::vector<Edge> es;
  for (const auto &e : g.edges())
    if (index[e.u] >= 0 && index[e.v] >= 0)
      es.emplace_back(index[e.u], index[e.v]);
  return Graph(static_cast<int>(vs.size()), es);
}

bool all_pass(const std::vector<Hypothesis> &hs) {
  return std::all_of(hs.begin(), hs.end(), [](const Hypothesis &h) { return h.pass; });
}

// Subgraphs of a host that is not Hamilton-connected inherit the failing
// pair; the host's Y pair is searched directly.
bool confirm_host(const FamilyWitness &w, int n, const CertifyConfig &cfg, std::string &how) {
  if (n > 64)
    return false;
  FamilyHandle host = build_host(w.kind, n, w.k);
  auto r = hamilton_path_between(host.graph, host.Y[0], host.Y[1], cfg.pair_budget);
  if (r.verdict != Verdict::No)
    return false;
  how = std::string("host ") + to_string(w.kind) + "_" + std::to_string(n) + "^" +
        std::to_string(w.k) + " has no Hamilton path between its Y vertices (exhaustive search, " +
        std::to_string(r.stats.nodes) + " nodes)";
  return true;
}

} // namespace

std::pair<double, double> q_interval(const Graph &g, double tol) {
  double lo = 0, hi = 0;
  for (const auto &comp : components(g)) {
    if (comp.size() < 2)
      continue;
    auto est = perron_pair(comp.size() == static_cast<std::size_t>(g.n()) ? g : induced(g, comp), tol);
    lo = std::max(lo, est.lo);
    hi = std::max(hi, est.hi);
  }
  return {lo, hi};
}

Certificate certify(const Graph &g, const CertifyConfig &cfg) {
  Certificate cert;
  const int n = g.n();
  cert.n = n;
  cert.delta = g.min_degree();
  cert.m = g.m();
  const int delta = cert.delta;

  auto fire = [&](Condition c, int k) {
    cert.outcome = Outcome::CertifiedHamiltonConnected;
    cert.fired = c;
    cert.fired_k = k;
    return cert;
  };
  auto note_exceptional = [&](const FamilyWitness &w, const std::string &source) {
    if (!cert.exceptional) {
      cert.exceptional = w;
      cert.exceptional_source = source;
    }
  };

  // (1) Ore-type degree condition
  {
    TraceEntry t{Condition::Ore};
    bool two = is_2_connected(g);
    long long worst = -1;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (!g.adjacent(u, v)) {
          long long s = g.degree(u) + g.degree(v);
          worst = worst < 0 ? s : std::min(worst, s);
        }
    t.hypotheses.push_back({"2-connected", "true", two ? "true" : "false", two});
    t.hypotheses.push_back({"min nonadjacent degree sum", ">= " + num(static_cast<long long>(n + 1)),
                            worst < 0 ? "no nonadjacent pair" : num(worst), worst < 0 || worst >= n + 1});
    bool ok = all_pass(t.hypotheses);
    t.verdict = ok ? "fired" : "failed";
    cert.trace.push_back(t);
    if (ok)
      return fire(Condition::Ore, 0);
  }

  // (2) closure
  {
    TraceEntry t{Condition::ClosureComplete};
    auto cl = closure(g, n + 1);
    bool complete = cl.graph.is_complete();
    t.hypotheses.push_back({"cl_{n+1}(G) complete", "true", complete ? "true" : "false", complete});
    t.notes["edges_added"] = cl.trace.added.size();
    t.verdict = complete ? "fired" : "failed";
    cert.trace.push_back(t);
    if (complete)
      return fire(Condition::ClosureComplete, 0);
  }

  if (n >= 2 && !is_connected(g)) {
    auto comps = components(g);
    Edge pair(comps[0][0], comps[1][0]);
    cert.outcome = Outcome::NotHamiltonConnected;
    cert.non_hc_pair = pair;
    cert.confirmation = "disconnected: no path between " + std::to_string(pair.u) + " and " +
                        std::to_string(pair.v);
    return cert;
  }

  // (3) edge-count condition with spanning-subgraph escape
  for (int k = delta; k >= 2; --k) {
    if (n < 11 * k)
      continue;
    TraceEntry t{Condition::EdgeCount, k};
    auto th = thresholds(k);
    t.hypotheses.push_back({"min degree", ">= " + num(static_cast<long long>(k)), num(static_cast<long long>(delta)), delta >= k});
    t.hypotheses.push_back({"order", ">= " + num(th.order_edge * 1LL), num(static_cast<long long>(n)), n >= th.order_edge});
    t.hypotheses.push_back({"edges", "> " + num(th.edge(n)), num(g.m()), g.m() > th.edge(n)});
    if (!all_pass(t.hypotheses)) {
      t.verdict = "failed";
      cert.trace.push_back(t);
      continue;
    }
    std::optional<FamilyWitness> found;
    bool budget_hit = false;
    for (FamilyKind kind : {FamilyKind::S, FamilyKind::T}) {
      try {
        auto w = spanning_subgraph_of(g, kind, k, cfg.embedding_budget);
        t.hypotheses.push_back({std::string("not a spanning subgraph of ") + to_string(kind) + "_n^k",
                                "true", w ? "false" : "true", !w});
        if (w && !found)
          found = w;
      } catch (const BudgetExceeded &) {
        budget_hit = true;
        t.hypotheses.push_back({std::string("not a spanning subgraph of ") + to_string(kind) + "_n^k",
                                "true", "budget exceeded", false});
      }
    }
    if (found) {
      t.verdict = "escaped";
      t.notes["embedding"] = to_json(*found);
      note_exceptional(*found, condition_label(Condition::EdgeCount, k));
    } else if (budget_hit) {
      t.verdict = "inconclusive";
    } else {
      t.verdict = "fired";
      cert.trace.push_back(t);
      return fire(Condition::EdgeCount, k);
    }
    cert.trace.push_back(t);
  }

  // (4) spectral condition with class-membership escape, (5) comparison against q(S_n^k)
  std::optional<std::pair<double, double>> q;
  for (int k = delta; k >= 2; --k) {
    auto th = thresholds(k);
    if (n < th.n_min)
      continue;
    if (!q) {
      q = q_interval(g, cfg.spectral_tol);
      cert.q_interval = q;
    }
    TraceEntry t{Condition::Spectral, k};
    const double threshold = static_cast<double>(th.spectral(n));
    t.hypotheses.push_back({"min degree", ">= " + num(static_cast<long long>(k)), num(static_cast<long long>(delta)), delta >= k});
    t.hypotheses.push_back({"order", ">= " + num(th.n_min), num(static_cast<long long>(n)), n >= th.n_min});
    bool above = q->first >= threshold;
    bool below = q->second < threshold;
    t.hypotheses.push_back({"certified q lower bound", ">= " + num(th.spectral(n)), num(q->first), above});
    for (FamilyClass c : {FamilyClass::S1, FamilyClass::T1, FamilyClass::S2, FamilyClass::T2}) {
      auto w = membership(g, c, k);
      t.notes[std::string("member_") + to_string(c)] = w.has_value();
      if (w && is_first_class(c))
        t.hypotheses.push_back({std::string("not in class ") + to_string(c), "true", "false", false});
    }
    if (!above) {
      t.verdict = below ? "failed" : "inconclusive";
      if (!below)
        t.notes["straddles"] = true;
      cert.trace.push_back(t);
      continue;
    }
    if (all_pass(t.hypotheses)) {
      t.verdict = "fired";
      cert.trace.push_back(t);
      return fire(Condition::Spectral, k);
    }
    for (FamilyClass c : {FamilyClass::S1, FamilyClass::T1})
      if (auto w = membership(g, c, k)) {
        t.verdict = "escaped";
        t.notes["membership"] = to_json(*w);
        note_exceptional(*w, condition_label(Condition::Spectral, k));
        break;
      }
    cert.trace.push_back(t);
  }
  for (int k = delta; k >= 2 && q; --k) {
    auto th = thresholds(k);
    if (n < th.n_min)
      continue;
    TraceEntry t{Condition::HostSpectral, k};
    auto host = perron_pair(build_S(n, k).graph, cfg.spectral_tol);
    t.hypotheses.push_back({"min degree", ">= " + num(static_cast<long long>(k)), num(static_cast<long long>(delta)), delta >= k});
    t.hypotheses.push_back({"order", ">= " + num(th.n_min), num(static_cast<long long>(n)), n >= th.n_min});
    t.hypotheses.push_back({"certified q lower bound", ">= q(S_n^k) upper bound " + num(host.hi),
                            num(q->first), q->first >= host.hi});
    if (!all_pass(t.hypotheses)) {
      t.verdict = "failed";
      cert.trace.push_back(t);
      continue;
    }
    auto w = membership(g, FamilyClass::S1, k);
    bool is_host = w && w->missing.empty();
    t.hypotheses.push_back({"G is not S_n^k", "true", is_host ? "false" : "true", !is_host});
    if (!is_host) {
      t.verdict = "fired";
      cert.trace.push_back(t);
      return fire(Condition::HostSpectral, k);
    }
    t.verdict = "escaped";
    note_exceptional(*w, condition_label(Condition::HostSpectral, k));
    cert.trace.push_back(t);
  }

  // (6) exact oracle
  if (cfg.use_oracle && n <= cfg.oracle_gate && n <= 64) {
    TraceEntry t{Condition::Oracle};
    auto ans = is_hamilton_connected(g, cfg.pair_budget);
    t.notes["nodes"] = ans.stats.nodes;
    t.verdict = ans.verdict == Verdict::Yes ? "yes" : ans.verdict == Verdict::No ? "no" : "timeout";
    cert.trace.push_back(t);
    if (ans.verdict == Verdict::Yes) {
      cert.outcome = Outcome::ExactYes;
      cert.fired = Condition::Oracle;
      return cert;
    }
    if (ans.verdict == Verdict::No) {
      cert.non_hc_pair = ans.failing_pair;
      cert.outcome = cert.exceptional ? Outcome::ExceptionalFamily : Outcome::ExactNo;
      cert.fired = Condition::Oracle;
      if (cert.exceptional) {
        cert.exceptional_confirmed = true;
        cert.confirmation = "exact oracle: no Hamilton path between " + std::to_string(ans.failing_pair->u) +
                            " and " + std::to_string(ans.failing_pair->v);
      }
      return cert;
    }
    if (!cert.exceptional) {
      cert.outcome = Outcome::Timeout;
      return cert;
    }
  }
  if (cert.exceptional) {
    cert.outcome = Outcome::ExceptionalFamily;
    std::string how;
    if (cert.exceptional_source.starts_with("EdgeCount") && confirm_host(*cert.exceptional, n, cfg, how)) {
      cert.exceptional_confirmed = true;
      cert.confirmation = how;
    }
    return cert;
  }
  cert.outcome = Outcome::Inconclusive;
  return cert;
}

nlohmann::ordered_json explain(const Certificate &cert) {
  nlohmann::ordered_json j;
  j["outcome"] = to_string(cert.outcome);
  j["fired_condition"] = cert.fired == Condition::None
                             ? std::string("none")
                             : (cert.fired_k > 0 ? condition_label(cert.fired, cert.fired_k)
                                                 : std::string(to_string(cert.fired)));
  nlohmann::ordered_json params;
  params["n"] = cert.n;
  params["delta"] = cert.delta;
  params["m"] = cert.m;
  if (cert.q_interval)
    params["q_interval"] = {cert.q_interval->first, cert.q_interval->second};
  else
    params["q_interval"] = nullptr;
  j["parameters"] = params;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  if (cert.exceptional) {
    w["family"] = to_json(*cert.exceptional);
    w["family"]["source"] = cert.exceptional_source;
    w["family"]["confirmed_not_hamilton_connected"] = cert.exceptional_confirmed;
  }
  if (cert.non_hc_pair)
    w["non_hamilton_pair"] = {cert.non_hc_pair->u, cert.non_hc_pair->v};
  if (!cert.confirmation.empty())
    w["confirmation"] = cert.confirmation;
  j["witnesses"] = w;
  auto trace = nlohmann::ordered_json::array();
  for (const auto &t : cert.trace) {
    nlohmann::ordered_json e;
    e["condition"] = t.k > 0 ? condition_label(t.condition, t.k) : std::string(to_string(t.condition));
    e["verdict"] = t.verdict;
    auto hs = nlohmann::ordered_json::array();
    for (const auto &h : t.hypotheses)
      hs.push_back({{"name", h.name}, {"required", h.required}, {"actual", h.actual}, {"pass", h.pass}});
    e["hypotheses"] = hs;
    if (!t.notes.empty())
      e["notes"] = t.notes;
    trace.push_back(e);
  }
  j["trace"] = trace;
  return j;
}

} // namespace hamq
