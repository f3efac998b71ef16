// hamq: command-line front end.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "hamq/certifier.hpp"
#include "hamq/error.hpp"
#include "hamq/families.hpp"
#include "hamq/graph.hpp"
#include "hamq/spectral.hpp"
#include "hamq/suites.hpp"

using namespace hamq;

namespace {

constexpr int kInputError = 4;

Graph read_graph(const std::string &path) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw ParseError("cannot open '" + path + "'", 0);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_graph_sniff(text);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_spectrum(const std::string &input, double tol, bool json) {
  Graph g = read_graph(input);
  auto e = perron_pair(g, tol);
  Rational bound = upper_bound_edge_count(g);
  if (json) {
    nlohmann::ordered_json j{{"n", g.n()},          {"m", g.m()},         {"q_hat", e.q_hat},
                             {"lo", e.lo},          {"hi", e.hi},         {"residual", e.residual},
                             {"iterations", e.iterations}, {"converged", e.converged},
                             {"edge_count_bound", bound.get_str()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "n = " << g.n() << ", m = " << g.m() << "\n"
              << "q_hat = " << fmt(e.q_hat) << "\n"
              << "enclosure = [" << fmt(e.lo) << ", " << fmt(e.hi) << "]\n"
              << "residual = " << fmt(e.residual) << "\n"
              << "iterations = " << e.iterations << (e.converged ? "" : " (not converged)") << "\n"
              << "2m/(n-1)+n-2 = " << bound.get_str() << " (" << fmt(bound.get_d()) << ")\n";
  }
  return 0;
}

int cmd_certify(const std::string &input, const CertifyConfig &cfg, bool json) {
  Graph g = read_graph(input);
  auto cert = certify(g, cfg);
  auto j = explain(cert);
  if (json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_string(cert.outcome) << " (" << j["fired_condition"].get<std::string>() << ")\n";
    if (!cert.exceptional_source.empty())
      std::cout << "exceptional via " << cert.exceptional_source
                << (cert.exceptional_confirmed ? ", confirmed: " + cert.confirmation : ", unconfirmed") << "\n";
    if (cert.non_hc_pair)
      std::cout << "no Hamilton path between " << cert.non_hc_pair->u << " and " << cert.non_hc_pair->v << "\n";
  }
  return cert.exit_code();
}

struct FamilyArgs {
  std::string kind;
  int n = 0;
  int k = 0;
  std::string cls;
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  std::size_t count = 10;
  std::string sidecar;
};

int cmd_family(const FamilyArgs &a) {
  FamilyKind kind;
  if (a.kind == "S")
    kind = FamilyKind::S;
  else if (a.kind == "T")
    kind = FamilyKind::T;
  else
    throw BadParameters("family kind must be S or T");
  auto sidecar = nlohmann::ordered_json::array();
  auto emit = [&](const FamilyHandle &h) {
    std::cout << emit_graph6(h.graph) << "\n";
    if (!a.sidecar.empty())
      sidecar.push_back(to_json(h));
  };
  if (a.cls.empty()) {
    emit(build_host(kind, a.n, a.k));
  } else {
    FamilyClass c = parse_family_class(a.cls);
    if (kind_of(c) != kind)
      throw BadParameters("class " + a.cls + " does not belong to kind " + a.kind);
    if (a.mode != "exhaustive" && a.mode != "sample")
      throw BadParameters("mode must be exhaustive or sample");
    auto e = a.mode == "sample" ? ClassEnumerator(c, a.n, a.k, Sample{a.seed, a.count})
                                : ClassEnumerator(c, a.n, a.k, Exhaustive{});
    for_each_member(e, emit);
  }
  if (!a.sidecar.empty()) {
    std::ofstream out(a.sidecar);
    if (!out)
      throw BadParameters("cannot write '" + a.sidecar + "'");
    out << sidecar.dump(2) << "\n";
  }
  return 0;
}

int report(const SuiteReport &r, bool timing) {
  std::cout << r.to_json(timing).dump(2) << "\n";
  return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Signless-Laplacian Hamilton-connectivity toolkit"};
  app.require_subcommand(1);

  std::string input;
  double tol = kDefaultTol;
  bool json = false;
  auto *spectrum = app.add_subcommand("spectrum", "q(G) estimate with certified enclosure");
  spectrum->add_option("input", input, "graph6 or edge-list file (default stdin)");
  spectrum->add_option("--tol", tol, "enclosure width target")->check(CLI::PositiveNumber);
  spectrum->add_flag("--json", json, "JSON output");

  CertifyConfig cfg;
  auto *certify_cmd = app.add_subcommand("certify", "decide Hamilton-connectivity via the sufficient conditions");
  certify_cmd->add_option("input", input, "graph6 or edge-list file (default stdin)");
  certify_cmd->add_option("--oracle-gate", cfg.oracle_gate, "run the exact oracle when n is at most this");
  certify_cmd->add_option("--budget", cfg.pair_budget, "oracle search-node budget per pair");
  certify_cmd->add_flag("--json", json, "print the JSON certificate");

  FamilyArgs fam;
  auto *family = app.add_subcommand("family", "emit S_n^k / T_n^k hosts or class members as graph6");
  family->add_option("kind", fam.kind, "S or T")->required();
  family->add_option("--n", fam.n, "order")->required();
  family->add_option("--k", fam.k, "parameter")->required();
  family->add_option("--class", fam.cls, "S1, S2, T1 or T2 (default: host only)");
  family->add_option("--mode", fam.mode, "exhaustive or sample");
  family->add_option("--seed", fam.seed, "sampling seed");
  family->add_option("--count", fam.count, "sample size");
  family->add_option("--sidecar", fam.sidecar, "write member JSON to this file");

  std::string suite, k_range, n_range, trials = "1000", model;
  SuiteParams sp;
  bool timing = false;
  auto *verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite id")->required();
  verify->add_option("--k", k_range, "k values, e.g. 2..12 or 2,3");
  verify->add_option("--n", n_range, "n values, e.g. 8..12");
  verify->add_option("--mode", sp.mode, "exhaustive or sample");
  verify->add_option("--count", sp.count, "sample size");
  verify->add_option("--seed", sp.seed, "seed");
  verify->add_option("--model", sp.model, "hunt model");
  verify->add_flag("--timing", timing, "include elapsed_ms");

  int hunt_n = 0;
  std::uint64_t hunt_seed = 1;
  auto *hunt_cmd = app.add_subcommand("hunt", "compare certify against the exact oracle on generated graphs");
  hunt_cmd->add_option("--n", hunt_n, "order")->required();
  hunt_cmd->add_option("--trials", trials, "trial count or 'exhaustive'");
  hunt_cmd->add_option("--seed", hunt_seed, "seed");
  hunt_cmd->add_option("--model", model, "gnp(p), gnm(m), dense-above-edge-threshold(k=K), all-connected")
      ->required();
  hunt_cmd->add_flag("--timing", timing, "include elapsed_ms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*spectrum)
      return cmd_spectrum(input, tol, json);
    if (*certify_cmd)
      return cmd_certify(input, cfg, json);
    if (*family)
      return cmd_family(fam);
    if (*verify) {
      if (!k_range.empty())
        for (long long k : parse_range(k_range))
          sp.ks.push_back(static_cast<int>(k));
      if (!n_range.empty())
        sp.ns = parse_range(n_range);
      return report(run_suite(suite, sp), timing);
    }
    if (*hunt_cmd) {
      std::uint64_t t = 0;
      if (trials != "exhaustive") {
        try {
          std::size_t used = 0;
          t = std::stoull(trials, &used);
          if (used != trials.size() || t == 0)
            throw BadParameters("");
        } catch (const std::exception &) {
          throw BadParameters("--trials must be a positive count or 'exhaustive'");
        }
      }
      return report(hunt(hunt_n, t, hunt_seed, model), timing);
    }
  } catch (const Error &e) {
    std::cerr << "hamq: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
