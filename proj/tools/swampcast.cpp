#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "swampcast/scenario.hpp"

namespace {

using swampcast::ConfigError;
using swampcast::Scenario;
using swampcast::ScenarioRun;
using swampcast::TraceMode;
using swampcast::VerificationReport;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << text;
}

const char* yn(bool v) { return v ? "yes" : "no"; }

void print_report(std::ostream& os, const VerificationReport& r, bool audited) {
  os << "id: " << r.id << "\n"
     << "nodes: " << r.n << "\n"
     << "flood depth: " << r.flood_depth << "\n";
  if (r.impossible) {
    os << "outcome: refused (" << r.detail << ")\n"
       << "refusal justified: " << yn(r.within_bound) << "\n";
  } else {
    os << "rounds: " << r.rounds << "\n"
       << "completion round: " << r.completion_round << "\n"
       << "bound: " << r.bound << "\n"
       << "informed all: " << yn(r.informed_all) << "\n"
       << "within bound: " << yn(r.within_bound) << "\n";
  }
  if (audited) {
    os << "links match: " << yn(r.links_match) << "\n"
       << "reception match: " << yn(r.reception_match) << "\n"
       << "lemmas hold: " << yn(r.lemmas_pass) << "\n";
    if (!r.impossible && !r.detail.empty()) os << "detail: " << r.detail << "\n";
  }
  os << "runtime: " << r.runtime_seconds << "s\n"
     << "result: " << (r.pass() ? "pass" : "FAIL") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic simulator and verifier for radio broadcast under swamping"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::string trace_path;
  int horizon = 0;
  std::uint64_t battery_seed = 1;
  app.add_option("--horizon-mult", horizon,
                 "override the relay sweep budget multiplier");

  auto* gen = app.add_subcommand("gen", "print the placement a config describes");
  gen->add_option("config", config, "scenario config file")->required();
  gen->add_option("--out", out_path, "write here instead of stdout");

  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("config", config, "scenario config file")->required();
  run->add_option("--trace", trace_path, "write a JSONL round trace to this file");

  auto* verify =
      app.add_subcommand("verify", "run one scenario with the full oracle audit");
  verify->add_option("config", config, "scenario config file")->required();

  auto* sweep = app.add_subcommand("sweep", "expand a sweep config and emit CSV");
  sweep->add_option("config", config, "sweep config file")->required();
  sweep->add_option("--out", out_path, "write here instead of stdout");

  auto* lemmas = app.add_subcommand("check-lemmas", "run the standing audit battery");
  lemmas->add_option("--seed", battery_seed, "battery seed (default 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const Scenario sc = swampcast::parse_scenario(slurp(config), config);
      write_out(out_path, swampcast::placement_text(swampcast::build_network(sc)));
      return 0;
    }
    if (run->parsed()) {
      Scenario sc = swampcast::parse_scenario(slurp(config), config);
      if (horizon > 0) sc.horizon_mult = horizon;
      const bool want_trace = !trace_path.empty() || sc.trace;
      const ScenarioRun r = swampcast::execute_scenario(
          sc, false, want_trace ? TraceMode::Full : TraceMode::Off);
      if (!trace_path.empty()) {
        std::ofstream f(trace_path);
        if (!f) throw ConfigError(trace_path + ": cannot open for writing");
        swampcast::write_trace_jsonl(f, sc, r.sim);
        print_report(std::cout, r.report, false);
      } else if (sc.trace) {
        // Trace goes to stdout so it can be piped; the summary moves aside.
        swampcast::write_trace_jsonl(std::cout, sc, r.sim);
        print_report(std::cerr, r.report, false);
      } else {
        print_report(std::cout, r.report, false);
      }
      return r.report.pass() ? 0 : 1;
    }
    if (verify->parsed()) {
      Scenario sc = swampcast::parse_scenario(slurp(config), config);
      if (horizon > 0) sc.horizon_mult = horizon;
      const VerificationReport rep = swampcast::verify_scenario(sc);
      print_report(std::cout, rep, true);
      return rep.pass() ? 0 : 1;
    }
    if (sweep->parsed()) {
      std::vector<Scenario> list = swampcast::parse_sweep(slurp(config), config);
      if (horizon > 0)
        for (Scenario& sc : list) sc.horizon_mult = horizon;
      std::vector<VerificationReport> reports;
      const std::string csv = swampcast::sweep_csv(list, true, &reports);
      write_out(out_path, csv);
      bool all = true;
      for (const VerificationReport& rep : reports) all = all && rep.pass();
      if (!all) std::cerr << "sweep: some scenarios failed\n";
      return all ? 0 : 1;
    }
    if (lemmas->parsed()) {
      bool all = true;
      for (const swampcast::LemmaOutcome& o : swampcast::run_lemma_battery(battery_seed)) {
        std::cout << (o.pass ? "ok   " : "FAIL ") << o.name;
        if (!o.detail.empty()) std::cout << ": " << o.detail;
        std::cout << "\n";
        all = all && o.pass;
      }
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
