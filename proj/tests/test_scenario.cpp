#include "swampcast/scenario.hpp"

#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "swampcast/lattice.hpp"

using namespace swampcast;

namespace {

const char* kLineConfig = R"(# line relay demo
[placement]
kind = random-line
n = 12
length = 8
[radio]
r = 1
s = 0.5
gamma = 0.25
[algorithm]
name = B
[run]
id = lineb
seed = 11
)";

std::string config_error(const std::string& text) {
  try {
    (void)parse_scenario(text, "cfg");
    return "";
  } catch (const ConfigError& e) {
    return e.what();
  }
}

}  // namespace

TEST_CASE("a scenario config parses into a run description") {
  const Scenario sc = parse_scenario(kLineConfig, "cfg");
  CHECK(sc.placement.kind == PlacementSpec::Kind::RandomLine);
  CHECK(sc.placement.n == 12);
  CHECK(sc.placement.length == doctest::Approx(8.0));
  CHECK(sc.placement.dim == 1);
  CHECK(sc.radio.r == doctest::Approx(1.0));
  CHECK(sc.radio.s == doctest::Approx(0.5));
  CHECK(sc.radio.gamma == doctest::Approx(0.25));
  CHECK(sc.algorithm == AlgorithmId::B);
  CHECK(sc.source == 0);
  CHECK(sc.id == "lineb");
  CHECK(sc.seed == 11);
  CHECK_FALSE(sc.trace);
}

TEST_CASE("config errors carry file and line") {
  using doctest::Contains;
  CHECK_THROWS_WITH_AS(
      (void)parse_scenario("[placement]\nkindd = random-line\n", "cfg"),
      Contains("cfg:2:"), ConfigError);
  CHECK_THROWS_WITH_AS((void)parse_scenario("n = 4\n", "cfg"),
                       Contains("cfg:1:"), ConfigError);
  CHECK_THROWS_WITH_AS(
      (void)parse_scenario("[placement]\nn = twelve\n", "cfg"),
      Contains("cfg:2:"), ConfigError);
  CHECK_THROWS_WITH_AS(
      (void)parse_scenario("[placement]\nn = 4\nn = 5\n", "cfg"),
      Contains("duplicate"), ConfigError);
  CHECK_THROWS_WITH_AS((void)parse_scenario("[placement\n", "cfg"),
                       Contains("cfg:1:"), ConfigError);
  CHECK_THROWS_WITH_AS(
      (void)parse_scenario(
          "[placement]\nkind = random-line\nn = 4,8\nlength = 5\n"
          "[algorithm]\nname = B\n[radio]\ns = 0.5\ngamma = 0.25\n",
          "cfg"),
      Contains("sweep"), ConfigError);
  CHECK(config_error("[orbit]\n").find("unknown section") != std::string::npos);
}

TEST_CASE("explicit coordinate lines set the placement") {
  const Scenario sc = parse_scenario(
      "[placement]\n0.2\n0.9\n1.7\n[radio]\ns = 0.5\ngamma = 0.25\n"
      "[algorithm]\nname = B\n",
      "cfg");
  CHECK(sc.placement.kind == PlacementSpec::Kind::Explicit);
  CHECK(sc.placement.n == 3);
  CHECK(sc.placement.dim == 1);
  CHECK(sc.placement.points[2].x == doctest::Approx(1.7));

  CHECK_THROWS_AS((void)parse_scenario("[placement]\n0.2\n0.9 1.0\n", "cfg"),
                  ConfigError);
  CHECK_THROWS_AS(
      (void)parse_scenario("[placement]\n0.2\n0.9\nn = 3\nkind = random-line\n"
                           "[radio]\ns = 0.5\ngamma = 0.25\n[algorithm]\nname = B\n",
                           "cfg"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_scenario("[placement]\nn = 3\n0.2\n0.9\n"
                           "[radio]\ns = 0.5\ngamma = 0.25\n[algorithm]\nname = B\n",
                           "cfg"),
      ConfigError);
}

TEST_CASE("algorithm and placement must agree") {
  CHECK_THROWS_AS(
      (void)parse_scenario("[placement]\nkind = random-line\nn = 4\nlength = 3\n"
                           "[radio]\nr = 2\ns = 0\ngamma = 0.25\n[algorithm]\nname = A\n",
                           "cfg"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_scenario("[placement]\nkind = random-line\nn = 4\nlength = 3\n"
                           "[radio]\nr = 2\ns = 0.5\ngamma = 0.25\n[algorithm]\nname = B\n",
                           "cfg"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_scenario("[placement]\nkind = lattice-grid\nn = 15\n"
                           "[radio]\nr = 2\ns = 0\n[algorithm]\nname = A2\n",
                           "cfg"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_scenario("[placement]\nkind = random-line\nn = 4\nlength = 3\n"
                           "[radio]\ns = 0.5\ngamma = 0.25\n[algorithm]\nname = B\n"
                           "source = 4\n",
                           "cfg"),
      ConfigError);
}

TEST_CASE("sweeps expand in listed order with padded ids") {
  const auto list = parse_sweep(
      "[placement]\nkind = random-line\nn = 8, 12\nlength = 6\n"
      "[radio]\ns = 0.2, 0.5\ngamma = 0.1\n[algorithm]\nname = B\n"
      "[run]\nid = scn\nseed = 3\n",
      "cfg");
  REQUIRE(list.size() == 4);
  CHECK(list[0].id == "scn-1");
  CHECK(list[3].id == "scn-4");
  // The first listed key (n) varies slowest.
  CHECK(list[0].placement.n == 8);
  CHECK(list[0].radio.s == doctest::Approx(0.2));
  CHECK(list[1].placement.n == 8);
  CHECK(list[1].radio.s == doctest::Approx(0.5));
  CHECK(list[2].placement.n == 12);
  CHECK(list[2].radio.s == doctest::Approx(0.2));
  CHECK(list[3].placement.n == 12);
  CHECK(list[3].radio.s == doctest::Approx(0.5));
}

TEST_CASE("the environment seed overrides the config") {
  const Scenario sc = parse_scenario(kLineConfig, "cfg");
  CHECK(effective_seed(sc) == 11);
  setenv("SWAMPCAST_SEED", "99", 1);
  CHECK(effective_seed(sc) == 99);
  setenv("SWAMPCAST_SEED", "red", 1);
  CHECK_THROWS_AS((void)effective_seed(sc), ConfigError);
  unsetenv("SWAMPCAST_SEED");
  CHECK(effective_seed(sc) == 11);
}

TEST_CASE("generated placements round-trip through explicit configs") {
  const Scenario sc = parse_scenario(kLineConfig, "cfg");
  const Network net = build_network(sc);
  std::string cfg = "[placement]\n" + placement_text(net) +
                    "[radio]\ns = 0.5\ngamma = 0.25\n[algorithm]\nname = B\n";
  const Scenario back = parse_scenario(cfg, "cfg");
  const Network net2 = build_network(back);
  REQUIRE(net2.size() == net.size());
  for (int v = 0; v < net.size(); ++v) {
    CHECK(net2.positions()[v].x == net.positions()[v].x);
    CHECK(net2.neighbors_of(v) == net.neighbors_of(v));
  }
}

TEST_CASE("a verified line broadcast reports success") {
  const Scenario sc = parse_scenario(kLineConfig, "cfg");
  const VerificationReport rep = verify_scenario(sc);
  CHECK(rep.pass());
  CHECK(rep.informed_all);
  CHECK(rep.within_bound);
  CHECK(rep.links_match);
  CHECK(rep.reception_match);
  CHECK(rep.lemmas_pass);
  CHECK_FALSE(rep.impossible);
  CHECK(rep.n == 12);
  CHECK(rep.flood_depth > 0);
  CHECK(rep.rounds > 156);  // census first, then at least one sweep
  CHECK(rep.rounds <= rep.bound);
  CHECK(rep.detail.empty());
}

TEST_CASE("a doomed lattice instance passes only as a refusal") {
  const char* text =
      "[placement]\nkind = lattice-line\nn = 20\n"
      "[radio]\nr = 3\ns = 2\n[algorithm]\nname = A\n[run]\nid = dead\n";
  const Scenario sc = parse_scenario(text, "cfg");
  const VerificationReport rep = verify_scenario(sc);
  CHECK(rep.impossible);
  CHECK_FALSE(rep.informed_all);
  CHECK(rep.within_bound);  // the instance really is disconnected
  CHECK(rep.pass());
  CHECK(!rep.detail.empty());

  const char* ok =
      "[placement]\nkind = lattice-line\nn = 20\n"
      "[radio]\nr = 3\ns = 1\n[algorithm]\nname = A\n[run]\nid = alive\n";
  const VerificationReport good = verify_scenario(parse_scenario(ok, "cfg"));
  CHECK(good.informed_all);
  CHECK(good.completion_round <= line_bound(20, 3, 1));
  CHECK(good.pass());
}

TEST_CASE("sweep csv is stable and carries the documented columns") {
  const auto list = parse_sweep(
      "[placement]\nkind = random-line\nn = 10\nlength = 6\n"
      "[radio]\ns = 0.5\ngamma = 0.25, 0.5\n[algorithm]\nname = B\n"
      "[run]\nid = row\nseed = 21\n",
      "cfg");
  const std::string a = sweep_csv(list, true);
  const std::string b = sweep_csv(list, true);
  CHECK(a == b);
  std::istringstream in(a);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "id,n,r,s,gamma,D,rounds,bound,informed,within_bound,links,reception,"
        "lemmas,pass");
  std::string row;
  int rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    CHECK(row.substr(0, 4) == "row-");
    CHECK(row.back() == '1');  // every sweep row passes
  }
  CHECK(rows == 2);
}

TEST_CASE("trace output starts with a schema record") {
  const Scenario sc = parse_scenario(kLineConfig, "cfg");
  const ScenarioRun run = execute_scenario(sc, false, TraceMode::Lite);
  std::ostringstream out;
  write_trace_jsonl(out, sc, run.sim);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  const auto head = nlohmann::json::parse(line);
  CHECK(head.at("schema") == 1);
  CHECK(head.at("id") == "lineb");
  CHECK(head.at("algorithm") == "B");
  CHECK(head.at("rounds") == run.sim.rounds);
  int rows = 0;
  while (std::getline(in, line)) {
    const auto rec = nlohmann::json::parse(line);
    CHECK(rec.at("round") == rows + 1);
    CHECK(rec.contains("transmitters"));
    ++rows;
  }
  CHECK(rows == run.sim.rounds);
}

TEST_CASE("bracketing samples hold for separated placements") {
  const CheckResult res = check_closer_farther_samples(3, 200);
  CHECK(res.pass);
  CHECK(res.detail.empty());
}

TEST_CASE("the lemma battery holds on a fixed seed") {
  const auto outcomes = run_lemma_battery(7);
  REQUIRE(outcomes.size() == 9);
  for (const LemmaOutcome& o : outcomes) {
    CAPTURE(o.name);
    CAPTURE(o.detail);
    CHECK(o.pass);
  }
  CHECK(outcomes.front().name == "reception-rule-agreement");
  CHECK(outcomes.back().name == "closer-farther");
}
