#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swampcast/broadcast.hpp"
#include "swampcast/geometry.hpp"
#include "swampcast/oracle.hpp"
#include "swampcast/radio.hpp"

namespace swampcast {

// Raised on malformed configs; the message carries file:line.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class AlgorithmId { A, A2, B, B2 };

std::string algorithm_name(AlgorithmId a);

struct PlacementSpec {
  enum class Kind {
    LatticeLine,   // integer positions 0..n-1
    LatticeGrid,   // sqrt(n) x sqrt(n) integer grid
    RandomLine,    // n nodes on [0, length], connected, gamma-separated
    RandomPlane,   // n nodes in width x height, connected, gamma-separated
    Explicit,      // listed coordinates, one node per line
  };
  Kind kind = Kind::RandomLine;
  int n = 0;
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  std::vector<Point> points;  // Explicit only
  int dim = 1;
};

// Everything one run depends on. Two equal scenarios produce byte-identical
// traces and reports.
struct Scenario {
  std::string id = "scenario";
  PlacementSpec placement;
  RadioParams radio{1.0, 0.5, 0.25};
  AlgorithmId algorithm = AlgorithmId::B;
  int source = 0;
  std::uint64_t seed = 1;
  int horizon_mult = 16;
  bool trace = false;
};

struct VerificationReport {
  std::string id;
  int n = 0;
  int flood_depth = 0;         // source eccentricity of the link graph
  long long rounds = 0;        // rounds the run actually took
  int completion_round = -1;   // first round after which all were informed
  long long bound = 0;         // round budget the run is held to
  bool impossible = false;     // construction refused a provably dead instance
  bool informed_all = false;
  // Completion within `bound`. For impossible runs this instead records
  // whether the refusal was justified, i.e. the instance is disconnected.
  bool within_bound = false;
  bool links_match = false;      // neighbor sets vs. brute-force scan
  bool reception_match = false;  // per-round deliveries vs. brute-force replay
  bool lemmas_pass = false;      // structural audits for the placement family
  double runtime_seconds = 0.0;
  std::string detail;  // witness for the first failed sub-check

  // An impossible verdict passes when the instance really is disconnected;
  // otherwise every sub-check must hold.
  bool pass() const;
};

// Parses one scenario (no list-valued keys allowed). `filename` seeds error
// messages only.
Scenario parse_scenario(const std::string& text, const std::string& filename);

// Same format, but comma-separated values fan out into a cartesian product.
// Scenario ids get -<index> suffixes in generation order (first listed key
// varies slowest).
std::vector<Scenario> parse_sweep(const std::string& text,
                                  const std::string& filename);

// SWAMPCAST_SEED in the environment overrides the configured seed.
std::uint64_t effective_seed(const Scenario& sc);

Network build_network(const Scenario& sc);

// One line per node: "x" or "x y", consumable as an explicit placement.
std::string placement_text(const Network& net);

struct ScenarioRun {
  VerificationReport report;
  SimResult sim;
};

// Runs the scenario; with audit also replays every round against the
// brute-force oracle and runs the placement family's structural audits.
ScenarioRun execute_scenario(const Scenario& sc, bool audit,
                             TraceMode trace_mode = TraceMode::Lite);

VerificationReport run_scenario(const Scenario& sc);     // no oracle audit
VerificationReport verify_scenario(const Scenario& sc);  // full audit

// Header plus one row per scenario, in listed order:
// id,n,r,s,gamma,D,rounds,bound,informed,within_bound,links,reception,lemmas,pass
// `reports`, when given, receives the per-scenario reports in the same order.
std::string sweep_csv(const std::vector<Scenario>& scenarios, bool audit,
                      std::vector<VerificationReport>* reports = nullptr);

// First record {"schema":1,...}, then one record per simulated round.
void write_trace_jsonl(std::ostream& out, const Scenario& sc,
                       const SimResult& sim);

struct LemmaOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Samples separation-respecting placements inside one plane block, elects
// spokesmen among the occupied cells, and checks that every informed
// occupant left without a role is distance-bracketed by the spokesmen from
// any point outside the block: some spokesman is strictly closer to it and
// some spokesman strictly farther. Counts `trials` successful placements;
// returns the first counterexample as a failure witness.
CheckResult check_closer_farther_samples(std::uint64_t seed, int trials);

// The standing audit battery: reception-rule agreement, annulus coverage,
// partition structure on random placements, relay collision-freedom,
// spokesman coverage, and the closer/farther bracketing property.
std::vector<LemmaOutcome> run_lemma_battery(std::uint64_t seed);

}  // namespace swampcast
