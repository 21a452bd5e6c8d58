#pragma once

#include <stdexcept>
#include <vector>

#include "swampcast/radio.hpp"

namespace swampcast {

// Raised when the requested broadcast provably cannot exist (disconnected
// link graph, or the integer geometry rules it out).
struct ImpossibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the planner cannot produce a schedule within its round budget.
// This is a planner admission of defeat, not a claim of impossibility.
struct PlanningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rungs per ladder: x = ceil(r / (r - (s+1))). Needs r - s >= 2.
int ladder_steps(int r, int s);

// Budget formulas. The degenerate r=1, s=0 case divides by max(1, r-(s+1)).
long long line_bound(int n, int r, int s);   // floor(n/r) + 3(x+1)
long long grid_bound(int n, int r, int s);   // 4 floor(sqrt(n)/r) + 12(x+1)

// Two-transmission ladder anchored at an informed node k: rung i fires
// position k + i(r-s-1) and then that position plus r. x rungs cover
// [k, k+2r-1]; the starred variant appends one more rung.
struct LocalScheme {
  int r = 0, s = 0, k = 0;
  bool starred = false;
  int steps = 0;
  std::vector<int> transmitters;  // entry t is the round-(t+1) transmitter

  int near_lo() const { return k; }
  int near_hi() const { return k + r - 1; }
  int far_lo() const { return k + r; }
  int far_hi() const { return k + 2 * r - 1; }
};

LocalScheme make_local_scheme(int r, int s, int k, bool starred);

// Simulates the scheme on a lattice line of n nodes with only k informed.
SimResult run_local_scheme(int n, int r, int s, int k, bool starred,
                           TraceMode mode = TraceMode::Full);

// Transmission schedule for one lattice line. rounds[t] lists the absolute
// node indices that fire in round t+1; every listed node is informed by then.
struct LinePlan {
  int n = 0, r = 0, s = 0, source = 0, halo = 0;
  long long bound = 0;
  std::vector<std::vector<int>> rounds;

  int length() const { return static_cast<int>(rounds.size()); }
};

// Builds a verified broadcast schedule from `source`. Every position ends up
// actually receiving the message, within line_bound(n, r, s) rounds, with no
// collision-blocked receptions. halo > 0 additionally guarantees, for every
// position p and lateral offset e in [1, halo], a round in which exactly one
// transmitter t satisfies s^2 < (p-t)^2 + e^2 <= r^2 and none is closer:
// a listener riding e lattice units beside the line is also served. The
// plane construction runs its column schedules with halo set to the band
// radius so off-column nodes hear too.
LinePlan plan_line_broadcast(int n, int r, int s, int source, int halo);

// Column layout and full schedule for the square-lattice broadcast: a row
// sweep through the source's row, then three time-disjoint groups of
// vertical sweeps whose bands cover every column.
struct GridPlan {
  int n = 0, m = 0, r = 0, s = 0, source = 0, d = 0;
  long long bound = 0;
  std::vector<int> phase_columns[3];
  std::vector<std::vector<int>> rounds;  // grid node ids per round

  int length() const { return static_cast<int>(rounds.size()); }
};

GridPlan plan_grid_broadcast(int n, int r, int s, int source);

// End-to-end executions on lattice networks (gamma = 1).
SimResult run_algorithm_a(int n, int r, int s, int source,
                          TraceMode mode = TraceMode::Lite);
SimResult run_algorithm_a2(int n, int r, int s, int source,
                           TraceMode mode = TraceMode::Lite);

}  // namespace swampcast
