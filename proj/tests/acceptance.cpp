// Release gate. Each numbered check prints one [PASS]/[FAIL] line; the
// binary exits nonzero if any check fails. Budgets and tolerances are pinned
// here on purpose: a run that drifts past them is a regression, not noise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "swampcast/broadcast.hpp"
#include "swampcast/discovery.hpp"
#include "swampcast/geometry.hpp"
#include "swampcast/lattice.hpp"
#include "swampcast/oracle.hpp"
#include "swampcast/partition.hpp"
#include "swampcast/scenario.hpp"

namespace {

using namespace swampcast;
using Clock = std::chrono::steady_clock;

constexpr double kCoverageTol = 1e-9;      // chord arithmetic slack
constexpr double kDistanceTol = 1e-9;      // position bookkeeping slack
constexpr double kMinFitR2 = 0.99;         // chain scaling linearity
constexpr double kReceptionBudget = 10.0;  // seconds
constexpr double kLineGridBudget = 60.0;   // seconds
constexpr double kPlaneBudget = 300.0;     // seconds

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(4);
  o << v;
  return o.str();
}

// The nine (gamma, s) pairs every random-placement check cycles through,
// with extents the placement sampler handles reliably.
struct Combo {
  double gamma, s, line_len, plane_side;
};
const Combo kCombos[] = {
    {0.1, 0.2, 6.0, 2.5}, {0.2, 0.2, 6.0, 2.5}, {0.5, 0.2, 6.0, 2.5},
    {0.1, 0.5, 6.0, 2.5}, {0.2, 0.5, 6.0, 2.5}, {0.5, 0.5, 6.0, 2.5},
    {0.1, 0.8, 8.5, 3.0}, {0.2, 0.8, 8.5, 3.0}, {0.5, 0.8, 8.5, 3.0},
};

std::map<PartitionLabel, int> label_map(const Network& net, const Partition& part) {
  std::map<PartitionLabel, int> out;
  for (int v = 0; v < net.size(); ++v) out[part.label_of(net.position(v))] = v;
  return out;
}

struct Fit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

Fit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  Fit f;
  f.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / m;
  const double ybar = sy / m;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.intercept + f.slope * xs[i]);
    ss_res += e * e;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

// 1. Engine reception vs the brute-force oracle on randomized rounds.
bool check_reception(std::string& note) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  int rounds = 0, mismatches = 0, nets = 0;
  while (rounds < 1000) {
    const Combo& c = kCombos[nets % 9];
    const RadioParams radio{1.0, c.s, c.gamma};
    const Network net =
        (nets % 2 == 0)
            ? random_line(c.line_len, 10, radio, 300 + nets)
            : random_plane(c.plane_side, c.plane_side, 10, radio, 300 + nets);
    ++nets;
    for (int t = 0; t < 10 && rounds < 1000; ++t, ++rounds) {
      std::vector<int> tx;
      for (int v = 0; v < net.size(); ++v)
        if (uniform_int(rng, 0, 3) == 0) tx.push_back(v);
      const RoundDeliveries a = deliveries_for_round(net, tx);
      const RoundDeliveries b = oracle_deliveries(net, tx);
      if (a.heard_from != b.heard_from || a.collision_nodes != b.collision_nodes ||
          a.swamp_nodes != b.swamp_nodes)
        ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  note = std::to_string(rounds) + " rounds on " + std::to_string(nets) +
         " nets, " + std::to_string(mismatches) + " mismatches, " + fmt(secs) + "s";
  return mismatches == 0 && nets >= 100 && secs < kReceptionBudget;
}

// 2. A one-unit annulus traps the lattice in the source's residue class:
//    the construction must refuse, and flooding must confirm the trap.
bool check_residue_refusal(std::string& note) {
  int cases = 0;
  for (int r = 2; r <= 10; ++r) {
    const int s = r - 1;
    for (int n = 1; n <= 100; ++n) {
      ++cases;
      const Network net = lattice_line(
          n, RadioParams{static_cast<double>(r), static_cast<double>(s), 1.0});
      const FloodingResult flood = flooding_baseline(net, 0);
      for (int v = 0; v < n; ++v) {
        const bool reachable = flood.hops[v] >= 0;
        if (reachable != (v % r == 0)) {
          note = "component mismatch at n=" + std::to_string(n) +
                 " r=" + std::to_string(r) + " node " + std::to_string(v);
          return false;
        }
      }
      try {
        (void)run_algorithm_a(n, r, s, 0, TraceMode::Off);
        note = "no refusal at n=" + std::to_string(n) + " r=" + std::to_string(r);
        return false;
      } catch (const ImpossibilityError&) {
      }
    }
  }
  note = std::to_string(cases) + " instances refused with exact components";
  return true;
}

// 3. Line broadcast over the whole parameter grid: everyone informed, inside
//    the budget, no collision-blocked receptions. Corners of the grid where
//    a short lattice leaves middle nodes without any link are refused by the
//    construction; a refusal only counts when flooding confirms the
//    disconnection.
bool check_line_broadcast(std::string& note) {
  const auto t0 = Clock::now();
  int runs = 0, refusals = 0;
  for (int n = 8; n <= 200; ++n) {
    for (int r = 2; r <= 8; ++r) {
      for (int s = 0; s + 2 <= r; ++s) {
        ++runs;
        SimResult res;
        try {
          res = run_algorithm_a(n, r, s, 0, TraceMode::Off);
        } catch (const ImpossibilityError&) {
          ++refusals;
          const Network net = lattice_line(
              n, RadioParams{static_cast<double>(r), static_cast<double>(s), 1.0});
          if (flooding_baseline(net, 0).connected) {
            note = "refused a connected line: n=" + std::to_string(n) +
                   " r=" + std::to_string(r) + " s=" + std::to_string(s);
            return false;
          }
          continue;
        }
        const long long bound = line_bound(n, r, s);
        if (res.informed_count != n || res.completion_round < 0 ||
            res.completion_round > bound || res.collision_blocked_total != 0) {
          note = "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                 " s=" + std::to_string(s) + " informed " +
                 std::to_string(res.informed_count) + "/" + std::to_string(n) +
                 " completion " + std::to_string(res.completion_round) + "/" +
                 std::to_string(bound) + " collisions " +
                 std::to_string(res.collision_blocked_total);
          return false;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  note = std::to_string(runs) + " runs, " + std::to_string(refusals) +
         " earned refusals, " + fmt(secs) + "s";
  return secs < kLineGridBudget;
}

// 4. A ladder anchored at an informed node covers its near and far zones.
bool check_ladder_zones(std::string& note) {
  int runs = 0;
  for (int r = 2; r <= 8; ++r) {
    for (int s = 0; s + 2 <= r; ++s) {
      for (const int k : {0, 4}) {
        ++runs;
        const LocalScheme sch = make_local_scheme(r, s, k, true);
        const int n = sch.transmitters.back() + r + 1;
        const SimResult res = run_local_scheme(n, r, s, k, true, TraceMode::Off);
        for (int v = sch.near_lo(); v <= sch.far_hi(); ++v) {
          if (res.informed_round[v] < 0) {
            note = "r=" + std::to_string(r) + " s=" + std::to_string(s) +
                   " k=" + std::to_string(k) + " missed node " + std::to_string(v);
            return false;
          }
        }
      }
    }
  }
  note = std::to_string(runs) + " schemes covered both zones";
  return true;
}

// 5. Grid broadcast: refusals only on genuinely disconnected grids;
//    otherwise everyone informed within the budget, and same-round
//    transmitters pairwise farther apart than twice the range.
bool check_grid_broadcast(std::string& note) {
  int runs = 0, refusals = 0;
  for (const int n : {16, 36, 64, 100, 144}) {
    for (int r = 2; r <= 8; ++r) {
      for (int s = 0; s + 2 <= r; ++s) {
        ++runs;
        const Network net = lattice_grid(
            n, RadioParams{static_cast<double>(r), static_cast<double>(s), 1.0});
        SimResult res;
        try {
          res = run_algorithm_a2(n, r, s, 0, TraceMode::Lite);
        } catch (const ImpossibilityError&) {
          ++refusals;
          if (flooding_baseline(net, 0).connected) {
            note = "refused a connected grid: n=" + std::to_string(n) +
                   " r=" + std::to_string(r) + " s=" + std::to_string(s);
            return false;
          }
          continue;
        }
        if (res.informed_count != n || res.completion_round < 0 ||
            res.completion_round > grid_bound(n, r, s)) {
          note = "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                 " s=" + std::to_string(s) + " informed " +
                 std::to_string(res.informed_count) + " completion " +
                 std::to_string(res.completion_round);
          return false;
        }
        for (const RoundTrace& row : res.trace) {
          for (std::size_t i = 0; i < row.transmitters.size(); ++i) {
            for (std::size_t j = i + 1; j < row.transmitters.size(); ++j) {
              const double d = dist(net.position(row.transmitters[i]),
                                    net.position(row.transmitters[j]));
              if (!(d > 2.0 * r)) {
                note = "round " + std::to_string(row.round) +
                       " transmitters only " + fmt(d) + " apart at n=" +
                       std::to_string(n) + " r=" + std::to_string(r) +
                       " s=" + std::to_string(s);
                return false;
              }
            }
          }
        }
      }
    }
  }
  note = std::to_string(runs) + " grids, " + std::to_string(refusals) +
         " earned refusals";
  return true;
}

// 6. Per-line coverage of a transmission annulus never drops below r - s.
bool check_annulus_floor(std::string& note) {
  int cases = 0;
  for (int r = 2; r <= 10; ++r) {
    for (int s = 0; s + 2 <= r; ++s) {
      const int dmax = static_cast<int>(std::floor(std::sqrt(3.0) * r / 2.0));
      for (int d = 0; d <= dmax; ++d) {
        ++cases;
        const double cov = annulus_line_coverage(r, s, d);
        if (cov < r - s - kCoverageTol) {
          note = "r=" + std::to_string(r) + " s=" + std::to_string(s) +
                 " dist=" + std::to_string(d) + " coverage " + fmt(cov);
          return false;
        }
      }
    }
  }
  note = std::to_string(cases) + " chords at tolerance 1e-9";
  return true;
}

// 7. The census learns exactly the link neighborhood, in exactly one slot
//    calendar of rounds.
bool check_census_exact(std::string& note) {
  int nets = 0;
  for (int family = 0; family < 2; ++family) {
    for (int i = 0; i < 50; ++i) {
      const Combo& c = kCombos[i % 9];
      const RadioParams radio{1.0, c.s, c.gamma};
      const bool plane = family == 1;
      const Network net =
          plane ? random_plane(c.plane_side, c.plane_side, 10, radio, 500 + 50 * family + i)
                : random_line(c.line_len, 10, radio, 500 + 50 * family + i);
      const Partition part =
          plane ? Partition::plane(c.s, c.gamma, c.plane_side, c.plane_side)
                : Partition::line(c.s, c.gamma, c.line_len);
      ++nets;
      const DiscoveryOutcome out = run_procedure_d(net, part, TraceMode::Off);
      if (out.sim.rounds != part.slots()) {
        note = "census ran " + std::to_string(out.sim.rounds) + " rounds, wanted " +
               std::to_string(part.slots());
        return false;
      }
      for (int u = 0; u < net.size(); ++u) {
        const std::vector<int>& nbrs = net.neighbors_of(u);
        if (out.knowledge[u].size() != nbrs.size()) {
          note = "node " + std::to_string(u) + " learned " +
                 std::to_string(out.knowledge[u].size()) + " of " +
                 std::to_string(nbrs.size()) + " neighbors (net " +
                 std::to_string(nets) + ")";
          return false;
        }
        for (const int w : nbrs) {
          if (!out.knowledge[u].contains(part.label_of(net.position(w)))) {
            note = "node " + std::to_string(u) + " missed neighbor " +
                   std::to_string(w) + " (net " + std::to_string(nets) + ")";
            return false;
          }
        }
      }
    }
  }
  note = std::to_string(nets) + " censuses matched their link neighborhoods";
  return true;
}

// 8. Full discovery: every node within unit distance becomes known, nothing
//    else creeps in, and the schedule length is exactly slots*(1+slots).
bool check_full_discovery(std::string& note) {
  struct Family {
    bool plane;
    double s, gamma, extent;
    int n;
  };
  const Family families[] = {
      {false, 0.5, 0.25, 8.0, 12},
      {true, 0.5, 0.3, 2.0, 8},
  };
  int nets = 0;
  for (const Family& f : families) {
    for (std::uint64_t seed : {41u, 42u, 43u}) {
      const RadioParams radio{1.0, f.s, f.gamma};
      const Network net = f.plane
                              ? random_plane(f.extent, f.extent, f.n, radio, seed)
                              : random_line(f.extent, f.n, radio, seed);
      const Partition part = f.plane
                                 ? Partition::plane(f.s, f.gamma, f.extent, f.extent)
                                 : Partition::line(f.s, f.gamma, f.extent);
      ++nets;
      const DiscoveryOutcome out = run_procedure_d_star(net, part, TraceMode::Off);
      const long long want =
          static_cast<long long>(part.slots()) * (1 + part.slots());
      if (out.sim.rounds != want) {
        note = "ran " + std::to_string(out.sim.rounds) + " rounds, wanted " +
               std::to_string(want);
        return false;
      }
      const auto by_label = label_map(net, part);
      for (int u = 0; u < net.size(); ++u) {
        for (int w = 0; w < net.size(); ++w) {
          if (u == w || dist(net.position(u), net.position(w)) > 1.0) continue;
          if (!out.knowledge[u].contains(part.label_of(net.position(w)))) {
            note = "node " + std::to_string(u) + " missed in-range node " +
                   std::to_string(w) + " (net " + std::to_string(nets) + ")";
            return false;
          }
        }
        for (const KnownNode& e : out.knowledge[u].entries()) {
          const auto it = by_label.find(e.label);
          if (it == by_label.end() || it->second == u ||
              dist(net.position(u), net.position(it->second)) > 1.0 + kDistanceTol) {
            note = "node " + std::to_string(u) + " holds a false entry (net " +
                   std::to_string(nets) + ")";
            return false;
          }
          if (dist(e.location, net.position(it->second)) >
              radio.gamma / 2 + kDistanceTol) {
            note = "node " + std::to_string(u) + " mislocated an entry (net " +
                   std::to_string(nets) + ")";
            return false;
          }
        }
      }
    }
  }
  note = std::to_string(nets) + " full schedules exact";
  return true;
}

// 9. Relay rounds on spaced chains grow linearly with the chain's span. The
//    payload starts at the far end, so it crosses one block per sweep.
bool check_chain_scaling(std::string& note) {
  const double s = 0.55, gamma = 0.25, step = 0.25;
  std::vector<double> spans, trounds;
  for (const int n : {10, 19, 37, 73}) {
    std::vector<Point> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back({0.05 + step * i, 0.0});
    const double span = step * (n - 1);
    const Network net(pts, 1, RadioParams{1.0, s, gamma});
    const Partition part = Partition::line(s, gamma, 0.1 + span);
    BroadcastOptions opt;
    opt.trace = TraceMode::Off;
    const BroadcastRun run = run_algorithm_b(net, part, n - 1, opt);
    if (run.sim.informed_count != n || !run.quiescent) {
      note = "chain n=" + std::to_string(n) + " informed " +
             std::to_string(run.sim.informed_count) + "/" + std::to_string(n) +
             (run.quiescent ? "" : ", hit the sweep budget");
      return false;
    }
    spans.push_back(span);
    trounds.push_back(static_cast<double>(run.sim.rounds - run.discovery_rounds));
  }
  const Fit fit = linear_fit(spans, trounds);
  note = "slope " + fmt(fit.slope) + " rounds per unit, R2 " + fmt(fit.r2);
  return std::isfinite(fit.slope) && fit.slope > 0.0 && fit.r2 >= kMinFitR2;
}

// 10. Plane relays: everyone informed before the sweep budget, elected
//     spokesmen cover each informed block's reach on every sweep, and
//     bracketing holds on sampled triples.
bool check_plane_liveness(std::string& note) {
  const auto t0 = Clock::now();
  for (int i = 0; i < 20; ++i) {
    const int n = 10 + (i % 4) * 2;
    const double side = 2.5 + 0.25 * (i % 3);
    const RadioParams radio{1.0, 0.4, 0.3};
    const Network net = random_plane(side, side, n, radio, 9000 + i);
    const Partition part = Partition::plane(radio.s, radio.gamma, side, side);
    BroadcastOptions opt;
    opt.trace = TraceMode::Off;
    opt.audit_coverage = true;
    const BroadcastRun run = run_algorithm_b2(net, part, 0, opt);
    bool covered = true;
    for (const CoverageAuditRow& row : run.audits) covered = covered && row.covered;
    if (run.sim.informed_count != n || !run.quiescent || !covered) {
      note = "placement " + std::to_string(i) + ": informed " +
             std::to_string(run.sim.informed_count) + "/" + std::to_string(n) +
             (run.quiescent ? "" : ", hit the sweep budget") +
             (covered ? "" : ", coverage audit failed");
      return false;
    }
  }
  const CheckResult triples = check_closer_farther_samples(4242, 10000);
  const double secs = seconds_since(t0);
  if (!triples.pass) {
    note = "bracketing failed: " + triples.detail;
    return false;
  }
  note = "20 placements, 10000 triples, " + fmt(secs) + "s";
  return secs < kPlaneBudget;
}

// 11. Identical seeds give byte-identical traces and sweep CSVs.
bool check_determinism(std::string& note) {
  const char* scenario_text =
      "[placement]\nkind = random-line\nn = 12\nlength = 8\n"
      "[radio]\nr = 1\ns = 0.5\ngamma = 0.25\n"
      "[algorithm]\nname = B\n[run]\nid = det\nseed = 11\n";
  const Scenario sc = parse_scenario(scenario_text, "acceptance");
  std::string traces[2];
  for (std::string& t : traces) {
    const ScenarioRun run = execute_scenario(sc, false, TraceMode::Full);
    std::ostringstream os;
    write_trace_jsonl(os, sc, run.sim);
    t = os.str();
  }
  if (traces[0] != traces[1]) {
    note = "trace bytes differ between runs";
    return false;
  }
  const char* sweep_text =
      "[placement]\nkind = random-line\nn = 10, 14\nlength = 6\n"
      "[radio]\nr = 1\ns = 0.5\ngamma = 0.25, 0.35\n"
      "[algorithm]\nname = B\n[run]\nid = det\nseed = 21\n";
  const std::vector<Scenario> list = parse_sweep(sweep_text, "acceptance");
  const std::string csv_a = sweep_csv(list, true);
  const std::string csv_b = sweep_csv(list, true);
  if (csv_a != csv_b) {
    note = "CSV bytes differ between runs";
    return false;
  }
  note = std::to_string(traces[0].size()) + " trace bytes and " +
         std::to_string(csv_a.size()) + " CSV bytes stable";
  return true;
}

}  // namespace

int main() {
  struct Check {
    const char* name;
    bool (*fn)(std::string&);
  };
  const Check checks[] = {
      {"reception semantics agree with the oracle", check_reception},
      {"thin-annulus lattices refuse and stay in the residue class", check_residue_refusal},
      {"line broadcast completes within its budget", check_line_broadcast},
      {"ladder schemes cover their near and far zones", check_ladder_zones},
      {"grid broadcast completes with separated transmitters", check_grid_broadcast},
      {"annulus coverage stays above the floor", check_annulus_floor},
      {"census knowledge equals the link neighborhood", check_census_exact},
      {"full discovery reaches the unit ball exactly", check_full_discovery},
      {"chain relays scale linearly with the span", check_chain_scaling},
      {"plane relays inform everyone with covering spokesmen", check_plane_liveness},
      {"identical seeds give identical bytes", check_determinism},
  };
  int failures = 0;
  int index = 0;
  for (const Check& c : checks) {
    ++index;
    std::string note;
    bool pass = false;
    try {
      pass = c.fn(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2d %s%s%s\n", pass ? "PASS" : "FAIL", index, c.name,
                note.empty() ? "" : ": ", note.c_str());
    if (!pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %d checks failed\n", failures, index);
    return 1;
  }
  std::printf("all %d checks passed\n", index);
  return 0;
}
