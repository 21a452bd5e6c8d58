#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "swampcast/discovery.hpp"
#include "swampcast/oracle.hpp"
#include "swampcast/partition.hpp"
#include "swampcast/radio.hpp"
#include "swampcast/spokesmen.hpp"

namespace swampcast {

// Relay phase for line placements. Each sweep walks blocks 1..mu, six rounds
// per block in role order; all regions run the same calendar in parallel.
// Every node re-elects at the head of its own block's rounds from the message
// origins it has heard (its own transmission included), claims the roles
// whose designated home is its own, and sends the payload at its first
// claimed slot. A node transmits at most once per run: its coverage is fixed,
// so one delivery exhausts it, and the transmission budget caps the number of
// non-silent sweeps.
class LineRelayProgram : public NodeProgram {
 public:
  LineRelayProgram(const Partition& part, Point own, const KnowledgeSet& know,
                   bool informed);

  std::optional<Message> step(int round) override;
  void observe(int round, const Observation& obs) override;
  bool informed() const override { return informed_; }

 private:
  double s_;
  int mu_;
  Point own_{};
  int own_block_ = 1;  // 1-based
  int own_home_ = 0;   // 0-based
  LineBlockGeometry geom_;
  std::vector<double> origins_;
  std::array<std::optional<int>, kLineSlots> claims_{};
  bool informed_ = false;
  bool sent_ = false;
  long long tick_ = 0;
};

// Relay phase for plane placements: the fixed 12k-4 slot calendar per block.
// Elections need to know which block members hold the payload, which a node
// cannot observe; the driver injects those flags at the head of the node's
// block rounds (see run_procedure_t2). Transmissions are once-only per run.
class PlaneRelayProgram : public NodeProgram {
 public:
  PlaneRelayProgram(const Partition& part, Point own, bool informed);

  // Driver-side injection of the per-home informed flags for this node's own
  // block (k*k entries, row-major from the block's NW corner).
  void grant(const std::vector<std::uint8_t>& informed_homes);

  std::optional<Message> step(int round) override;
  void observe(int round, const Observation& obs) override;
  bool informed() const override { return informed_; }
  int block() const { return own_block_; }
  int region() const { return own_region_; }

 private:
  int k_;
  int mu_;
  int slots_per_block_;
  Point own_{};
  int own_region_ = 0;
  int own_block_ = 1;
  int own_home_ = 0;  // 0-based grid index
  std::vector<int> slot_homes_;
  bool informed_ = false;
  bool sent_ = false;
  long long tick_ = 0;
};

struct BroadcastOptions {
  // Sweep budget: horizon_mult * (flooding eccentricity from the source + 2).
  int horizon_mult = 16;
  TraceMode trace = TraceMode::Lite;
  // Record, per sweep and per block holding the payload, whether the elected
  // relays collectively reach every node some informed block member reaches.
  bool audit_coverage = false;
};

struct CoverageAuditRow {
  int sweep = 0;  // 1-based
  int region = 0;
  int block = 0;  // 1-based
  bool covered = true;
};

struct BroadcastRun {
  SimResult sim;
  long long discovery_rounds = 0;  // leading census rounds (full algorithms)
  int sweeps = 0;                  // relay passes executed
  bool quiescent = false;          // a full pass ran with no transmission
  std::vector<CoverageAuditRow> audits;
};

// Relay phases alone, starting from the given per-node knowledge (line) or
// from scratch (plane; elections there need no census data). The payload
// starts at `source`. Runs whole sweeps until one is silent or the budget
// runs out; quiescent reports which.
BroadcastRun run_procedure_t(const Network& net, const Partition& part,
                             const std::vector<KnowledgeSet>& knowledge,
                             int source, const BroadcastOptions& opt = {});
BroadcastRun run_procedure_t2(const Network& net, const Partition& part,
                              int source, const BroadcastOptions& opt = {});

// Full broadcasting algorithms: the complete neighborhood discovery schedule,
// then the relay phase, as one continuous simulation. discovery_rounds in the
// result separates the two phases.
BroadcastRun run_algorithm_b(const Network& net, const Partition& part,
                             int source, const BroadcastOptions& opt = {});
BroadcastRun run_algorithm_b2(const Network& net, const Partition& part,
                              int source, const BroadcastOptions& opt = {});

}  // namespace swampcast
