#pragma once

#include <optional>
#include <vector>

#include "swampcast/partition.hpp"
#include "swampcast/radio.hpp"

namespace swampcast {

// One node another node knows about. Entries made from a heard hello carry
// the sender's stamped position and are exact; entries inferred from a silent
// slot carry the home center, which sits within gamma/2 of the real node.
struct KnownNode {
  PartitionLabel label;
  Point location{};
  bool exact = false;
  bool heard_direct = false;  // its hello was received during the census
};

// Grows monotonically. An exact entry is never replaced by an inferred one
// for the same label, and heard_direct never reverts.
class KnowledgeSet {
 public:
  const std::vector<KnownNode>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const KnownNode* find(const PartitionLabel& lab) const;
  bool contains(const PartitionLabel& lab) const { return find(lab) != nullptr; }
  // True when some region's (block, home) occupant was heard directly.
  bool heard_direct_slot(int block, int home) const;
  bool add(const KnownNode& k);

 private:
  std::vector<KnownNode> entries_;  // sorted by label
};

// Neighborhood census over a partition with unit transmission range. Every
// node gets one slot per census pass, indexed by its (block, home) label, so
// same-slot transmitters always sit in distinct regions, more than distance 2
// apart: hellos never collide, and a hello can only be lost to a jammer
// closer than s.
//
// The three schedules:
//  - Census: each node transmits a stamped hello in its own slot. Hearers
//    learn the exact position and label of every neighbor in (s, 1].
//  - Probe(b, h): nodes labeled (b, h) transmit every round, everyone else in
//    their own slot. A listener that heard (b, h) directly in the census and
//    now observes silence knows the slot's owner blocked that hello from
//    within distance 1, and records the slot label at its home center.
//  - Full: the census followed by one probe per slot, in slot order. After
//    it, every node knows all other nodes within distance 1, including the
//    ones inside its jamming radius.
class DiscoveryProgram : public NodeProgram {
 public:
  enum class Mode { Census, Probe, Full };

  DiscoveryProgram(const Partition& part, Point own, Mode mode,
                   int probe_block = 0, int probe_home = 0,
                   KnowledgeSet seed = {});

  std::optional<Message> step(int round) override;
  void observe(int round, const Observation& obs) override;
  bool informed() const override { return true; }

  const KnowledgeSet& knowledge() const { return know_; }
  const PartitionLabel& own_label() const { return label_; }

  static long long rounds_for(const Partition& part, Mode mode);

 private:
  struct Phase {
    bool census = false;
    int slot = 0;       // slot transmitting this round
    int probe_slot = 0; // slot transmitting every round, -1 in the census
  };
  Phase phase_of(int round) const;

  const Partition* part_;
  Point own_{};
  PartitionLabel label_{};
  int own_slot_ = 0;
  Mode mode_;
  int probe_slot_ = -1;
  KnowledgeSet know_;
  bool transmitted_ = false;  // this round; transmitters cannot listen
};

struct DiscoveryOutcome {
  std::vector<KnowledgeSet> knowledge;
  SimResult sim;
};

// The census alone: exactly mu*nu rounds; afterwards N_u holds exactly the
// labels of u's (s, 1] neighbors, with exact positions, and the trace shows
// zero collision-blocked receptions.
DiscoveryOutcome run_procedure_d(const Network& net, const Partition& part,
                                 TraceMode mode = TraceMode::Lite);

// One probe pass for the given (block, home): mu*nu rounds. seed carries each
// node's knowledge from an earlier census; nodes lacking a directly-heard
// (block, home) neighbor never add anything.
DiscoveryOutcome run_procedure_d_bh(const Network& net, const Partition& part,
                                    int block, int home,
                                    const std::vector<KnowledgeSet>& seed,
                                    TraceMode mode = TraceMode::Lite);

// Census plus every probe: exactly mu*nu*(1 + mu*nu) rounds. On a connected
// placement every node ends up knowing all other nodes within distance 1.
DiscoveryOutcome run_procedure_d_star(const Network& net, const Partition& part,
                                      TraceMode mode = TraceMode::Lite);

}  // namespace swampcast
