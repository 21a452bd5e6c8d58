#pragma once

#include <optional>
#include <vector>

#include "swampcast/geometry.hpp"

namespace swampcast {

enum class MessageKind { Hello, Data };

// Frames are constant size: a kind tag, the sender's location stamp, and one
// opaque token. Everything a protocol learns must fit through here.
struct Message {
  MessageKind kind = MessageKind::Data;
  Point origin{};
  int token = 0;
};

struct Observation {
  bool heard = false;
  Message msg{};  // valid only when heard
};

// Per-node state machine. step() is called once per round and may return a
// message to transmit (nullopt = listen). observe() is called after the
// round resolves; transmitters always observe silence. Programs may read
// only their own construction-time data and their observation history.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual std::optional<Message> step(int round) = 0;
  virtual void observe(int round, const Observation& obs) = 0;
  virtual bool informed() const = 0;
};

// Off keeps only aggregate counters, Lite adds one row per round with the
// transmitter list, Full also records deliveries and blocked receivers.
enum class TraceMode { Off, Lite, Full };

struct RoundTrace {
  int round = 0;  // 1-based
  std::vector<int> transmitters;
  int delivered = 0;
  int collision_blocked = 0;
  int swamp_blocked = 0;
  std::vector<std::pair<int, int>> deliveries;  // (receiver, sender), Full mode
  std::vector<int> collision_nodes;             // Full mode
  std::vector<int> swamp_nodes;                 // Full mode
};

// Resolution of one round: heard_from[v] is the sender v received from, or -1.
// A listener with a jammer within (0, s] is swamp-blocked no matter how many
// in-range senders it has; with none, two or more in-range senders collide.
struct RoundDeliveries {
  std::vector<int> heard_from;
  std::vector<int> collision_nodes;
  std::vector<int> swamp_nodes;
};

RoundDeliveries deliveries_for_round(const Network& net, const std::vector<int>& transmitters);

struct SimResult {
  std::vector<RoundTrace> trace;
  std::vector<int> informed_round;  // 0 = initially informed, -1 = never
  int rounds = 0;
  int completion_round = -1;  // first round after which every node is informed
  int informed_count = 0;
  long long delivered_total = 0;
  long long collision_blocked_total = 0;
  long long swamp_blocked_total = 0;
};

// Round-synchronous executor. Drivers that interleave engine rounds with
// out-of-band bookkeeping (election sweeps, knowledge grants) call
// step_round() themselves; everyone else uses run() below.
class Simulation {
 public:
  Simulation(const Network& net, std::vector<NodeProgram*> programs,
             TraceMode mode = TraceMode::Lite);

  // Executes one round; the returned row is also stored unless mode is Off.
  RoundTrace step_round();

  int rounds_run() const { return round_; }
  bool all_informed() const { return informed_count_ == net_->size(); }
  int informed_count() const { return informed_count_; }
  const std::vector<int>& informed_round() const { return informed_rounds_; }
  SimResult finish();

 private:
  const Network* net_;
  std::vector<NodeProgram*> programs_;
  TraceMode mode_;
  int round_ = 0;
  int informed_count_ = 0;
  std::vector<int> informed_rounds_;
  SimResult acc_;
};

SimResult run(const Network& net, const std::vector<NodeProgram*>& programs,
              int rounds, TraceMode mode = TraceMode::Lite);

}  // namespace swampcast
