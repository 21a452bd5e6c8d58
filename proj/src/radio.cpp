#include "swampcast/radio.hpp"

#include <algorithm>
#include <stdexcept>

namespace swampcast {

RoundDeliveries deliveries_for_round(const Network& net, const std::vector<int>& transmitters) {
  const int n = net.size();
  RoundDeliveries out;
  out.heard_from.assign(n, -1);
  std::vector<int> clear(n, 0), jam(n, 0), from(n, -1);
  std::vector<char> tx(n, 0);
  for (int t : transmitters) {
    if (t < 0 || t >= n) throw std::invalid_argument("deliveries_for_round: bad transmitter id");
    tx[t] = 1;
  }
  for (int t : transmitters) {
    for (int v : net.neighbors_of(t)) {
      ++clear[v];
      from[v] = t;
    }
    for (int v : net.jammers_of(t)) ++jam[v];
  }
  for (int v = 0; v < n; ++v) {
    if (tx[v]) continue;
    if (jam[v] >= 1) {
      out.swamp_nodes.push_back(v);
    } else if (clear[v] >= 2) {
      out.collision_nodes.push_back(v);
    } else if (clear[v] == 1) {
      out.heard_from[v] = from[v];
    }
  }
  return out;
}

Simulation::Simulation(const Network& net, std::vector<NodeProgram*> programs, TraceMode mode)
    : net_(&net), programs_(std::move(programs)), mode_(mode) {
  if (static_cast<int>(programs_.size()) != net.size())
    throw std::invalid_argument("simulation: one program per node required");
  informed_rounds_.assign(net.size(), -1);
  for (int v = 0; v < net.size(); ++v) {
    if (programs_[v]->informed()) {
      informed_rounds_[v] = 0;
      ++informed_count_;
    }
  }
}

RoundTrace Simulation::step_round() {
  const int n = net_->size();
  ++round_;
  RoundTrace row;
  row.round = round_;

  std::vector<int> txs;
  std::vector<Message> msgs;
  for (int v = 0; v < n; ++v) {
    if (auto m = programs_[v]->step(round_)) {
      txs.push_back(v);
      msgs.push_back(*m);
    }
  }

  RoundDeliveries res = deliveries_for_round(*net_, txs);
  for (int v = 0; v < n; ++v) {
    Observation obs;
    const int sender = res.heard_from[v];
    if (sender >= 0) {
      for (std::size_t i = 0; i < txs.size(); ++i) {
        if (txs[i] == sender) {
          obs.heard = true;
          obs.msg = msgs[i];
          break;
        }
      }
      ++row.delivered;
      if (mode_ == TraceMode::Full) row.deliveries.emplace_back(v, sender);
    }
    programs_[v]->observe(round_, obs);
  }
  for (int v = 0; v < n; ++v) {
    if (informed_rounds_[v] < 0 && programs_[v]->informed()) {
      informed_rounds_[v] = round_;
      ++informed_count_;
    }
  }

  row.transmitters = std::move(txs);
  row.collision_blocked = static_cast<int>(res.collision_nodes.size());
  row.swamp_blocked = static_cast<int>(res.swamp_nodes.size());
  acc_.delivered_total += row.delivered;
  acc_.collision_blocked_total += row.collision_blocked;
  acc_.swamp_blocked_total += row.swamp_blocked;
  if (mode_ == TraceMode::Full) {
    row.collision_nodes = std::move(res.collision_nodes);
    row.swamp_nodes = std::move(res.swamp_nodes);
  }
  if (mode_ != TraceMode::Off) acc_.trace.push_back(row);
  return row;
}

SimResult Simulation::finish() {
  SimResult out = std::move(acc_);
  acc_ = SimResult{};
  out.rounds = round_;
  out.informed_round = informed_rounds_;
  out.informed_count = informed_count_;
  if (informed_count_ == net_->size()) {
    int last = 0;
    for (int r : out.informed_round) last = std::max(last, r);
    out.completion_round = last;
  }
  return out;
}

SimResult run(const Network& net, const std::vector<NodeProgram*>& programs, int rounds,
              TraceMode mode) {
  if (rounds < 0) throw std::invalid_argument("run: negative round count");
  Simulation sim(net, programs, mode);
  for (int i = 0; i < rounds; ++i) sim.step_round();
  return sim.finish();
}

}  // namespace swampcast
