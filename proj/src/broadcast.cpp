#include "swampcast/broadcast.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

namespace swampcast {

namespace {

void require_unit_range(const Network& net, const Partition& part, int dim) {
  if (net.radio().r != 1.0)
    throw std::invalid_argument("relay procedures assume unit transmission range");
  if (net.dim() != dim || part.dim() != dim)
    throw std::invalid_argument("network / partition dimensionality mismatch");
}

void require_source(const Network& net, int source) {
  if (source < 0 || source >= net.size())
    throw std::invalid_argument("source index out of range");
}

// Node ids per (region, block), plus each node's home grid index. Rejects
// placements that put two nodes in one home: every schedule here relies on
// single occupancy.
struct BlockGroups {
  int mu = 1;
  std::vector<std::vector<int>> members;  // region * mu + (block - 1)
  std::vector<int> home_of;
};

BlockGroups index_blocks(const Network& net, const Partition& part) {
  BlockGroups g;
  g.mu = part.mu();
  g.members.assign(static_cast<std::size_t>(part.regions()) * g.mu, {});
  g.home_of.resize(net.size());
  std::vector<std::vector<char>> seen(g.members.size());
  for (auto& s : seen) s.assign(part.nu(), 0);
  for (int v = 0; v < net.size(); ++v) {
    const PartitionLabel lab = part.label_of(net.position(v));
    const std::size_t key =
        static_cast<std::size_t>(lab.region) * g.mu + (lab.block - 1);
    if (seen[key][lab.home - 1])
      throw std::invalid_argument("two nodes share a home cell");
    seen[key][lab.home - 1] = 1;
    g.members[key].push_back(v);
    g.home_of[v] = lab.home - 1;
  }
  return g;
}

int sweep_budget(const Network& net, int source, int horizon_mult) {
  const FloodingResult base = flooding_baseline(net, source);
  const long long budget =
      static_cast<long long>(horizon_mult) * (base.eccentricity + 2);
  return static_cast<int>(std::max(1LL, budget));
}

// Runs whole relay passes until one goes by without a transmission or the
// budget is exhausted. at_block_head, when set, fires before each block's
// slot rounds (grants and audits).
void run_relay_sweeps(Simulation& sim, int mu, int slots_per_block, int budget,
                      const std::function<void(int, int)>& at_block_head,
                      BroadcastRun& out) {
  for (int sweep = 1; sweep <= budget; ++sweep) {
    long long sent = 0;
    for (int block = 1; block <= mu; ++block) {
      if (at_block_head) at_block_head(sweep, block);
      for (int slot = 0; slot < slots_per_block; ++slot)
        sent += static_cast<long long>(sim.step_round().transmitters.size());
    }
    ++out.sweeps;
    if (sent == 0) {
      out.quiescent = true;
      return;
    }
  }
}

// Grants and coverage audits for one block column of a plane pass.
void plane_block_head(const Network& net, const Partition& part,
                      const BlockGroups& groups, int block, int sweep,
                      const std::function<bool(int)>& is_informed,
                      const std::function<void(int, const std::vector<std::uint8_t>&)>& grant_node,
                      bool audit, BroadcastRun& out) {
  const int k = part.homes_per_side();
  for (int region = 0; region < part.regions(); ++region) {
    const auto& mem =
        groups.members[static_cast<std::size_t>(region) * groups.mu +
                       (block - 1)];
    if (mem.empty()) continue;
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(k) * k, 0);
    bool any = false;
    for (int v : mem) {
      if (is_informed(v)) {
        flags[groups.home_of[v]] = 1;
        any = true;
      }
    }
    for (int v : mem) grant_node(v, flags);
    if (!audit || !any) continue;

    CoverageAuditRow row{sweep, region, block, true};
    std::vector<char> reached(net.size(), 0);
    for (int home : plane_spokesman_homes(k, flags)) {
      for (int v : mem) {
        if (groups.home_of[v] != home) continue;
        for (int w : net.neighbors_of(v)) reached[w] = 1;
      }
    }
    for (int v : mem) {
      if (!is_informed(v)) continue;
      for (int w : net.neighbors_of(v)) {
        if (!reached[w]) {
          row.covered = false;
          break;
        }
      }
      if (!row.covered) break;
    }
    out.audits.push_back(row);
  }
}

// Census-then-relay composition. The census fills the first
// slots*(1+slots) rounds; the relay starts on the next round and, for the
// plane, accepts grants as soon as the census is over.
template <class Relay>
class StagedProgram : public NodeProgram {
 public:
  StagedProgram(const Partition& part, Point own, bool is_source)
      : part_(&part),
        own_(own),
        is_source_(is_source),
        census_rounds_(
            DiscoveryProgram::rounds_for(part, DiscoveryProgram::Mode::Full)),
        census_(part, own, DiscoveryProgram::Mode::Full) {}

  std::optional<Message> step(int round) override {
    in_census_ = tick_ < census_rounds_;
    ++tick_;
    if (in_census_) return census_.step(round);
    ensure_relay();
    return relay_->step(round);
  }

  void observe(int round, const Observation& obs) override {
    if (in_census_) census_.observe(round, obs);
    else relay_->observe(round, obs);
  }

  bool informed() const override {
    return relay_ ? relay_->informed() : is_source_;
  }

  Relay* relay_if_ready() {
    ensure_relay();
    return relay_ ? &*relay_ : nullptr;
  }

 private:
  void ensure_relay() {
    if (relay_ || tick_ < census_rounds_) return;
    if constexpr (std::is_same_v<Relay, LineRelayProgram>) {
      relay_.emplace(*part_, own_, census_.knowledge(), is_source_);
    } else {
      relay_.emplace(*part_, own_, is_source_);
    }
  }

  const Partition* part_;
  Point own_;
  bool is_source_;
  long long census_rounds_;
  DiscoveryProgram census_;
  std::optional<Relay> relay_;
  long long tick_ = 0;
  bool in_census_ = true;
};

}  // namespace

LineRelayProgram::LineRelayProgram(const Partition& part, Point own,
                                   const KnowledgeSet& know, bool informed)
    : s_(part.s()), mu_(part.mu()), own_(own), informed_(informed) {
  if (part.dim() != 1)
    throw std::invalid_argument("line relay needs a line partition");
  const PartitionLabel lab = part.label_of(own);
  own_block_ = lab.block;
  own_home_ = lab.home - 1;
  std::vector<int> occ{own_home_};
  for (const KnownNode& e : know.entries()) {
    if (e.label.region == lab.region && e.label.block == lab.block)
      occ.push_back(e.label.home - 1);
  }
  geom_ = line_block_geometry(part, lab.region, lab.block, std::move(occ));
}

std::optional<Message> LineRelayProgram::step(int) {
  const long long t = tick_++;
  const int block = static_cast<int>((t / kLineSlots) % mu_) + 1;
  const int slot = static_cast<int>(t % kLineSlots);
  if (block != own_block_) return std::nullopt;
  if (slot == 0) claims_ = line_role_homes(geom_, s_, origins_);
  if (!informed_ || sent_) return std::nullopt;
  // An informed node that never heard any transmission is the payload's
  // origin; it seeds the relay from the first slot of its block.
  const bool mine = origins_.empty()
                        ? slot == 0
                        : claims_[slot] && *claims_[slot] == own_home_;
  if (!mine) return std::nullopt;
  sent_ = true;
  auto it = std::lower_bound(origins_.begin(), origins_.end(), own_.x);
  if (it == origins_.end() || *it != own_.x) origins_.insert(it, own_.x);
  Message m;
  m.kind = MessageKind::Data;
  m.origin = own_;
  return m;
}

void LineRelayProgram::observe(int, const Observation& obs) {
  if (!obs.heard || obs.msg.kind != MessageKind::Data) return;
  informed_ = true;
  const double o = obs.msg.origin.x;
  auto it = std::lower_bound(origins_.begin(), origins_.end(), o);
  if (it == origins_.end() || *it != o) origins_.insert(it, o);
}

PlaneRelayProgram::PlaneRelayProgram(const Partition& part, Point own,
                                     bool informed)
    : k_(part.homes_per_side()),
      mu_(part.mu()),
      slots_per_block_(plane_slots_per_block(k_)),
      own_(own),
      informed_(informed) {
  if (part.dim() != 2)
    throw std::invalid_argument("plane relay needs a plane partition");
  const PartitionLabel lab = part.label_of(own);
  own_region_ = lab.region;
  own_block_ = lab.block;
  own_home_ = lab.home - 1;
  slot_homes_.assign(slots_per_block_, -1);
}

void PlaneRelayProgram::grant(const std::vector<std::uint8_t>& informed_homes) {
  slot_homes_ = plane_slot_homes(k_, informed_homes);
}

std::optional<Message> PlaneRelayProgram::step(int) {
  const long long t = tick_++;
  const int block = static_cast<int>((t / slots_per_block_) % mu_) + 1;
  const int slot = static_cast<int>(t % slots_per_block_);
  if (block != own_block_ || !informed_ || sent_) return std::nullopt;
  if (slot_homes_[slot] != own_home_) return std::nullopt;
  sent_ = true;
  Message m;
  m.kind = MessageKind::Data;
  m.origin = own_;
  return m;
}

void PlaneRelayProgram::observe(int, const Observation& obs) {
  if (obs.heard && obs.msg.kind == MessageKind::Data) informed_ = true;
}

BroadcastRun run_procedure_t(const Network& net, const Partition& part,
                             const std::vector<KnowledgeSet>& knowledge,
                             int source, const BroadcastOptions& opt) {
  require_unit_range(net, part, 1);
  require_source(net, source);
  if (static_cast<int>(knowledge.size()) != net.size())
    throw std::invalid_argument("knowledge size must match network size");
  index_blocks(net, part);  // single-occupancy check

  std::vector<std::unique_ptr<LineRelayProgram>> owned;
  std::vector<NodeProgram*> progs;
  for (int v = 0; v < net.size(); ++v) {
    owned.push_back(std::make_unique<LineRelayProgram>(
        part, net.position(v), knowledge[v], v == source));
    progs.push_back(owned.back().get());
  }
  BroadcastRun out;
  Simulation sim(net, progs, opt.trace);
  run_relay_sweeps(sim, part.mu(), kLineSlots,
                   sweep_budget(net, source, opt.horizon_mult), nullptr, out);
  out.sim = sim.finish();
  return out;
}

BroadcastRun run_procedure_t2(const Network& net, const Partition& part,
                              int source, const BroadcastOptions& opt) {
  require_unit_range(net, part, 2);
  require_source(net, source);
  const BlockGroups groups = index_blocks(net, part);

  std::vector<std::unique_ptr<PlaneRelayProgram>> owned;
  std::vector<NodeProgram*> progs;
  for (int v = 0; v < net.size(); ++v) {
    owned.push_back(std::make_unique<PlaneRelayProgram>(
        part, net.position(v), v == source));
    progs.push_back(owned.back().get());
  }
  BroadcastRun out;
  Simulation sim(net, progs, opt.trace);
  const auto head = [&](int sweep, int block) {
    plane_block_head(
        net, part, groups, block, sweep,
        [&](int v) { return owned[v]->informed(); },
        [&](int v, const std::vector<std::uint8_t>& f) { owned[v]->grant(f); },
        opt.audit_coverage, out);
  };
  run_relay_sweeps(sim, part.mu(), plane_slots_per_block(part.homes_per_side()),
                   sweep_budget(net, source, opt.horizon_mult), head, out);
  out.sim = sim.finish();
  return out;
}

BroadcastRun run_algorithm_b(const Network& net, const Partition& part,
                             int source, const BroadcastOptions& opt) {
  require_unit_range(net, part, 1);
  require_source(net, source);
  index_blocks(net, part);

  std::vector<std::unique_ptr<StagedProgram<LineRelayProgram>>> owned;
  std::vector<NodeProgram*> progs;
  for (int v = 0; v < net.size(); ++v) {
    owned.push_back(std::make_unique<StagedProgram<LineRelayProgram>>(
        part, net.position(v), v == source));
    progs.push_back(owned.back().get());
  }
  BroadcastRun out;
  out.discovery_rounds =
      DiscoveryProgram::rounds_for(part, DiscoveryProgram::Mode::Full);
  Simulation sim(net, progs, opt.trace);
  for (long long i = 0; i < out.discovery_rounds; ++i) sim.step_round();
  run_relay_sweeps(sim, part.mu(), kLineSlots,
                   sweep_budget(net, source, opt.horizon_mult), nullptr, out);
  out.sim = sim.finish();
  return out;
}

BroadcastRun run_algorithm_b2(const Network& net, const Partition& part,
                              int source, const BroadcastOptions& opt) {
  require_unit_range(net, part, 2);
  require_source(net, source);
  const BlockGroups groups = index_blocks(net, part);

  std::vector<std::unique_ptr<StagedProgram<PlaneRelayProgram>>> owned;
  std::vector<NodeProgram*> progs;
  for (int v = 0; v < net.size(); ++v) {
    owned.push_back(std::make_unique<StagedProgram<PlaneRelayProgram>>(
        part, net.position(v), v == source));
    progs.push_back(owned.back().get());
  }
  BroadcastRun out;
  out.discovery_rounds =
      DiscoveryProgram::rounds_for(part, DiscoveryProgram::Mode::Full);
  Simulation sim(net, progs, opt.trace);
  for (long long i = 0; i < out.discovery_rounds; ++i) sim.step_round();
  const auto head = [&](int sweep, int block) {
    plane_block_head(
        net, part, groups, block, sweep,
        [&](int v) { return owned[v]->informed(); },
        [&](int v, const std::vector<std::uint8_t>& f) {
          if (auto* relay = owned[v]->relay_if_ready()) relay->grant(f);
        },
        opt.audit_coverage, out);
  };
  run_relay_sweeps(sim, part.mu(), plane_slots_per_block(part.homes_per_side()),
                   sweep_budget(net, source, opt.horizon_mult), head, out);
  out.sim = sim.finish();
  return out;
}

}  // namespace swampcast
