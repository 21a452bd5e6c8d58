#include "swampcast/discovery.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>

namespace swampcast {

namespace {

// Slack for the region resolver only absorbs floating-point rounding; the
// geometry leaves a gap of at least 3 - l between candidate cells.
constexpr double kResolveTol = 1e-12;

bool box_empty(const Box& b) { return b.xhi < b.xlo || b.yhi < b.ylo; }

// Region whose (block, home) cell lies within unit distance of p. Trailing
// cells clipped away entirely never match, and same-label cells in distinct
// regions are more than 2 apart, so at most one region can qualify.
std::optional<PartitionLabel> resolve_region(const Partition& part,
                                             const Point& p, int block,
                                             int home) {
  std::optional<PartitionLabel> best;
  for (int g = 0; g < part.regions(); ++g) {
    const PartitionLabel lab{g, block, home};
    const Box cell = part.home_box(lab);
    if (box_empty(cell)) continue;
    if (point_box_distance(p, cell) <= 1.0 + kResolveTol) {
      if (best) return std::nullopt;
      best = lab;
    }
  }
  return best;
}

}  // namespace

const KnownNode* KnowledgeSet::find(const PartitionLabel& lab) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), lab,
      [](const KnownNode& e, const PartitionLabel& l) { return e.label < l; });
  if (it != entries_.end() && it->label == lab) return &*it;
  return nullptr;
}

bool KnowledgeSet::heard_direct_slot(int block, int home) const {
  for (const KnownNode& e : entries_) {
    if (e.heard_direct && e.label.block == block && e.label.home == home)
      return true;
  }
  return false;
}

bool KnowledgeSet::add(const KnownNode& k) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), k.label,
      [](const KnownNode& e, const PartitionLabel& l) { return e.label < l; });
  if (it != entries_.end() && it->label == k.label) {
    bool changed = false;
    if (k.exact && !it->exact) {
      it->location = k.location;
      it->exact = true;
      changed = true;
    }
    if (k.heard_direct && !it->heard_direct) {
      it->heard_direct = true;
      changed = true;
    }
    return changed;
  }
  entries_.insert(it, k);
  return true;
}

DiscoveryProgram::DiscoveryProgram(const Partition& part, Point own, Mode mode,
                                   int probe_block, int probe_home,
                                   KnowledgeSet seed)
    : part_(&part), own_(own), mode_(mode), know_(std::move(seed)) {
  label_ = part.label_of(own);
  own_slot_ = part.schedule_index(label_);
  if (mode == Mode::Probe) {
    if (probe_block < 1 || probe_block > part.mu() || probe_home < 1 ||
        probe_home > part.nu()) {
      throw std::invalid_argument("probe label out of range");
    }
    probe_slot_ =
        part.schedule_index(PartitionLabel{0, probe_block, probe_home});
  }
}

DiscoveryProgram::Phase DiscoveryProgram::phase_of(int round) const {
  const int s = part_->slots();
  const int idx = (round - 1) % (mode_ == Mode::Full ? s * (1 + s) : s);
  if (mode_ == Mode::Census) return {true, idx, -1};
  if (mode_ == Mode::Probe) return {false, idx, probe_slot_};
  if (idx < s) return {true, idx, -1};
  const int k = idx - s;
  return {false, k % s, k / s};
}

std::optional<Message> DiscoveryProgram::step(int round) {
  const Phase ph = phase_of(round);
  transmitted_ = ph.slot == own_slot_ ||
                 (!ph.census && ph.probe_slot == own_slot_);
  if (!transmitted_) return std::nullopt;
  Message m;
  m.kind = MessageKind::Hello;
  m.origin = own_;
  m.token = own_slot_;
  return m;
}

void DiscoveryProgram::observe(int round, const Observation& obs) {
  if (transmitted_) return;  // own transmission masks the channel
  const Phase ph = phase_of(round);
  if (ph.census) {
    if (!obs.heard || obs.msg.kind != MessageKind::Hello) return;
    KnownNode k;
    k.label = part_->label_of(obs.msg.origin);
    k.location = obs.msg.origin;
    k.exact = true;
    k.heard_direct = true;
    know_.add(k);
    return;
  }
  // Probe rounds only mine silence. A hello heard here repeats census
  // information; acting on it would let probes alter the knowledge of nodes
  // with no stake in the probed label.
  if (obs.heard) return;
  const auto [pb, ph_home] = part_->slot_of(ph.probe_slot);
  if (!know_.heard_direct_slot(pb, ph_home)) return;
  // A directly heard (pb, ph_home) neighbor transmitted this round, yet
  // nothing arrived: the blocker must run on this round's census slot and
  // stand within unit distance, because same-label nodes of other regions
  // are too far away to jam or collide here.
  const auto [sb, sh] = part_->slot_of(ph.slot);
  const auto lab = resolve_region(*part_, own_, sb, sh);
  if (!lab) return;
  KnownNode k;
  k.label = *lab;
  k.location = part_->home_center(*lab);
  k.exact = false;
  k.heard_direct = false;
  know_.add(k);
}

long long DiscoveryProgram::rounds_for(const Partition& part, Mode mode) {
  const long long s = part.slots();
  return mode == Mode::Full ? s * (1 + s) : s;
}

namespace {

void require_unit_range(const Network& net, const Partition& part) {
  if (net.radio().r != 1.0)
    throw std::invalid_argument(
        "discovery procedures assume unit transmission range");
  if (net.dim() != part.dim())
    throw std::invalid_argument(
        "network and partition dimensionality differ");
}

DiscoveryOutcome run_discovery(const Network& net, const Partition& part,
                               DiscoveryProgram::Mode mode, int block,
                               int home, const std::vector<KnowledgeSet>* seed,
                               TraceMode tmode) {
  require_unit_range(net, part);
  std::vector<std::unique_ptr<DiscoveryProgram>> owned;
  std::vector<NodeProgram*> progs;
  owned.reserve(net.size());
  progs.reserve(net.size());
  for (int v = 0; v < net.size(); ++v) {
    KnowledgeSet ks = seed ? (*seed)[static_cast<std::size_t>(v)]
                           : KnowledgeSet{};
    owned.push_back(std::make_unique<DiscoveryProgram>(
        part, net.positions()[static_cast<std::size_t>(v)], mode, block, home,
        std::move(ks)));
    progs.push_back(owned.back().get());
  }
  const long long rounds = DiscoveryProgram::rounds_for(part, mode);
  DiscoveryOutcome out;
  out.sim = run(net, progs, static_cast<int>(rounds), tmode);
  out.knowledge.reserve(owned.size());
  for (auto& p : owned) out.knowledge.push_back(p->knowledge());
  return out;
}

}  // namespace

DiscoveryOutcome run_procedure_d(const Network& net, const Partition& part,
                                 TraceMode mode) {
  return run_discovery(net, part, DiscoveryProgram::Mode::Census, 0, 0,
                       nullptr, mode);
}

DiscoveryOutcome run_procedure_d_bh(const Network& net, const Partition& part,
                                    int block, int home,
                                    const std::vector<KnowledgeSet>& seed,
                                    TraceMode mode) {
  if (static_cast<int>(seed.size()) != net.size())
    throw std::invalid_argument("seed knowledge size must match network size");
  return run_discovery(net, part, DiscoveryProgram::Mode::Probe, block, home,
                       &seed, mode);
}

DiscoveryOutcome run_procedure_d_star(const Network& net,
                                      const Partition& part, TraceMode mode) {
  return run_discovery(net, part, DiscoveryProgram::Mode::Full, 0, 0, nullptr,
                       mode);
}

}  // namespace swampcast
