#include "swampcast/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "swampcast/geometry.hpp"

namespace swampcast {

namespace {

long long isqrt_ll(long long v) {
  if (v < 0) return -1;
  long long g = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (g > 0 && g * g > v) --g;
  while ((g + 1) * (g + 1) <= v) ++g;
  return g;
}

void check_radio_ints(int r, int s) {
  if (r < 1 || s < 0 || s >= r)
    throw std::invalid_argument("lattice radio: need integers 0 <= s < r");
}

// Rung count with the r=1, s=0 case folded in via max(1, .): the stride
// r-(s+1) is zero there but no ladder is ever built for it.
int guarded_steps(int r, int s) {
  const int stride = std::max(1, r - (s + 1));
  return (r + stride - 1) / stride;
}

bool line_feasible(int r, int s) { return r - s >= 2 || (r == 1 && s == 0); }

// A line node hears only transmitters at integer distances in (s, r]. When the
// line is short relative to s its middle nodes can lack neighbors entirely, so
// walk the link graph explicitly instead of trusting a length threshold.
bool line_links_connected(int n, int r, int s) {
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (int sign : {-1, 1}) {
      for (int dist = s + 1; dist <= r; ++dist) {
        const int u = v + sign * dist;
        if (u < 0 || u >= n || seen[u]) continue;
        seen[u] = 1;
        ++reached;
        queue.push_back(u);
      }
    }
  }
  return reached == n;
}

// ---------------------------------------------------------------------------
// Schedule search. States pack an informed bitset and a satisfied-demand
// bitset; a beam sweep finds a transmitter sequence (one per round) that
// meets every demand within the budget, with bounded DFS as fallback.

constexpr int kMaxWords = 32;  // up to 2048 positions / demands per search

struct PackedState {
  std::array<std::uint64_t, kMaxWords> inf{};
  std::array<std::uint64_t, kMaxWords> sat{};
  int arena = -1;  // index of the (parent, slot) arena entry that made this
  int satc = 0;
  int infc = 0;
};

struct SearchProblem {
  int node_count = 0;
  int demand_count = 0;  // 0 means the goal is every node informed
  int budget = 0;
  int beam_width = 128;
  long long dfs_cap = 400000;
  std::vector<int> slot_node;               // transmitting node per slot
  std::vector<std::vector<int>> delivers;   // node ids hearing the slot
  std::vector<std::vector<int>> satisfies;  // demand ids hit by the slot
  std::vector<char> informed0;
  std::vector<char> sat0;
};

bool bit_test(const std::array<std::uint64_t, kMaxWords>& w, int i) {
  return (w[i >> 6] >> (i & 63)) & 1;
}

void bit_set(std::array<std::uint64_t, kMaxWords>& w, int i) {
  w[i >> 6] |= std::uint64_t{1} << (i & 63);
}

class ScheduleSearch {
 public:
  explicit ScheduleSearch(const SearchProblem& pb) : pb_(pb) {
    wi_ = (pb.node_count + 63) / 64;
    ws_ = (pb.demand_count + 63) / 64;
    if (wi_ > kMaxWords || ws_ > kMaxWords)
      throw PlanningError("schedule search state is too wide");
  }

  std::optional<std::vector<int>> run() {
    PackedState start;
    for (int i = 0; i < pb_.node_count; ++i)
      if (pb_.informed0[i]) bit_set(start.inf, i);
    for (int i = 0; i < pb_.demand_count; ++i)
      if (pb_.sat0[i]) bit_set(start.sat, i);
    recount(start);
    if (done(start)) return std::vector<int>{};
    if (pb_.budget <= 0) return std::nullopt;
    if (auto got = beam(start)) return got;
    return dfs(start);
  }

 private:
  bool done(const PackedState& st) const {
    return pb_.demand_count == 0 ? st.infc == pb_.node_count
                                 : st.satc == pb_.demand_count;
  }

  void recount(PackedState& st) const {
    st.infc = st.satc = 0;
    for (int w = 0; w < wi_; ++w) st.infc += __builtin_popcountll(st.inf[w]);
    for (int w = 0; w < ws_; ++w) st.satc += __builtin_popcountll(st.sat[w]);
  }

  PackedState fire(const PackedState& st, int slot) const {
    PackedState child = st;
    for (int q : pb_.delivers[slot])
      if (!bit_test(child.inf, q)) {
        bit_set(child.inf, q);
        ++child.infc;
      }
    for (int k : pb_.satisfies[slot])
      if (!bit_test(child.sat, k)) {
        bit_set(child.sat, k);
        ++child.satc;
      }
    return child;
  }

  std::string key_of(const PackedState& st) const {
    std::string k;
    k.resize(static_cast<std::size_t>(wi_ + ws_) * 8);
    std::memcpy(k.data(), st.inf.data(), static_cast<std::size_t>(wi_) * 8);
    std::memcpy(k.data() + static_cast<std::size_t>(wi_) * 8, st.sat.data(),
                static_cast<std::size_t>(ws_) * 8);
    return k;
  }

  std::vector<int> unwind(int arena_idx, int last_slot) const {
    std::vector<int> out{last_slot};
    for (int a = arena_idx; a >= 0; a = arena_[a].first)
      out.push_back(arena_[a].second);
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::optional<std::vector<int>> beam(const PackedState& start) {
    arena_.clear();
    std::unordered_map<std::string, int> seen;
    seen.emplace(key_of(start), 0);
    std::vector<PackedState> layer{start};
    const int slots = static_cast<int>(pb_.slot_node.size());
    std::vector<PackedState> next;
    for (int depth = 1; depth <= pb_.budget; ++depth) {
      next.clear();
      for (const PackedState& st : layer) {
        for (int slot = 0; slot < slots; ++slot) {
          if (!bit_test(st.inf, pb_.slot_node[slot])) continue;
          PackedState child = fire(st, slot);
          if (done(child)) return unwind(st.arena, slot);
          auto it = seen.find(key_of(child));
          if (it != seen.end() && it->second <= depth) continue;
          if (it == seen.end())
            seen.emplace(key_of(child), depth);
          else
            it->second = depth;
          child.arena = static_cast<int>(arena_.size());
          arena_.emplace_back(st.arena, slot);
          next.push_back(child);
        }
      }
      if (next.empty()) return std::nullopt;
      std::stable_sort(next.begin(), next.end(),
                       [](const PackedState& a, const PackedState& b) {
                         if (a.satc != b.satc) return a.satc > b.satc;
                         return a.infc > b.infc;
                       });
      if (static_cast<int>(next.size()) > pb_.beam_width)
        next.resize(pb_.beam_width);
      layer = next;
    }
    return std::nullopt;
  }

  std::optional<std::vector<int>> dfs(const PackedState& start) {
    std::unordered_map<std::string, int> visited;
    std::vector<int> path;
    long long nodes = 0;
    const int slots = static_cast<int>(pb_.slot_node.size());
    std::optional<std::vector<int>> found;

    auto rec = [&](auto&& self, const PackedState& st, int depth) -> bool {
      if (done(st)) {
        found = path;
        return true;
      }
      if (depth == pb_.budget) return false;
      if (++nodes > pb_.dfs_cap) return false;
      for (int slot = 0; slot < slots; ++slot) {
        if (!bit_test(st.inf, pb_.slot_node[slot])) continue;
        PackedState child = fire(st, slot);
        std::string key = key_of(child);
        auto it = visited.find(key);
        if (it != visited.end() && it->second <= depth + 1) continue;
        visited[std::move(key)] = depth + 1;
        path.push_back(slot);
        if (self(self, child, depth + 1)) return true;
        path.pop_back();
        if (nodes > pb_.dfs_cap) return false;
      }
      return false;
    };
    rec(rec, start, 0);
    return found;
  }

  const SearchProblem& pb_;
  int wi_ = 0, ws_ = 0;
  std::vector<std::pair<int, int>> arena_;  // (parent arena index, slot)
};

// ---------------------------------------------------------------------------
// Line plan builder. Positions are relative to the source (lo = -source).
// apply_round replays a round exactly: a listener receives iff exactly one
// transmitter sits in the (s, r] annulus and none sits in [1, s]. Demands
// carry a lateral offset e; offset-e satisfaction means a round existed in
// which precisely one transmitter t had s^2 < (p-t)^2 + e^2 <= r^2 and no
// transmitter was closer, i.e. a listener e lattice units off the line at p
// would have received then.

struct LineDemand {
  int p = 0;
  int e = 0;
  bool sat = false;
};

class LineBuilder {
 public:
  LineBuilder(int r, int s, int halo, int lo, int hi)
      : r_(r), s_(s), halo_(halo), lo_(lo), hi_(hi),
        informed_(static_cast<std::size_t>(hi - lo + 1), 0) {
    hmin_.resize(halo + 1);
    hmax_.resize(halo + 1);
    for (int e = 0; e <= halo; ++e) {
      const long long above = 1LL * r * r - 1LL * e * e;
      const long long below = 1LL * s * s - 1LL * e * e;
      hmax_[e] = above < 0 ? -1 : static_cast<int>(isqrt_ll(above));
      hmin_[e] = below < 0 ? 0 : static_cast<int>(isqrt_ll(below)) + 1;
      if (hmin_[e] > hmax_[e])
        throw PlanningError("no transmitter offset can serve lateral offset " +
                            std::to_string(e));
    }
    informed_[static_cast<std::size_t>(-lo)] = 1;
    demands_.reserve(static_cast<std::size_t>(halo + 1) * (hi - lo + 1));
    for (int e = 0; e <= halo; ++e)
      for (int p = lo; p <= hi; ++p)
        demands_.push_back({p, e, e == 0 && p == 0});
  }

  int r() const { return r_; }
  int s() const { return s_; }
  int halo() const { return halo_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int hmin(int e) const { return hmin_[e]; }
  int hmax(int e) const { return hmax_[e]; }
  int window_of(int p) const { return (p - lo_) / (2 * r_); }
  bool informed_at(int p) const { return informed_[p - lo_]; }
  long long collisions() const { return collisions_; }
  const std::vector<std::vector<int>>& rounds() const { return rounds_; }
  const std::vector<LineDemand>& demands() const { return demands_; }

  bool all_done() const {
    for (const LineDemand& d : demands_)
      if (!d.sat) return false;
    return true;
  }

  bool has_unsat_in(int window) const {
    for (const LineDemand& d : demands_)
      if (!d.sat && window_of(d.p) == window) return true;
    return false;
  }

  std::vector<int> unsat_ids_in(int window) const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < demands_.size(); ++i)
      if (!demands_[i].sat && window_of(demands_[i].p) == window)
        ids.push_back(static_cast<int>(i));
    return ids;
  }

  void apply_round(const std::vector<int>& txs) {
    for (int t : txs) {
      if (t < lo_ || t > hi_)
        throw PlanningError("scheduled transmitter is off the line");
      if (!informed_at(t))
        throw PlanningError("scheduled transmitter is not informed yet");
    }
    const int len = hi_ - lo_ + 1;
    clear_.assign(len, 0);
    jam_.assign(len, 0);
    for (int t : txs) {
      for (int d = s_ + 1; d <= r_; ++d) {
        if (t - d >= lo_) ++clear_[t - d - lo_];
        if (t + d <= hi_) ++clear_[t + d - lo_];
      }
      for (int d = 1; d <= s_; ++d) {
        if (t - d >= lo_) ++jam_[t - d - lo_];
        if (t + d <= hi_) ++jam_[t + d - lo_];
      }
    }
    for (int i = 0; i < len; ++i) {
      if (std::binary_search(txs.begin(), txs.end(), i + lo_)) continue;
      if (jam_[i] == 0 && clear_[i] == 1) informed_[i] = 1;
      if (jam_[i] == 0 && clear_[i] >= 2) ++collisions_;
    }
    for (LineDemand& d : demands_) {
      if (d.sat) continue;
      if (d.e == 0) {
        d.sat = informed_[d.p - lo_];
        continue;
      }
      int audible = 0, jammed = 0;
      const long long e2 = 1LL * d.e * d.e;
      for (int t : txs) {
        const long long h = d.p - t;
        const long long dd = h * h + e2;
        if (dd <= 1LL * s_ * s_)
          ++jammed;
        else if (dd <= 1LL * r_ * r_)
          ++audible;
      }
      if (jammed == 0 && audible == 1) d.sat = true;
    }
    rounds_.push_back(txs);
  }

 private:
  int r_, s_, halo_, lo_, hi_;
  std::vector<char> informed_;
  std::vector<LineDemand> demands_;
  std::vector<std::vector<int>> rounds_;
  std::vector<int> hmin_, hmax_;
  std::vector<int> clear_, jam_;
  long long collisions_ = 0;
};

// One ladder per 2r-wide window, at most x+1 rounds each. Candidates reach
// r-1 beyond the window so a rung can borrow an informed recruit next door;
// windows three apart (the ones sharing a span) then keep every simultaneous
// transmitter pair at least 2r+3 apart, so no listener ever has two audible
// transmitters and cross-window reception noise is impossible.
std::optional<std::vector<int>> plan_window(const LineBuilder& b, int window, int budget) {
  const int r = b.r(), s = b.s(), halo = b.halo();
  const int W = b.lo() + 2 * r * window;
  const int cl = std::max(b.lo(), W - (2 * r - 1));
  const int ch = std::min(b.hi(), W + 4 * r - 2);
  const int cand_lo = std::max(b.lo(), W - (r - 1));
  const int cand_hi = std::min(b.hi(), W + 3 * r - 2);
  const std::vector<int> ids = b.unsat_ids_in(window);

  std::string key;
  const auto push_int = [&key](int v) {
    for (int i = 0; i < 4; ++i) key.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  push_int(r);
  push_int(s);
  push_int(halo);
  push_int(budget);
  push_int(cl - W);
  push_int(ch - W);
  push_int(cand_lo - W);
  push_int(cand_hi - W);
  {
    std::uint64_t acc = 0;
    int nb = 0;
    for (int p = cl; p <= ch; ++p) {
      acc |= static_cast<std::uint64_t>(b.informed_at(p) ? 1 : 0) << nb;
      if (++nb == 64) {
        for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((acc >> (8 * i)) & 0xff));
        acc = 0;
        nb = 0;
      }
    }
    if (nb) for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((acc >> (8 * i)) & 0xff));
  }
  for (int id : ids) {
    push_int(b.demands()[id].p - W);
    push_int(b.demands()[id].e);
  }

  static std::mutex cache_mu;
  static std::map<std::string, std::optional<std::vector<int>>> cache;
  {
    std::lock_guard<std::mutex> lk(cache_mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      if (!it->second) return std::nullopt;
      std::vector<int> rungs = *it->second;
      for (int& t : rungs) t += W;
      return rungs;
    }
  }

  SearchProblem pb;
  pb.node_count = ch - cl + 1;
  pb.demand_count = static_cast<int>(ids.size());
  pb.budget = budget;
  pb.informed0.assign(pb.node_count, 0);
  for (int p = cl; p <= ch; ++p) pb.informed0[p - cl] = b.informed_at(p) ? 1 : 0;
  pb.sat0.assign(pb.demand_count, 0);
  for (int t = cand_lo; t <= cand_hi; ++t) {
    pb.slot_node.push_back(t - cl);
    std::vector<int> del;
    for (int d = s + 1; d <= r; ++d) {
      if (t - d >= cl) del.push_back(t - d - cl);
      if (t + d <= ch) del.push_back(t + d - cl);
    }
    std::sort(del.begin(), del.end());
    pb.delivers.push_back(std::move(del));
    std::vector<int> hit;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const LineDemand& d = b.demands()[ids[k]];
      const int h = std::abs(d.p - t);
      if (h >= b.hmin(d.e) && h <= b.hmax(d.e)) hit.push_back(static_cast<int>(k));
    }
    pb.satisfies.push_back(std::move(hit));
  }

  auto slots = ScheduleSearch(pb).run();
  std::optional<std::vector<int>> offsets;
  if (slots) {
    offsets.emplace();
    for (int slot : *slots) offsets->push_back(pb.slot_node[slot] + cl - W);
  }
  {
    std::lock_guard<std::mutex> lk(cache_mu);
    cache.emplace(std::move(key), offsets);
  }
  if (!offsets) return std::nullopt;
  std::vector<int> rungs = *offsets;
  for (int& t : rungs) t += W;
  return rungs;
}

// Whole-line search for short lines: one transmitter per round, full budget.
std::optional<std::vector<std::vector<int>>> plan_small_line(int n, int r, int s,
                                                             int halo, int lo,
                                                             int hi,
                                                             long long budget) {
  LineBuilder probe(r, s, halo, lo, hi);
  SearchProblem pb;
  pb.node_count = n;
  pb.demand_count = static_cast<int>(probe.demands().size());
  pb.budget = static_cast<int>(budget);
  pb.informed0.assign(n, 0);
  pb.informed0[-lo] = 1;
  pb.sat0.assign(pb.demand_count, 0);
  for (std::size_t i = 0; i < probe.demands().size(); ++i)
    pb.sat0[i] = probe.demands()[i].sat ? 1 : 0;
  for (int t = lo; t <= hi; ++t) {
    pb.slot_node.push_back(t - lo);
    std::vector<int> del;
    for (int d = s + 1; d <= r; ++d) {
      if (t - d >= lo) del.push_back(t - d - lo);
      if (t + d <= hi) del.push_back(t + d - lo);
    }
    std::sort(del.begin(), del.end());
    pb.delivers.push_back(std::move(del));
    std::vector<int> hit;
    for (std::size_t i = 0; i < probe.demands().size(); ++i) {
      const LineDemand& d = probe.demands()[i];
      const int h = std::abs(d.p - t);
      if (h >= probe.hmin(d.e) && h <= probe.hmax(d.e)) hit.push_back(static_cast<int>(i));
    }
    pb.satisfies.push_back(std::move(hit));
  }
  auto slots = ScheduleSearch(pb).run();
  if (!slots) return std::nullopt;
  std::vector<std::vector<int>> rounds;
  for (int slot : *slots) rounds.push_back({pb.slot_node[slot] + lo});
  return rounds;
}

class ScheduleProgram final : public NodeProgram {
 public:
  ScheduleProgram(Point origin, bool start_informed, std::vector<int> fire_rounds)
      : origin_(origin), informed_(start_informed), fire_(std::move(fire_rounds)) {}

  std::optional<Message> step(int round) override {
    while (next_ < fire_.size() && fire_[next_] < round) ++next_;
    if (next_ < fire_.size() && fire_[next_] == round && informed_) {
      ++next_;
      return Message{MessageKind::Data, origin_, 0};
    }
    return std::nullopt;
  }

  void observe(int, const Observation& obs) override {
    if (obs.heard && obs.msg.kind == MessageKind::Data) informed_ = true;
  }

  bool informed() const override { return informed_; }

 private:
  Point origin_;
  bool informed_ = false;
  std::vector<int> fire_;
  std::size_t next_ = 0;
};

SimResult run_schedule(const Network& net, const std::vector<std::vector<int>>& rounds,
                       int source, TraceMode mode) {
  std::vector<std::vector<int>> per_node(net.size());
  for (std::size_t t = 0; t < rounds.size(); ++t)
    for (int v : rounds[t]) per_node[v].push_back(static_cast<int>(t) + 1);
  std::vector<ScheduleProgram> progs;
  progs.reserve(net.size());
  for (int v = 0; v < net.size(); ++v)
    progs.emplace_back(net.position(v), v == source, per_node[v]);
  std::vector<NodeProgram*> ptrs;
  for (auto& p : progs) ptrs.push_back(&p);
  return run(net, ptrs, static_cast<int>(rounds.size()), mode);
}

}  // namespace

int ladder_steps(int r, int s) {
  check_radio_ints(r, s);
  if (r - s < 2) throw ImpossibilityError("ladder_steps: needs r - s >= 2");
  return guarded_steps(r, s);
}

long long line_bound(int n, int r, int s) {
  check_radio_ints(r, s);
  if (n < 1) throw std::invalid_argument("line_bound: n must be positive");
  return n / r + 3LL * (guarded_steps(r, s) + 1);
}

long long grid_bound(int n, int r, int s) {
  check_radio_ints(r, s);
  const long long m = isqrt_ll(n);
  if (n < 1 || m * m != n)
    throw std::invalid_argument("grid_bound: n must be a positive perfect square");
  return 4LL * (m / r) + 12LL * (guarded_steps(r, s) + 1);
}

LocalScheme make_local_scheme(int r, int s, int k, bool starred) {
  check_radio_ints(r, s);
  if (r - s < 2)
    throw ImpossibilityError("make_local_scheme: the rung stride r-(s+1) vanishes unless r - s >= 2");
  if (k < 0) throw std::invalid_argument("make_local_scheme: k must be nonnegative");
  LocalScheme sch;
  sch.r = r;
  sch.s = s;
  sch.k = k;
  sch.starred = starred;
  sch.steps = ladder_steps(r, s) + (starred ? 1 : 0);
  const int stride = r - (s + 1);
  for (int i = 0; i < sch.steps; ++i) {
    sch.transmitters.push_back(k + i * stride);
    sch.transmitters.push_back(k + i * stride + r);
  }
  return sch;
}

SimResult run_local_scheme(int n, int r, int s, int k, bool starred, TraceMode mode) {
  LocalScheme sch = make_local_scheme(r, s, k, starred);
  if (n < 1) throw std::invalid_argument("run_local_scheme: n must be positive");
  for (int t : sch.transmitters)
    if (t < 0 || t >= n)
      throw std::invalid_argument("run_local_scheme: scheme transmitter falls off the line");
  Network net = lattice_line(n, RadioParams{static_cast<double>(r), static_cast<double>(s), 1.0});
  std::vector<std::vector<int>> rounds;
  for (int t : sch.transmitters) rounds.push_back({t});
  return run_schedule(net, rounds, k, mode);
}

LinePlan plan_line_broadcast(int n, int r, int s, int source, int halo) {
  check_radio_ints(r, s);
  if (n < 1) throw std::invalid_argument("plan_line_broadcast: n must be positive");
  if (source < 0 || source >= n)
    throw std::invalid_argument("plan_line_broadcast: source out of range");
  if (halo < 0) throw std::invalid_argument("plan_line_broadcast: halo must be >= 0");
  if (!line_feasible(r, s))
    throw ImpossibilityError(
        "line broadcast with r - s = 1 cannot leave the source's residue class");
  if (!line_links_connected(n, r, s))
    throw ImpossibilityError(
        "line link graph is disconnected: some node has no neighbor at a distance in (s, r]");

  const int lo = -source, hi = n - 1 - source;
  LinePlan plan;
  plan.n = n;
  plan.r = r;
  plan.s = s;
  plan.source = source;
  plan.halo = halo;
  plan.bound = line_bound(n, r, s);

  std::vector<std::vector<int>> rounds;
  if (n <= 4 * r) {
    auto got = plan_small_line(n, r, s, halo, lo, hi, plan.bound);
    if (!got)
      throw PlanningError("no short-line schedule meets every demand within the budget");
    rounds = std::move(*got);
  } else {
    LineBuilder base(r, s, halo, lo, hi);
    // Sparse pass: the source, then the positive multiples of r below the top
    // one, then the negative multiples above the bottom one. Each informs the
    // next, one transmitter per round.
    base.apply_round({0});
    const int pos = hi / r, neg = -lo / r;
    for (int j = 1; j <= pos - 1; ++j) base.apply_round({j * r});
    for (int j = 1; j <= neg - 1; ++j) base.apply_round({-j * r});

    const int windows = (n - 1) / (2 * r) + 1;
    int j_last = -1;
    for (int j = 0; j < windows; ++j)
      if (base.has_unsat_in(j)) j_last = j;

    if (j_last < 0) {
      rounds = base.rounds();
    } else {
      // Window j runs its ladder in span (j + shift) mod 3. The preferred
      // shift puts the last demand-bearing window in the final span so its
      // predecessor has already run.
      const int pref = ((2 - (j_last % 3)) % 3 + 3) % 3;
      const int cap = guarded_steps(r, s) + 1;
      bool planned = false;
      for (int probe = 0; probe < 3 && !planned; ++probe) {
        const int shift = (pref + probe) % 3;
        LineBuilder b = base;
        bool ok = true;
        for (int span = 0; span < 3 && ok; ++span) {
          // Windows in one span run in parallel, so the span costs as many
          // rounds as its longest ladder. Most ladders fit in cap rounds; a
          // truncated line can starve a window of usable rungs, and those few
          // may draw on the slack the earlier rounds left under the bound.
          const long long pool =
              plan.bound - static_cast<long long>(b.rounds().size());
          std::vector<std::vector<int>> ladders;
          for (int j = 0; j < windows; ++j) {
            if ((j + shift) % 3 != span || !b.has_unsat_in(j)) continue;
            auto rungs = plan_window(b, j, cap);
            if (!rungs && pool > cap) {
              const int relaxed =
                  static_cast<int>(std::min<long long>(pool, 4LL * cap));
              rungs = plan_window(b, j, relaxed);
            }
            if (!rungs) {
              ok = false;
              break;
            }
            ladders.push_back(std::move(*rungs));
          }
          if (!ok) break;
          std::size_t span_len = 0;
          for (const auto& l : ladders) span_len = std::max(span_len, l.size());
          for (std::size_t t = 0; t < span_len; ++t) {
            std::vector<int> txs;
            for (const auto& l : ladders)
              if (t < l.size()) txs.push_back(l[t]);
            std::sort(txs.begin(), txs.end());
            b.apply_round(txs);
          }
        }
        if (ok && b.all_done()) {
          rounds = b.rounds();
          planned = true;
        }
      }
      if (!planned)
        throw PlanningError("no window ladder assignment meets every demand within the budget");
    }
  }

  // Independent replay of the finished schedule: informed transmitters only,
  // every demand met, no collision-blocked reception, inside the budget.
  LineBuilder verify(r, s, halo, lo, hi);
  for (const auto& txs : rounds) verify.apply_round(txs);
  if (!verify.all_done())
    throw PlanningError("schedule replay leaves a demand unmet");
  if (verify.collisions() != 0)
    throw PlanningError("schedule replay produced a collision-blocked reception");
  if (static_cast<long long>(rounds.size()) > plan.bound)
    throw PlanningError("schedule exceeds the round budget");

  plan.rounds.reserve(rounds.size());
  for (auto& txs : rounds) {
    for (int& t : txs) t += source;
    plan.rounds.push_back(std::move(txs));
  }
  return plan;
}

GridPlan plan_grid_broadcast(int n, int r, int s, int source) {
  check_radio_ints(r, s);
  const long long mll = isqrt_ll(n);
  if (n < 1 || mll * mll != n)
    throw std::invalid_argument("plan_grid_broadcast: n must be a positive perfect square");
  const int m = static_cast<int>(mll);
  if (source < 0 || source >= n)
    throw std::invalid_argument("plan_grid_broadcast: source out of range");

  GridPlan plan;
  plan.n = n;
  plan.m = m;
  plan.r = r;
  plan.s = s;
  plan.source = source;
  plan.d = static_cast<int>(isqrt_ll(3LL * r * r) / 2);
  plan.bound = grid_bound(n, r, s);
  if (n == 1) return plan;

  if (r < 2)
    throw ImpossibilityError("grid broadcast needs r >= 2: the band spacing floor(sqrt(3)r/2) vanishes");
  if (r - s < 2)
    throw ImpossibilityError("grid broadcast needs r - s >= 2 for the column ladders");

  Network net = lattice_grid(n, RadioParams{static_cast<double>(r), static_cast<double>(s), 1.0});
  if (!net.connected())
    throw ImpossibilityError("grid link graph is disconnected; no schedule can inform it");

  const int sx = source % m, sy = source / m;

  if (!line_links_connected(m, r, s)) {
    // Rows and columns cannot carry their own sweeps (axis-aligned links leave
    // the 1-D graph disconnected), yet diagonal links still connect the grid:
    // fall back to one sequential schedule, one transmitter per round.
    SearchProblem pb;
    pb.node_count = n;
    pb.demand_count = 0;
    pb.budget = static_cast<int>(plan.bound);
    pb.informed0.assign(n, 0);
    pb.informed0[source] = 1;
    for (int v = 0; v < n; ++v) {
      pb.slot_node.push_back(v);
      pb.delivers.push_back(net.neighbors_of(v));
    }
    pb.satisfies.assign(n, {});
    auto slots = ScheduleSearch(pb).run();
    if (!slots)
      throw PlanningError("no short-grid schedule informs every node within the budget");
    for (int slot : *slots) plan.rounds.push_back({slot});
  } else {
    const int d = plan.d;
    // Row sweep through the source's row, then three time-disjoint groups of
    // column sweeps at the odd multiples of d: group 0 owns d, 7d, 13d, ...,
    // group 1 owns 3d, 9d, ..., group 2 owns 5d, 11d, .... Same-group columns
    // sit 6d > 2r apart and every column schedule is the same template, so
    // simultaneous transmitters share a row and never interfere.
    LinePlan row = plan_line_broadcast(m, r, s, sx, 0);
    LinePlan column = plan_line_broadcast(m, r, s, sy, d);

    int od_max = -1;
    for (int k = 0;; ++k) {
      const int c = (2 * k + 1) * d;
      if (c > m - 1) break;
      plan.phase_columns[k % 3].push_back(c);
      od_max = c;
    }
    if (od_max + d < m - 1 || od_max < 0) {
      // The rightmost band falls short: column m-1 runs with the group that
      // would have owned the next odd multiple. Its nearest same-group
      // neighbor is at least 4d+1 > 2r away.
      const int k_next = od_max < 0 ? 0 : (od_max / d + 1) / 2;
      plan.phase_columns[k_next % 3].push_back(m - 1);
    }
    for (int x = 0; x < m; ++x) {
      bool covered = false;
      for (const auto& cols : plan.phase_columns)
        for (int c : cols)
          if (std::abs(x - c) <= d) covered = true;
      if (!covered) throw PlanningError("column bands leave a column unserved");
    }

    for (const auto& txs : row.rounds) {
      std::vector<int> ids;
      for (int x : txs) ids.push_back(sy * m + x);
      std::sort(ids.begin(), ids.end());
      plan.rounds.push_back(std::move(ids));
    }
    for (const auto& cols : plan.phase_columns) {
      if (cols.empty()) continue;
      for (const auto& txs : column.rounds) {
        std::vector<int> ids;
        for (int c : cols)
          for (int y : txs) ids.push_back(y * m + c);
        std::sort(ids.begin(), ids.end());
        plan.rounds.push_back(std::move(ids));
      }
    }
  }

  if (static_cast<long long>(plan.rounds.size()) > plan.bound)
    throw PlanningError("grid schedule exceeds the round budget");

  // Exact replay on the grid: transmitters informed, nobody collision-blocked,
  // everyone informed at the end.
  std::vector<char> informed(n, 0);
  informed[source] = 1;
  for (const auto& txs : plan.rounds) {
    for (int v : txs)
      if (!informed[v]) throw PlanningError("grid schedule fires an uninformed node");
    RoundDeliveries rd = deliveries_for_round(net, txs);
    if (!rd.collision_nodes.empty())
      throw PlanningError("grid schedule produced a collision-blocked reception");
    for (int v = 0; v < n; ++v)
      if (rd.heard_from[v] >= 0) informed[v] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (!informed[v]) throw PlanningError("grid schedule replay leaves a node uninformed");

  return plan;
}

SimResult run_algorithm_a(int n, int r, int s, int source, TraceMode mode) {
  LinePlan plan = plan_line_broadcast(n, r, s, source, 0);
  Network net = lattice_line(n, RadioParams{static_cast<double>(r), static_cast<double>(s), 1.0});
  return run_schedule(net, plan.rounds, source, mode);
}

SimResult run_algorithm_a2(int n, int r, int s, int source, TraceMode mode) {
  GridPlan plan = plan_grid_broadcast(n, r, s, source);
  Network net = lattice_grid(n, RadioParams{static_cast<double>(r), static_cast<double>(s), 1.0});
  return run_schedule(net, plan.rounds, source, mode);
}

}  // namespace swampcast
