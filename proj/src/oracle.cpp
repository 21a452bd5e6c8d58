#include "swampcast/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

namespace swampcast {

namespace {

// Deliberately separate from Network's squared-distance predicates.
double straight_line(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

std::vector<int> oracle_neighbors(const Network& net, int u) {
  std::vector<int> out;
  const auto& radio = net.radio();
  for (int v = 0; v < net.size(); ++v) {
    if (v == u) continue;
    double d = straight_line(net.position(u), net.position(v));
    if (d > radio.s && d <= radio.r) out.push_back(v);
  }
  return out;
}

RoundDeliveries oracle_deliveries(const Network& net,
                                  const std::vector<int>& transmitters) {
  const auto& radio = net.radio();
  RoundDeliveries out;
  out.heard_from.assign(net.size(), -1);
  std::vector<char> is_tx(net.size(), 0);
  for (int t : transmitters) is_tx[t] = 1;
  for (int v = 0; v < net.size(); ++v) {
    if (is_tx[v]) continue;
    int clear = 0, jam = 0, from = -1;
    for (int t : transmitters) {
      double d = straight_line(net.position(v), net.position(t));
      if (d <= radio.s) {
        ++jam;
      } else if (d <= radio.r) {
        ++clear;
        from = t;
      }
    }
    if (jam >= 1) {
      out.swamp_nodes.push_back(v);
    } else if (clear >= 2) {
      out.collision_nodes.push_back(v);
    } else if (clear == 1) {
      out.heard_from[v] = from;
    }
  }
  return out;
}

FloodingResult flooding_baseline(const Network& net, int source) {
  if (source < 0 || source >= net.size())
    throw std::invalid_argument("flooding_baseline: bad source");
  FloodingResult res;
  res.hops.assign(net.size(), -1);
  res.hops[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : net.neighbors_of(u)) {
      if (res.hops[v] < 0) {
        res.hops[v] = res.hops[u] + 1;
        res.eccentricity = std::max(res.eccentricity, res.hops[v]);
        queue.push_back(v);
      }
    }
  }
  res.connected =
      std::none_of(res.hops.begin(), res.hops.end(), [](int h) { return h < 0; });
  return res;
}

CheckResult check_single_occupancy(const Partition& part, const Network& net) {
  std::map<PartitionLabel, int> seen;
  for (int u = 0; u < net.size(); ++u) {
    PartitionLabel lab = part.label_of(net.position(u));
    auto [it, fresh] = seen.emplace(lab, u);
    if (!fresh) {
      std::ostringstream os;
      os << "nodes " << it->second << " and " << u << " share region "
         << lab.region << " block " << lab.block << " home " << lab.home;
      return {false, os.str()};
    }
  }
  return {};
}

CheckResult check_label_separation(const Partition& part, const Network& net) {
  struct Entry {
    int node;
    int region;
  };
  std::map<std::pair<int, int>, std::vector<Entry>> by_slot;
  for (int u = 0; u < net.size(); ++u) {
    PartitionLabel lab = part.label_of(net.position(u));
    by_slot[{lab.block, lab.home}].push_back({u, lab.region});
  }
  for (const auto& [slot, entries] : by_slot) {
    for (size_t i = 0; i < entries.size(); ++i) {
      for (size_t j = i + 1; j < entries.size(); ++j) {
        if (entries[i].region == entries[j].region) continue;
        double d = straight_line(net.position(entries[i].node),
                                 net.position(entries[j].node));
        if (d <= 1.0) {
          std::ostringstream os;
          os << "same-label nodes " << entries[i].node << " and "
             << entries[j].node << " at distance " << d;
          return {false, os.str()};
        }
      }
    }
  }
  return {};
}

CheckResult check_block_separation(const Partition& part, std::mt19937_64& rng,
                                   int samples) {
  auto probe_points = [&](const Box& b) {
    std::vector<Point> pts = {{b.xlo, b.ylo},
                              {b.xlo, b.yhi},
                              {b.xhi, b.ylo},
                              {b.xhi, b.yhi},
                              {(b.xlo + b.xhi) / 2, (b.ylo + b.yhi) / 2}};
    for (int i = 0; i < samples; ++i)
      pts.push_back({uniform_double(rng, b.xlo, b.xhi),
                     uniform_double(rng, b.ylo, b.yhi)});
    return pts;
  };
  for (int ra = 0; ra < part.regions(); ++ra) {
    for (int rb = ra + 1; rb < part.regions(); ++rb) {
      for (int blk = 1; blk <= part.mu(); ++blk) {
        auto pa = probe_points(part.block_box(ra, blk));
        auto pb = probe_points(part.block_box(rb, blk));
        for (const Point& a : pa) {
          for (const Point& b : pb) {
            double d = straight_line(a, b);
            if (d <= 1.0) {
              std::ostringstream os;
              os << "block " << blk << " of regions " << ra << "/" << rb
                 << " has points at distance " << d;
              return {false, os.str()};
            }
          }
        }
      }
    }
  }
  return {};
}

CheckResult check_range_overlap(const Network& net) {
  if (net.dim() != 1)
    throw std::invalid_argument("check_range_overlap: line networks only");
  const auto& radio = net.radio();
  int n = net.size();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      double xu = net.position(u).x, xv = net.position(v).x;
      if (xu > xv || xv - xu > radio.r - radio.s) continue;
      for (int w = 0; w < n; ++w) {
        double xw = net.position(w).x;
        if (xw < xu || xw > xv) continue;
        for (int z : oracle_neighbors(net, w)) {
          double du = std::abs(net.position(z).x - xu);
          double dv = std::abs(net.position(z).x - xv);
          bool via_u = du > radio.s && du <= radio.r;
          bool via_v = dv > radio.s && dv <= radio.r;
          if (!via_u && !via_v) {
            std::ostringstream os;
            os << "neighbor " << z << " of " << w
               << " is unreachable from both " << u << " and " << v;
            return {false, os.str()};
          }
        }
      }
    }
  }
  return {};
}

double annulus_line_coverage(double r, double s, double dist) {
  if (!(r > 0.0) || s < 0.0 || s > r || dist < 0.0)
    throw std::invalid_argument("annulus_line_coverage: bad arguments");
  if (dist > r) return 0.0;
  double outer = std::sqrt(r * r - dist * dist);
  if (dist > s) return 2.0 * outer;
  double inner = std::sqrt(s * s - dist * dist);
  return outer - inner;  // per-side segment length
}

}  // namespace swampcast
