#pragma once

#include <random>
#include <string>
#include <vector>

#include "swampcast/geometry.hpp"
#include "swampcast/partition.hpp"
#include "swampcast/radio.hpp"

namespace swampcast {

// Brute-force reimplementations of the link and reception rules. These
// deliberately share no predicate code with the Network/Simulation classes,
// so agreement between the two paths is evidence rather than tautology.

std::vector<int> oracle_neighbors(const Network& net, int u);

RoundDeliveries oracle_deliveries(const Network& net,
                                  const std::vector<int>& transmitters);

struct FloodingResult {
  std::vector<int> hops;  // -1 where unreachable
  int eccentricity = 0;   // max hop count over reachable nodes
  bool connected = true;
};

// BFS layers of the link graph, ignoring collisions and swamping: the
// idealized round count a perfect broadcast would need, used as the distance
// reference when judging protocol round counts.
FloodingResult flooding_baseline(const Network& net, int source);

struct CheckResult {
  bool pass = true;
  std::string detail;  // witness description when pass is false
};

// Every home of the partition holds at most one node of the placement.
CheckResult check_single_occupancy(const Partition& part, const Network& net);

// Nodes sharing (block, home) labels in distinct regions are > 1 apart.
CheckResult check_label_separation(const Partition& part, const Network& net);

// Same-label blocks of distinct regions keep all point pairs > 1 apart,
// probed at clipped-box corners, centers, and sampled interior points.
CheckResult check_block_separation(const Partition& part,
                                   std::mt19937_64& rng, int samples = 16);

// Line networks: for nodes u, v with dist(u,v) <= r - s and any node w
// lying between them, every neighbor of w is a neighbor of u or of v.
CheckResult check_range_overlap(const Network& net);

// Minimum covered-interval length on a line parallel to the transmitter's
// line at the given offset: a transmitter reaches the points at in-plane
// distance in (s, r]. Below offset s the covered set is two symmetric
// segments (per-side length returned); above s it is one centered segment.
// Offsets beyond r get no coverage at all.
double annulus_line_coverage(double r, double s, double dist);

}  // namespace swampcast
