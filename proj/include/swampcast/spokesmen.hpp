#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "swampcast/partition.hpp"

namespace swampcast {

// Relay roles inside a line block, in transmission-slot order. Boundary and
// range roles go to the occupant of the extreme home cell fully inside some
// heard transmission's coverage; potential roles to the occupant of the cell
// the coverage edge cuts through.
enum class LineRole {
  LeftBoundary = 0,
  RightBoundary = 1,
  LeftRange = 2,
  RightRange = 3,
  LeftPotential = 4,
  RightPotential = 5,
};
inline constexpr int kLineSlots = 6;

// Static geometry one node derives for its own block: the block box, the
// (clipped) home cells, and which cells hold a node. Occupancy comes from the
// neighborhood census; a block's diameter is under 1, so members know every
// other member.
struct LineBlockGeometry {
  Box block;
  std::vector<Box> homes;     // index 0-based; trailing cells may be empty
  std::vector<int> occupied;  // sorted 0-based home indices holding a node
};

LineBlockGeometry line_block_geometry(const Partition& part, int region,
                                      int block,
                                      std::vector<int> occupied_homes);

// Designated home cell per role, computed from the coverage intervals of the
// transmissions in `origins` (unit range, jam radius s). A node claims
// exactly the roles whose designated cell is its own.
//
// Any two nodes claiming the same role from different heard origins is
// impossible: coverage pieces entering the block across the same edge are
// nested intervals, so the claimant designated by the shorter one sits inside
// the longer one's coverage, heard that transmission too, and defers.
//
// Blocks with a single home cell are special: there the block side exceeds
// 1 - s, a coverage piece can lie strictly between the edges, and the edge
// sweep would miss it. The lone occupant takes the boundary slot whenever any
// heard coverage overlaps its cell.
std::array<std::optional<int>, kLineSlots> line_role_homes(
    const LineBlockGeometry& g, double s, const std::vector<double>& origins);

// Plane blocks relay along every row, column and diagonal of their k x k home
// grid: the informed nodes in the homes nearest each end of each line
// transmit. Slot calendar per block, fixed at 12k-4 slots:
//   rows i=1..k:      E_i, W_i
//   columns i=1..k:   N_i, S_i
//   diagonals i=1..2k-1: NE_i, SE_i, NW_i, SW_i
// Row 1 is the northernmost row, column 1 the westernmost. Diagonal index i
// counts the NW-to-SE family by row-col and the SW-to-NE family by row+col.
enum class PlaneRole { East, West, North, South, NE, SE, NW, SW };

struct PlaneSlot {
  PlaneRole role;
  int line = 0;  // 1-based row/column/diagonal index
};

int plane_slots_per_block(int k);
PlaneSlot plane_slot_decode(int k, int slot);

// Designated home (0-based, row-major from the NW corner) per calendar slot,
// or -1 when the slot's line holds no informed node. `informed` has k*k
// flags: homes with an informed occupant.
std::vector<int> plane_slot_homes(int k,
                                  const std::vector<std::uint8_t>& informed);

// Homes holding at least one label under the current flags, sorted.
std::vector<int> plane_spokesman_homes(
    int k, const std::vector<std::uint8_t>& informed);

// For an informed non-spokesman u and a point p outside its block: does some
// spokesman sit strictly closer to p than u, and one strictly farther? Both
// must hold whenever the election is sound; distances compare exactly.
std::pair<bool, bool> check_closer_farther(const std::vector<Point>& spokesmen,
                                           const Point& u, const Point& p);

}  // namespace swampcast
