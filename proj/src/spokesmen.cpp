#include "swampcast/spokesmen.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace swampcast {

LineBlockGeometry line_block_geometry(const Partition& part, int region,
                                      int block,
                                      std::vector<int> occupied_homes) {
  if (part.dim() != 1)
    throw std::invalid_argument("line_block_geometry: line partitions only");
  LineBlockGeometry g;
  g.block = part.block_box(region, block);
  g.homes.reserve(part.nu());
  for (int h = 1; h <= part.nu(); ++h)
    g.homes.push_back(part.home_box({region, block, h}));
  std::sort(occupied_homes.begin(), occupied_homes.end());
  occupied_homes.erase(
      std::unique(occupied_homes.begin(), occupied_homes.end()),
      occupied_homes.end());
  for (int h : occupied_homes) {
    if (h < 0 || h >= part.nu())
      throw std::invalid_argument("line_block_geometry: home out of range");
  }
  g.occupied = std::move(occupied_homes);
  return g;
}

std::array<std::optional<int>, kLineSlots> line_role_homes(
    const LineBlockGeometry& g, double s, const std::vector<double>& origins) {
  std::array<std::optional<int>, kLineSlots> out;
  const double blo = g.block.xlo;
  const double bhi = g.block.xhi;
  if (g.occupied.empty() || origins.empty() || !(bhi > blo)) return out;

  if (g.homes.size() == 1) {
    // One home per block happens when the block side is the separation bound,
    // and only then can a coverage piece sit strictly inside the block, out
    // of reach of the edge sweep below. The lone occupant stands in for every
    // role: it relays as soon as any transmission's coverage enters its cell.
    const Box& c = g.homes[0];
    for (double o : origins) {
      const double piece[2][2] = {{o - 1.0, o - s}, {o + s, o + 1.0}};
      for (const auto& pc : piece) {
        if (pc[1] > c.xlo && pc[0] < c.xhi) {
          out[static_cast<int>(LineRole::RightBoundary)] = g.occupied.front();
          return out;
        }
      }
    }
    return out;
  }

  // A transmission at o is heard on [o-1, o-s) and (o+s, o+1]. Each piece
  // crossing the block's left edge reaches rightward to rho; each crossing
  // the right edge reaches leftward to lam. Pieces over the same edge nest,
  // so only the farthest reach matters.
  double rho = -std::numeric_limits<double>::infinity();
  double lam = std::numeric_limits<double>::infinity();
  for (double o : origins) {
    const double piece[2][2] = {{o - 1.0, o - s}, {o + s, o + 1.0}};
    for (const auto& pc : piece) {
      if (pc[0] <= blo && pc[1] > blo) rho = std::max(rho, std::min(pc[1], bhi));
      if (pc[1] >= bhi && pc[0] < bhi) lam = std::min(lam, std::max(pc[0], blo));
    }
  }

  const auto cell = [&](int h) -> const Box& { return g.homes[h]; };

  if (rho > blo) {
    std::optional<int> contained, straddle;
    for (int h : g.occupied) {
      if (cell(h).xhi <= rho) contained = h;  // occupied is sorted: keeps max
      if (cell(h).xlo < rho && rho < cell(h).xhi) straddle = h;
    }
    if (contained) {
      const bool extreme = *contained == g.occupied.back();
      out[static_cast<int>(extreme ? LineRole::RightBoundary
                                   : LineRole::RightRange)] = *contained;
    }
    if (straddle)
      out[static_cast<int>(LineRole::RightPotential)] = *straddle;
  }
  if (lam < bhi) {
    std::optional<int> contained, straddle;
    for (int h : g.occupied) {
      if (cell(h).xlo >= lam && !contained) contained = h;  // min qualifying
      if (cell(h).xlo < lam && lam < cell(h).xhi) straddle = h;
    }
    if (contained) {
      const bool extreme = *contained == g.occupied.front();
      out[static_cast<int>(extreme ? LineRole::LeftBoundary
                                   : LineRole::LeftRange)] = *contained;
    }
    if (straddle)
      out[static_cast<int>(LineRole::LeftPotential)] = *straddle;
  }
  return out;
}

int plane_slots_per_block(int k) {
  if (k < 1) throw std::invalid_argument("plane_slots_per_block: k < 1");
  return 12 * k - 4;
}

PlaneSlot plane_slot_decode(int k, int slot) {
  if (slot < 0 || slot >= plane_slots_per_block(k))
    throw std::invalid_argument("plane_slot_decode: slot out of range");
  if (slot < 2 * k)
    return {slot % 2 == 0 ? PlaneRole::East : PlaneRole::West, slot / 2 + 1};
  slot -= 2 * k;
  if (slot < 2 * k)
    return {slot % 2 == 0 ? PlaneRole::North : PlaneRole::South, slot / 2 + 1};
  slot -= 2 * k;
  static constexpr PlaneRole diag[4] = {PlaneRole::NE, PlaneRole::SE,
                                        PlaneRole::NW, PlaneRole::SW};
  return {diag[slot % 4], slot / 4 + 1};
}

std::vector<int> plane_slot_homes(int k,
                                  const std::vector<std::uint8_t>& informed) {
  if (static_cast<int>(informed.size()) != k * k)
    throw std::invalid_argument("plane_slot_homes: flag count != k*k");
  const int slots = plane_slots_per_block(k);
  std::vector<int> out(slots, -1);
  const auto consider = [&](int slot, int row, int col) {
    const int home = row * k + col;
    if (!informed[home]) return;
    // lines scan north to south, so the first informed home is the
    // north/west end and the last is the south/east end
    switch (plane_slot_decode(k, slot).role) {
      case PlaneRole::West:
      case PlaneRole::North:
      case PlaneRole::NW:
      case PlaneRole::NE:
        if (out[slot] == -1) out[slot] = home;
        break;
      default:
        out[slot] = home;
    }
  };
  for (int row = 0; row < k; ++row) {
    for (int col = 0; col < k; ++col) {
      consider(2 * row, row, col);      // E_{row+1}
      consider(2 * row + 1, row, col);  // W_{row+1}
      consider(2 * k + 2 * col, row, col);      // N_{col+1}
      consider(2 * k + 2 * col + 1, row, col);  // S_{col+1}
      const int nwse = row - col + k - 1;  // 0-based NW-SE diagonal
      const int swne = row + col;          // 0-based SW-NE diagonal
      consider(4 * k + 4 * swne + 0, row, col);  // NE
      consider(4 * k + 4 * nwse + 1, row, col);  // SE
      consider(4 * k + 4 * nwse + 2, row, col);  // NW
      consider(4 * k + 4 * swne + 3, row, col);  // SW
    }
  }
  return out;
}

std::vector<int> plane_spokesman_homes(
    int k, const std::vector<std::uint8_t>& informed) {
  std::vector<int> homes = plane_slot_homes(k, informed);
  std::sort(homes.begin(), homes.end());
  homes.erase(std::unique(homes.begin(), homes.end()), homes.end());
  if (!homes.empty() && homes.front() == -1) homes.erase(homes.begin());
  return homes;
}

std::pair<bool, bool> check_closer_farther(const std::vector<Point>& spokesmen,
                                           const Point& u, const Point& p) {
  bool closer = false, farther = false;
  const double du = dist(u, p);
  for (const Point& w : spokesmen) {
    const double dw = dist(w, p);
    if (dw < du) closer = true;
    if (dw > du) farther = true;
  }
  return {closer, farther};
}

}  // namespace swampcast
