#pragma once

#include <compare>
#include <utility>

#include "swampcast/geometry.hpp"

namespace swampcast {

// region is 0-based; block and home are 1-based within their parent.
struct PartitionLabel {
  int region = -1;
  int block = 0;
  int home = 0;
  auto operator<=>(const PartitionLabel&) const = default;
};

// Closed box used for distance queries; degenerate in y for line partitions.
struct Box {
  double xlo = 0.0, xhi = 0.0;
  double ylo = 0.0, yhi = 0.0;
};

double point_box_distance(const Point& p, const Box& b);

// Three-level grid over the deployment domain, for the unit-range model
// (r = 1, 0 <= s < 1). Regions have side 3 and only gate parallelism.
//
// Line: blocks have length l = max(1-s, gamma), homes length gamma, and a
// segment includes its left endpoint and excludes its right one.
//
// Plane: blocks are l x l with l = max((1-s)/(3*sqrt 2), gamma/sqrt 2), homes
// are (gamma/sqrt 2) square, cells include their North and West borders, and
// labels run row-major West to East, North to South.
//
// Every home is small enough that a gamma-separated placement puts at most
// one node in it, and any two points carrying the same (block, home) label in
// distinct regions are more than distance 1 apart. Trailing cells are clipped
// at their parent's boundary but keep full labels.
class Partition {
 public:
  static Partition line(double s, double gamma, double length);
  static Partition plane(double s, double gamma, double width, double height);

  int dim() const { return dim_; }
  double s() const { return s_; }
  double gamma() const { return gamma_; }
  double l() const { return l_; }
  double home_side() const { return home_side_; }
  int mu() const { return mu_; }                       // blocks per region
  int nu() const { return nu_; }                       // homes per block
  int slots() const { return mu_ * nu_; }
  int blocks_per_side() const { return mu_side_; }     // line: mu
  int homes_per_side() const { return nu_side_; }      // line: nu
  int regions() const { return region_rows_ * region_cols_; }
  int region_rows() const { return region_rows_; }
  int region_cols() const { return region_cols_; }

  PartitionLabel label_of(const Point& p) const;
  int schedule_index(const PartitionLabel& lab) const {
    return (lab.block - 1) * nu_ + (lab.home - 1);
  }
  std::pair<int, int> slot_of(int index) const {  // -> (block, home)
    return {index / nu_ + 1, index % nu_ + 1};
  }

  Point home_center(const PartitionLabel& lab) const;
  Box home_box(const PartitionLabel& lab) const;
  Box block_box(int region, int block) const;
  Box region_box(int region) const;

 private:
  Partition() = default;

  int dim_ = 1;
  double s_ = 0.0;
  double gamma_ = 1.0;
  double domain_w_ = 0.0;  // line length, or plane width
  double domain_h_ = 0.0;
  double l_ = 1.0;
  double home_side_ = 1.0;
  int mu_side_ = 1;
  int nu_side_ = 1;
  int mu_ = 1;
  int nu_ = 1;
  int region_rows_ = 1;
  int region_cols_ = 1;
};

}  // namespace swampcast
