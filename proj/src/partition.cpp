#include "swampcast/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swampcast {

namespace {

constexpr double kNudge = 1e-12;
constexpr double kDomainTol = 1e-9;

// Ceiling with a guard so values an ulp above an integer don't round up.
int ceil_nudged(double x) { return static_cast<int>(std::ceil(x - kNudge)); }

void check_params(double s, double gamma) {
  if (!(s >= 0.0 && s < 1.0))
    throw std::invalid_argument("partition: need 0 <= s < 1");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("partition: need 0 < gamma <= 1");
}

// Index of the cell of width `side` containing offset t in [0, span), with
// `count` cells tiling the span (the last one possibly clipped short).
int cell_index(double t, double side, int count) {
  int i = static_cast<int>(std::floor(t / side));
  return std::clamp(i, 0, count - 1);
}

}  // namespace

double point_box_distance(const Point& p, const Box& b) {
  double dx = std::max({0.0, b.xlo - p.x, p.x - b.xhi});
  double dy = std::max({0.0, b.ylo - p.y, p.y - b.yhi});
  return std::sqrt(dx * dx + dy * dy);
}

Partition Partition::line(double s, double gamma, double length) {
  check_params(s, gamma);
  if (!(length >= 0.0)) throw std::invalid_argument("partition: bad length");
  Partition p;
  p.dim_ = 1;
  p.s_ = s;
  p.gamma_ = gamma;
  p.domain_w_ = length;
  p.l_ = std::max(1.0 - s, gamma);
  p.home_side_ = gamma;
  p.mu_side_ = ceil_nudged(3.0 / p.l_);
  p.nu_side_ = ceil_nudged(p.l_ / gamma);
  p.mu_ = p.mu_side_;
  p.nu_ = p.nu_side_;
  p.region_rows_ = 1;
  p.region_cols_ = static_cast<int>(std::floor(length / 3.0)) + 1;
  return p;
}

Partition Partition::plane(double s, double gamma, double width,
                           double height) {
  check_params(s, gamma);
  if (!(width >= 0.0 && height >= 0.0))
    throw std::invalid_argument("partition: bad extent");
  const double rt2 = std::sqrt(2.0);
  Partition p;
  p.dim_ = 2;
  p.s_ = s;
  p.gamma_ = gamma;
  p.domain_w_ = width;
  p.domain_h_ = height;
  p.l_ = std::max((1.0 - s) / (3.0 * rt2), gamma / rt2);
  p.home_side_ = gamma / rt2;
  p.mu_side_ = ceil_nudged(3.0 / p.l_);
  p.nu_side_ = ceil_nudged(p.l_ / p.home_side_);
  p.mu_ = p.mu_side_ * p.mu_side_;
  p.nu_ = p.nu_side_ * p.nu_side_;
  p.region_rows_ = static_cast<int>(std::floor(height / 3.0)) + 1;
  p.region_cols_ = static_cast<int>(std::floor(width / 3.0)) + 1;
  return p;
}

// Internally the plane is addressed in (x, v) with v = height - y, so every
// cell is [lo, hi) on both axes and label order is plain row-major.
PartitionLabel Partition::label_of(const Point& p) const {
  if (p.x < -kDomainTol || p.x > domain_w_ + kDomainTol)
    throw std::invalid_argument("label_of: x outside domain");
  double v = 0.0;
  if (dim_ == 2) {
    if (p.y < -kDomainTol || p.y > domain_h_ + kDomainTol)
      throw std::invalid_argument("label_of: y outside domain");
    v = std::max(0.0, domain_h_ - p.y);
  } else if (p.y != 0.0) {
    throw std::invalid_argument("label_of: line point with nonzero y");
  }
  double x = std::max(0.0, p.x);

  int col = std::clamp(static_cast<int>(std::floor(x / 3.0)), 0,
                       region_cols_ - 1);
  int row = std::clamp(static_cast<int>(std::floor(v / 3.0)), 0,
                       region_rows_ - 1);
  double tx = x - 3.0 * col;
  double tv = v - 3.0 * row;

  int bx = cell_index(tx, l_, mu_side_);
  int hx = cell_index(tx - bx * l_, home_side_, nu_side_);
  PartitionLabel lab;
  lab.region = row * region_cols_ + col;
  if (dim_ == 1) {
    lab.block = bx + 1;
    lab.home = hx + 1;
  } else {
    int bv = cell_index(tv, l_, mu_side_);
    int hv = cell_index(tv - bv * l_, home_side_, nu_side_);
    lab.block = bv * mu_side_ + bx + 1;
    lab.home = hv * nu_side_ + hx + 1;
  }
  return lab;
}

Box Partition::region_box(int region) const {
  if (region < 0 || region >= regions())
    throw std::invalid_argument("region_box: bad region");
  int row = region / region_cols_;
  int col = region % region_cols_;
  Box b;
  b.xlo = 3.0 * col;
  b.xhi = 3.0 * (col + 1);
  if (dim_ == 2) {
    // v-interval [3 row, 3 row + 3) maps back to y.
    b.yhi = domain_h_ - 3.0 * row;
    b.ylo = b.yhi - 3.0;
  }
  return b;
}

Box Partition::block_box(int region, int block) const {
  if (block < 1 || block > mu_)
    throw std::invalid_argument("block_box: bad block");
  Box reg = region_box(region);
  int b0 = block - 1;
  int bx = dim_ == 1 ? b0 : b0 % mu_side_;
  int bv = dim_ == 1 ? 0 : b0 / mu_side_;
  Box b;
  b.xlo = reg.xlo + bx * l_;
  b.xhi = std::min(b.xlo + l_, reg.xhi);
  if (dim_ == 2) {
    b.yhi = reg.yhi - bv * l_;
    b.ylo = std::max(b.yhi - l_, reg.ylo);
  }
  return b;
}

Box Partition::home_box(const PartitionLabel& lab) const {
  if (lab.home < 1 || lab.home > nu_)
    throw std::invalid_argument("home_box: bad home");
  Box blk = block_box(lab.region, lab.block);
  int h0 = lab.home - 1;
  int hx = dim_ == 1 ? h0 : h0 % nu_side_;
  int hv = dim_ == 1 ? 0 : h0 / nu_side_;
  Box b;
  b.xlo = blk.xlo + hx * home_side_;
  b.xhi = std::min(b.xlo + home_side_, blk.xhi);
  if (dim_ == 2) {
    b.yhi = blk.yhi - hv * home_side_;
    b.ylo = std::max(b.yhi - home_side_, blk.ylo);
  }
  return b;
}

// Center of the nominal (unclipped) home cell: within gamma/2 of any point
// of the home on each axis, even when the cell is clipped.
Point Partition::home_center(const PartitionLabel& lab) const {
  Box blk = block_box(lab.region, lab.block);
  int h0 = lab.home - 1;
  int hx = dim_ == 1 ? h0 : h0 % nu_side_;
  int hv = dim_ == 1 ? 0 : h0 / nu_side_;
  Point c;
  c.x = blk.xlo + hx * home_side_ + home_side_ / 2.0;
  c.y = dim_ == 2 ? blk.yhi - hv * home_side_ - home_side_ / 2.0 : 0.0;
  return c;
}

}  // namespace swampcast
