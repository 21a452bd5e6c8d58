#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace swampcast {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double dist2(const Point& a, const Point& b);
double dist(const Point& a, const Point& b);

// Channel geometry. Two nodes are linked when their distance lies in (s, r];
// a transmission from within distance s of a listener jams that listener for
// the round. gamma is the minimum pairwise separation placements must keep.
struct RadioParams {
  double r = 1.0;
  double s = 0.0;
  double gamma = 1.0;

  double g() const { return 1.0 / gamma; }
  void validate() const;
};

// Immutable placement plus the link/jam relations, cached per node.
class Network {
 public:
  Network(std::vector<Point> points, int dim, RadioParams radio);

  int size() const { return static_cast<int>(pts_.size()); }
  int dim() const { return dim_; }
  const RadioParams& radio() const { return radio_; }
  const Point& position(int v) const { return pts_.at(v); }
  const std::vector<Point>& positions() const { return pts_; }

  bool linked(int u, int v) const;
  bool jams(int u, int v) const;  // u transmitting blocks v: 0 < dist <= s

  // Sorted ascending; built once at construction.
  const std::vector<int>& neighbors_of(int v) const { return nbrs_.at(v); }
  const std::vector<int>& jammers_of(int v) const { return jam_.at(v); }

  std::vector<std::vector<int>> connected_components() const;
  bool connected() const;

 private:
  std::vector<Point> pts_;
  int dim_ = 1;
  RadioParams radio_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::vector<int>> jam_;
};

// Deterministic across platforms, unlike std::uniform_real_distribution.
double uniform_double(std::mt19937_64& rng, double lo, double hi);
int uniform_int(std::mt19937_64& rng, int lo, int hi);

Network lattice_line(int n, RadioParams radio);
Network lattice_grid(int n, RadioParams radio);  // n must be a perfect square
Network chain_line(int n, double spacing, RadioParams radio);

// Rejection samplers. They keep the gamma separation, stay 1e-9 clear of the
// s / r / gamma distance boundaries so engine and oracle cannot disagree on a
// knife-edge comparison, and retry whole placements until the link graph is
// connected. Throws std::runtime_error once the retry budget is exhausted.
Network random_line(double length, int n, RadioParams radio, std::uint64_t seed);
Network random_plane(double width, double height, int n, RadioParams radio,
                     std::uint64_t seed);

}  // namespace swampcast
