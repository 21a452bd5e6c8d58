#include "swampcast/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swampcast {

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

void RadioParams::validate() const {
  if (!(r > 0.0)) throw std::invalid_argument("radio: r must be positive");
  if (!(s >= 0.0)) throw std::invalid_argument("radio: s must be nonnegative");
  if (!(s < r)) throw std::invalid_argument("radio: s must be less than r");
  if (!(gamma > 0.0)) throw std::invalid_argument("radio: gamma must be positive");
}

Network::Network(std::vector<Point> points, int dim, RadioParams radio)
    : pts_(std::move(points)), dim_(dim), radio_(radio) {
  if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("network: dim must be 1 or 2");
  radio_.validate();
  const int n = size();
  nbrs_.assign(n, {});
  jam_.assign(n, {});
  const double r2 = radio_.r * radio_.r;
  const double s2 = radio_.s * radio_.s;
  // Each adjacency list ends up sorted: partners below v are appended while
  // the outer loop walks them, partners above v by the inner loop.
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double d2 = dist2(pts_[u], pts_[v]);
      if (d2 > s2 && d2 <= r2) {
        nbrs_[u].push_back(v);
        nbrs_[v].push_back(u);
      } else if (d2 > 0.0 && d2 <= s2) {
        jam_[u].push_back(v);
        jam_[v].push_back(u);
      }
    }
  }
}

bool Network::linked(int u, int v) const {
  if (u == v) throw std::invalid_argument("linked: u and v must differ");
  const double d2 = dist2(pts_.at(u), pts_.at(v));
  return d2 > radio_.s * radio_.s && d2 <= radio_.r * radio_.r;
}

bool Network::jams(int u, int v) const {
  if (u == v) return false;  // a sender does not jam itself; it simply is not a receiver
  const double d2 = dist2(pts_.at(u), pts_.at(v));
  return d2 > 0.0 && d2 <= radio_.s * radio_.s;
}

std::vector<std::vector<int>> Network::connected_components() const {
  const int n = size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    stack.push_back(v);
    comp[v] = id;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      out[id].push_back(u);
      for (int w : nbrs_[u]) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool Network::connected() const {
  if (size() == 0) return true;
  return connected_components().size() == 1;
}

double uniform_double(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t cut = (-range) % range;  // reject the biased low tail
  std::uint64_t x = rng();
  while (x < cut) x = rng();
  return lo + static_cast<int>(x % range);
}

Network lattice_line(int n, RadioParams radio) {
  if (n <= 0) throw std::invalid_argument("lattice_line: n must be positive");
  std::vector<Point> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = {static_cast<double>(i), 0.0};
  return Network(std::move(pts), 1, radio);
}

Network lattice_grid(int n, RadioParams radio) {
  const int m = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  if (n <= 0 || m * m != n) throw std::invalid_argument("lattice_grid: n must be a perfect square");
  std::vector<Point> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = {static_cast<double>(i % m), static_cast<double>(i / m)};
  return Network(std::move(pts), 2, radio);
}

Network chain_line(int n, double spacing, RadioParams radio) {
  if (n <= 0) throw std::invalid_argument("chain_line: n must be positive");
  if (!(spacing >= radio.gamma)) throw std::invalid_argument("chain_line: spacing below gamma");
  std::vector<Point> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = {i * spacing, 0.0};
  return Network(std::move(pts), 1, radio);
}

namespace {

bool clear_of_boundaries(double d, const RadioParams& radio) {
  constexpr double kGuard = 1e-9;
  return std::abs(d - radio.s) > kGuard && std::abs(d - radio.r) > kGuard &&
         std::abs(d - radio.gamma) > kGuard;
}

// Rejection sampler that grows one connected component: after the first
// point, a candidate is kept only when it links to something already placed.
// Thin annuli (s close to r) make blind uniform placements disconnected with
// overwhelming probability, so connectivity is built in rather than hoped
// for; the final post-check still certifies it.
template <typename Sampler>
Network sample_connected(int n, int dim, const RadioParams& radio, std::uint64_t seed,
                         Sampler sample) {
  radio.validate();
  if (n <= 0) throw std::invalid_argument("random placement: n must be positive");
  std::mt19937_64 rng(seed);
  constexpr int kPlacementAttempts = 64;
  constexpr int kPointTries = 4000;
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    std::vector<Point> pts;
    pts.reserve(n);
    bool filled = true;
    for (int i = 0; i < n && filled; ++i) {
      filled = false;
      for (int t = 0; t < kPointTries; ++t) {
        const Point p = sample(rng);
        bool fits = true;
        bool attached = pts.empty();
        for (const Point& q : pts) {
          const double d = dist(p, q);
          if (d < radio.gamma + 1e-9 || !clear_of_boundaries(d, radio)) {
            fits = false;
            break;
          }
          if (d > radio.s && d <= radio.r) attached = true;
        }
        if (fits && attached) {
          pts.push_back(p);
          filled = true;
          break;
        }
      }
    }
    if (!filled) continue;
    Network net(std::move(pts), dim, radio);
    if (net.connected()) return net;
  }
  throw std::runtime_error("random placement: no connected layout found within the retry budget");
}

}  // namespace

Network random_line(double length, int n, RadioParams radio, std::uint64_t seed) {
  if (!(length > 0.0)) throw std::invalid_argument("random_line: length must be positive");
  return sample_connected(n, 1, radio, seed, [length](std::mt19937_64& rng) {
    return Point{uniform_double(rng, 0.0, length), 0.0};
  });
}

Network random_plane(double width, double height, int n, RadioParams radio,
                     std::uint64_t seed) {
  if (!(width > 0.0) || !(height > 0.0))
    throw std::invalid_argument("random_plane: area must be positive");
  return sample_connected(n, 2, radio, seed, [width, height](std::mt19937_64& rng) {
    return Point{uniform_double(rng, 0.0, width), uniform_double(rng, 0.0, height)};
  });
}

}  // namespace swampcast
