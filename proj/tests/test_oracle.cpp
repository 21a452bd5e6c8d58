#include <cmath>

#include "doctest.h"
#include "swampcast/oracle.hpp"

using namespace swampcast;

TEST_CASE("oracle neighbors match the cached adjacency") {
  for (int i = 0; i < 10; ++i) {
    RadioParams radio{1.0, 0.1 * (i % 5), 0.15};
    Network net = i % 2 == 0 ? random_line(7.0, 20, radio, 400 + i)
                             : random_plane(4.0, 4.0, 20, radio, 400 + i);
    for (int u = 0; u < net.size(); ++u)
      CHECK(oracle_neighbors(net, u) == net.neighbors_of(u));
  }
}

TEST_CASE("oracle neighbors on fixtures") {
  Network one({{0.0, 0.0}}, 1, {1.0, 0.0, 1.0});
  CHECK(oracle_neighbors(one, 0).empty());

  Network sparse = lattice_line(9, {3.0, 2.0, 1.0});
  CHECK(oracle_neighbors(sparse, 0) == std::vector<int>{3});
}

TEST_CASE("flooding on the lattice line") {
  Network net = lattice_line(7, {2.0, 0.0, 1.0});
  auto res = flooding_baseline(net, 0);
  REQUIRE(res.connected);
  for (int i = 0; i < 7; ++i) CHECK(res.hops[i] == (i + 1) / 2);
  CHECK(res.eccentricity == 3);
}

TEST_CASE("flooding with a lone source") {
  Network net({{0.0, 0.0}}, 1, {1.0, 0.0, 1.0});
  auto res = flooding_baseline(net, 0);
  CHECK(res.hops == std::vector<int>{0});
  CHECK(res.eccentricity == 0);
  CHECK(res.connected);
}

TEST_CASE("flooding flags disconnected placements") {
  // spacing 0.5 with s = 0.6 links only the distance-1.0 pairs, splitting
  // the chain into even and odd sublines
  Network net = chain_line(6, 0.5, {1.0, 0.6, 0.5});
  auto res = flooding_baseline(net, 0);
  CHECK_FALSE(res.connected);
  CHECK(res.hops == std::vector<int>{0, -1, 1, -1, 2, -1});
  CHECK(res.eccentricity == 2);

  Network gap = lattice_line(9, {3.0, 2.0, 1.0});
  auto gres = flooding_baseline(gap, 0);
  CHECK_FALSE(gres.connected);
  CHECK(gres.hops[3] == 1);
  CHECK(gres.hops[6] == 2);
  CHECK(gres.hops[1] == -1);
}

TEST_CASE("annulus coverage formulas") {
  CHECK(annulus_line_coverage(3.0, 1.0, 0.0) == doctest::Approx(2.0));
  CHECK(annulus_line_coverage(3.0, 1.0, 2.0) ==
        doctest::Approx(2.0 * std::sqrt(5.0)));
  CHECK(annulus_line_coverage(3.0, 1.0, 1.0) ==
        doctest::Approx(std::sqrt(8.0)));
  CHECK(annulus_line_coverage(3.0, 1.0, 3.5) == 0.0);
  // sweep below the critical height keeps at least r - s of room
  for (double d = 0.0; d <= 2.0; d += 0.125)
    CHECK(annulus_line_coverage(3.0, 1.0, d) >= 2.0 - 1e-9);
  CHECK_THROWS(annulus_line_coverage(3.0, 4.0, 0.0));
}

TEST_CASE("partition lemmas hold on random placements") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 8; ++i) {
    RadioParams radio{1.0, 0.5, 0.2};
    if (i % 2 == 0) {
      Network net = random_line(8.0, 22, radio, 700 + i);
      Partition part = Partition::line(radio.s, radio.gamma, 8.0);
      CHECK(check_single_occupancy(part, net).pass);
      CHECK(check_label_separation(part, net).pass);
      CHECK(check_range_overlap(net).pass);
      CHECK(check_block_separation(part, rng, 4).pass);
    } else {
      Network net = random_plane(5.0, 5.0, 24, radio, 700 + i);
      Partition part = Partition::plane(radio.s, radio.gamma, 5.0, 5.0);
      CHECK(check_single_occupancy(part, net).pass);
      CHECK(check_label_separation(part, net).pass);
      CHECK(check_block_separation(part, rng, 4).pass);
    }
  }
}

TEST_CASE("occupancy checker reports a witness on a bad pairing") {
  // Partition built for gamma = 0.5 but nodes packed at 0.1: two nodes
  // share a home, which the checker must call out.
  Network net({{0.0, 0.0}, {0.1, 0.0}}, 1, {1.0, 0.3, 0.1});
  Partition part = Partition::line(0.3, 0.5, 2.0);
  auto res = check_single_occupancy(part, net);
  CHECK_FALSE(res.pass);
  CHECK(!res.detail.empty());
}

TEST_CASE("adjacent gamma-spaced pair never shares a home") {
  // distance exactly gamma, the tightest legal placement
  for (double gamma : {0.1, 0.25, 0.5, 1.0}) {
    Network net({{1.0, 0.0}, {1.0 + gamma, 0.0}}, 1, {1.0, 0.0, gamma});
    Partition part = Partition::line(0.0, gamma, 3.0);
    CHECK(check_single_occupancy(part, net).pass);
  }
  // plane: home diagonal is exactly gamma, so a gamma pair can straddle a
  // corner but never sit inside one home
  Network net({{1.0, 1.0}, {1.0 + 0.3 / std::sqrt(2.0), 1.0 + 0.3 / std::sqrt(2.0)}},
              2, {1.0, 0.0, 0.3});
  Partition part = Partition::plane(0.0, 0.3, 3.0, 3.0);
  CHECK(check_single_occupancy(part, net).pass);
}

TEST_CASE("oracle deliveries agree with themselves on edge shapes") {
  Network net({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}}, 1, {1.0, 0.6, 0.1});
  auto res = oracle_deliveries(net, {0});
  CHECK(res.heard_from == std::vector<int>{-1, -1, 0});
  CHECK(res.swamp_nodes == std::vector<int>{1});
}
