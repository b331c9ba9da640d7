#include "fzeta/fractal.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace fzeta;

namespace {

bool is_isomorphism_onto_image(const Graph& src, const Graph& dst, const CopyMap& c) {
  for (Vertex v = 0; v < src.vertex_count(); ++v)
    for (Vertex w = v + 1; w < src.vertex_count(); ++w)
      if (src.adjacent(v, w) != dst.adjacent(c(v), c(w))) return false;
  return true;
}

}  // namespace

TEST_CASE("level cardinalities match the closed forms") {
  Exhaustion g = build_exhaustion(Family::gasket, 5);
  for (int n = 1; n <= 5; ++n) {
    long long p3 = 1;
    for (int i = 0; i < n; ++i) p3 *= 3;
    CHECK(g.level(n).vertex_count() == (p3 + 3) / 2);
    CHECK(g.level(n).edge_count() == static_cast<std::size_t>(p3));
  }
  Exhaustion v = build_exhaustion(Family::vicsek, 4);
  Exhaustion l = build_exhaustion(Family::lindstrom, 3);
  for (int n = 1; n <= 4; ++n) {
    long long p5 = 1;
    for (int i = 1; i < n; ++i) p5 *= 5;
    CHECK(v.level(n).vertex_count() == 3 * p5 + 1);
    CHECK(v.level(n).edge_count() == static_cast<std::size_t>(4 * p5));
  }
  for (int n = 1; n <= 3; ++n) {
    long long p7 = 1;
    for (int i = 1; i < n; ++i) p7 *= 7;
    CHECK(l.level(n).vertex_count() == 4 * p7 + 2);
    CHECK(l.level(n).edge_count() == static_cast<std::size_t>(6 * p7));
  }
  Exhaustion c = build_exhaustion(Family::carpet, 2);
  CHECK(c.level(2).vertex_count() == 16);
  CHECK(c.level(2).edge_count() == 24);
}

TEST_CASE("memory guard rejects oversized builds") {
  CHECK_THROWS_AS(build_exhaustion(Family::gasket, 40), std::invalid_argument);
}

TEST_CASE("copy maps are isomorphisms covering the next level") {
  for (Family f : {Family::gasket, Family::vicsek, Family::lindstrom, Family::carpet}) {
    Exhaustion x = build_exhaustion(f, f == Family::carpet ? 2 : 3);
    for (int n = 1; n < x.max_level(); ++n) {
      const auto& maps = copy_maps(x, n);
      CHECK(static_cast<int>(maps.size()) == x.branching());
      VertexSet covered;
      for (const CopyMap& c : maps) {
        CHECK(is_isomorphism_onto_image(x.level(n), x.level(n + 1), c));
        covered = vertex_set_union(covered, c.image());
      }
      CHECK(static_cast<Vertex>(covered.size()) == x.level(n + 1).vertex_count());
    }
  }
}

TEST_CASE("vicsek arms meet the center copy in one vertex") {
  Exhaustion x = build_exhaustion(Family::vicsek, 2);
  const auto& maps = copy_maps(x, 1);
  REQUIRE(maps.size() == 5);
  // One copy (the center) meets each of the four arms in exactly one vertex;
  // arms are pairwise disjoint.
  std::vector<int> touches(5, 0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) {
      auto shared = vertex_set_intersection(maps[i].image(), maps[j].image());
      CHECK(shared.size() <= 1);
      touches[i] += static_cast<int>(shared.size());
      touches[j] += static_cast<int>(shared.size());
    }
  CHECK(*std::max_element(touches.begin(), touches.end()) == 4);
  CHECK(std::accumulate(touches.begin(), touches.end(), 0) == 8);
}

TEST_CASE("composite copy maps compose coherently") {
  Exhaustion x = build_exhaustion(Family::gasket, 3);
  auto all = all_copy_maps(x, 1, 3);
  CHECK(all.size() == 9);
  CopyMap direct = compose_copy_maps(x, 1, 3, {1, 2});
  CopyMap stepwise = compose(copy_maps(x, 1)[1], copy_maps(x, 2)[2]);
  CHECK(direct.map == stepwise.map);
}

TEST_CASE("invariant frontier of the gasket is the corner set") {
  Exhaustion x = build_exhaustion(Family::gasket, 4);
  for (int n = 1; n <= 4; ++n) {
    CHECK(x.g_frontiers[static_cast<std::size_t>(n) - 1].size() == 3);
    CHECK(x.epsilon[static_cast<std::size_t>(n) - 1] ==
          Rational(3, x.level(n).vertex_count()));
    for (Vertex v : x.g_frontiers[static_cast<std::size_t>(n) - 1])
      CHECK(x.level(n).degree(v) == 2);
  }
  // Densities fall strictly toward zero (amenability).
  for (int n = 2; n <= 4; ++n)
    CHECK(x.epsilon[static_cast<std::size_t>(n) - 1] < x.epsilon[static_cast<std::size_t>(n) - 2]);
}

TEST_CASE("invariant frontier of the vicsek cross is the four extreme corners") {
  Exhaustion x = build_exhaustion(Family::vicsek, 3);
  CHECK(x.g_frontiers[2].size() == 4);
  for (Vertex v : x.g_frontiers[2]) CHECK(x.level(3).degree(v) == 2);
}

TEST_CASE("average Euler characteristic per level") {
  Exhaustion x = build_exhaustion(Family::gasket, 5);
  EulerEstimate e = euler_characteristic_average(x);
  CHECK(e.per_level[0] == 0);             // triangle: 3 - 3
  CHECK(e.per_level[1] == Rational(-1, 2));
  CHECK(e.deepest == e.per_level.back());
  for (std::size_t i = 1; i < e.per_level.size(); ++i)
    CHECK(e.per_level[i] < e.per_level[i - 1]);  // decreasing toward -1
  CHECK(e.deepest > -1);
}

TEST_CASE("interior shrinks with the safety radius") {
  Exhaustion x = build_exhaustion(Family::gasket, 4);
  VertexSet i0 = x.interior_in_deepest(3, 0);
  VertexSet i2 = x.interior_in_deepest(3, 2);
  CHECK(vertex_set_difference(i2, i0).empty());
  CHECK(i2.size() < i0.size());
}

TEST_CASE("single graph exhaustion is degenerate") {
  Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  Exhaustion x = single_graph_exhaustion(tri);
  CHECK(x.max_level() == 1);
  CHECK(x.branching() == 1);
  CHECK(x.g_frontiers[0].empty());
  CHECK(x.epsilon[0] == 0);
}
