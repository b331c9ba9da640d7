#include "fzeta/fractal.hpp"
#include "fzeta/graph.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace fzeta;

namespace {

Graph triangle() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }

std::vector<std::vector<double>> dense_op(const Graph& g, const OpPoly& op) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0));
  VertexSet all;
  for (Vertex v = 0; v < g.vertex_count(); ++v) all.push_back(v);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0);
    e[j] = 1;
    std::vector<double> col = restrict_apply(g, op, all, e);
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
  }
  return m;
}

}  // namespace

TEST_CASE("construction validates and dedupes") {
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}});
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.adjacent(0, 1));
  CHECK(!g.adjacent(0, 2));
  CHECK_THROWS(Graph::from_edges(2, {{0, 0}}));
  CHECK_THROWS(Graph::from_edges(2, {{0, 5}}));
}

TEST_CASE("edge list round trip") {
  Graph g = triangle();
  std::stringstream s;
  g.write_edge_list(s);
  Graph h = Graph::read_edge_list(s);
  CHECK(h.vertex_count() == 3);
  CHECK(h.edges() == g.edges());
}

TEST_CASE("ball growth and bound") {
  Exhaustion x = build_exhaustion(Family::gasket, 3);
  const Graph& g = x.level(3);
  VertexSet corner{0};
  VertexSet prev = corner;
  for (int r = 1; r <= 3; ++r) {
    VertexSet b = ball(g, corner, r);
    CHECK(vertex_set_difference(prev, b).empty());  // monotone in r
    CHECK(b.size() <= static_cast<std::size_t>(std::pow(5.0, r)));
    prev = b;
  }
  CHECK(ball(g, corner, 2).size() <= 25);
  CHECK(ball(g, corner, 0) == corner);
}

TEST_CASE("frontier of an embedded level") {
  Exhaustion x = build_exhaustion(Family::gasket, 3);
  VertexSet image = x.embedding_into(2, 3).image();
  VertexSet f = frontier(x.level(3), image);
  // Exactly the corners glued to the other two copies.
  CHECK(f.size() == 2);
  for (Vertex v : f) CHECK(x.level(3).degree(v) == 4);
}

TEST_CASE("vertex set operations") {
  VertexSet a{1, 3, 5}, b{3, 4};
  CHECK(vertex_set_union(a, b) == VertexSet{1, 3, 4, 5});
  CHECK(vertex_set_intersection(a, b) == VertexSet{3});
  CHECK(vertex_set_difference(a, b) == VertexSet{1, 5});
  CHECK(vertex_set_contains(a, 5));
  CHECK(!vertex_set_contains(a, 2));
}

TEST_CASE("spectral radius of the triangle") {
  CHECK(std::abs(spectral_radius_estimate(triangle()) - 2.0) < 1e-6);
}

TEST_CASE("operator words propagate and bound") {
  OpPoly p{{{Rational(1), "AQA"}, {Rational(-2), "P"}}};
  CHECK(p.propagation() == 3);  // two A letters plus one for the Q lookup
  CHECK(p.norm_bound(4) == doctest::Approx(4 * 3 * 4 + 2 * 1));
  CHECK(OpPoly::transition_power(3).propagation() == 3);
  CHECK(OpPoly::identity_op().propagation() == 0);
}

TEST_CASE("restrict_apply matches the dense oracle") {
  Exhaustion x = build_exhaustion(Family::gasket, 3);
  const Graph& g = x.level(3);
  VertexSet k = x.embedding_into(2, 3).image();

  // op = A restricted to k: column sums equal degree within k.
  for (Vertex j = 0; j < static_cast<Vertex>(k.size()); ++j) {
    std::vector<double> e(k.size(), 0);
    e[static_cast<std::size_t>(j)] = 1;
    std::vector<double> col = restrict_apply(g, OpPoly::adjacency(), k, e);
    double sum = 0;
    int deg_in_k = 0;
    for (double c : col) sum += c;
    for (Vertex w : g.neighbors(k[static_cast<std::size_t>(j)]))
      if (vertex_set_contains(k, w)) ++deg_in_k;
    CHECK(sum == doctest::Approx(deg_in_k));
  }

  // Composite word against an explicit dense product on the full graph.
  OpPoly word{{{Rational(1, 2), "AQ"}, {Rational(1), "PA"}, {Rational(-3), ""}}};
  auto m = dense_op(g, word);
  auto a = dense_op(g, OpPoly::adjacency());
  auto n = static_cast<std::size_t>(g.vertex_count());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double aq = 0.5 * a[i][j] * (g.degree(static_cast<Vertex>(j)) - 1);
      double pa = 0;
      for (std::size_t l = 0; l < n; ++l)
        pa += a[i][l] / g.degree(static_cast<Vertex>(i)) * a[l][j];
      double id = i == j ? -3.0 : 0.0;
      CHECK(m[i][j] == doctest::Approx(aq + pa + id));
    }
}
