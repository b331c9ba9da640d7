#include "fzeta/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace fzeta {

namespace {

// Integer lattice coordinates used only while gluing copies; the basis is
// orthogonal for the square families and 60-degree skew for the others.
using Coord = std::pair<std::int64_t, std::int64_t>;

struct Seed {
  std::vector<Coord> coords;
  std::vector<Edge> edges;
  std::int64_t extent;  // linear size of level 1
  std::int64_t scale;   // linear growth per level
  int branch;
};

Seed seed_for(Family family) {
  switch (family) {
    case Family::gasket:
      return {{{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}}, 1, 2, 3};
    case Family::vicsek:
      return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 1, 3, 5};
    case Family::lindstrom:
      // Unit hexagon around the origin; u_{i+1} is u_i rotated by 60 degrees.
      return {{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}},
              {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}},
              1,
              3,
              7};
    case Family::carpet:
      return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 1, 3, 8};
  }
  throw std::logic_error("unreachable");
}

// Copy offsets for building level n+1 from level n of linear size s.
// The first offset is the fixed copy, so its vertex map is the embedding.
std::vector<Coord> offsets_for(Family family, std::int64_t s) {
  switch (family) {
    case Family::gasket:
      return {{0, 0}, {s, 0}, {0, s}};
    case Family::vicsek:
      return {{0, 0}, {2 * s, 0}, {0, 2 * s}, {2 * s, 2 * s}, {s, s}};
    case Family::lindstrom: {
      const Coord u[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
      std::vector<Coord> out{{0, 0}};
      for (const auto& [a, b] : u) out.emplace_back(2 * s * a, 2 * s * b);
      return out;
    }
    case Family::carpet:
      return {{0, 0}, {s, 0}, {2 * s, 0}, {0, s}, {2 * s, s}, {0, 2 * s}, {s, 2 * s}, {2 * s, 2 * s}};
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "gasket") return Family::gasket;
  if (name == "vicsek") return Family::vicsek;
  if (name == "lindstrom") return Family::lindstrom;
  if (name == "carpet") return Family::carpet;
  throw std::invalid_argument("unknown family: " + name);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::gasket: return "gasket";
    case Family::vicsek: return "vicsek";
    case Family::lindstrom: return "lindstrom";
    case Family::carpet: return "carpet";
  }
  throw std::logic_error("unreachable");
}

VertexSet CopyMap::image() const {
  VertexSet out(map.begin(), map.end());
  std::sort(out.begin(), out.end());
  return out;
}

CopyMap compose(const CopyMap& inner, const CopyMap& outer) {
  if (inner.target_level != outer.source_level)
    throw std::invalid_argument("copy map composition level mismatch");
  CopyMap c;
  c.source_level = inner.source_level;
  c.target_level = outer.target_level;
  c.map.reserve(inner.map.size());
  for (Vertex v : inner.map) c.map.push_back(outer(v));
  return c;
}

int Exhaustion::branching() const {
  return copies.empty() ? 1 : static_cast<int>(copies.front().size());
}

int Exhaustion::max_degree() const {
  int d = 0;
  for (const auto& g : levels) d = std::max(d, g.max_degree());
  return d;
}

CopyMap Exhaustion::embedding_into(int from_level, int to_level) const {
  if (from_level > to_level || to_level > max_level())
    throw std::invalid_argument("bad embedding levels");
  CopyMap acc;
  acc.source_level = from_level;
  acc.target_level = from_level;
  acc.map.resize(static_cast<std::size_t>(level(from_level).vertex_count()));
  for (std::size_t i = 0; i < acc.map.size(); ++i) acc.map[i] = static_cast<Vertex>(i);
  for (int k = from_level; k < to_level; ++k) acc = compose(acc, embeddings[k - 1]);
  return acc;
}

VertexSet Exhaustion::interior_in_deepest(int n, int r) const {
  const int N = max_level();
  CopyMap e = embedding_into(n, N);
  VertexSet img = e.image();
  VertexSet front;
  for (Vertex v : g_frontiers[static_cast<std::size_t>(n) - 1]) front.push_back(e(v));
  std::sort(front.begin(), front.end());
  return vertex_set_difference(img, ball(level(N), front, r));
}

Exhaustion build_exhaustion(Family family, int max_level) {
  if (max_level < 1) throw std::invalid_argument("max_level must be >= 1");
  Seed seed = seed_for(family);
  double size_estimate =
      static_cast<double>(seed.coords.size()) * std::pow(seed.branch, max_level - 1);
  if (size_estimate > 3e6)
    throw std::invalid_argument("level " + std::to_string(max_level) +
                                " too large: about " + std::to_string(size_estimate) +
                                " vertices");

  Exhaustion x;
  x.family = family;
  x.levels.push_back(Graph::from_edges(static_cast<Vertex>(seed.coords.size()), seed.edges));

  std::vector<Coord> coords = seed.coords;
  std::int64_t extent = seed.extent;
  // One scratch level past the request, so the invariant frontier of the
  // deepest exposed level can still see one ambient step.
  const int built_levels = max_level + 1;
  for (int n = 1; n < built_levels; ++n) {
    const Graph& prev = x.levels.back();
    std::vector<Coord> offs = offsets_for(family, extent);
    std::map<Coord, Vertex> index;
    std::vector<Coord> next_coords;
    std::vector<CopyMap> level_copies;
    std::vector<Edge> edges;
    for (const Coord& o : offs) {
      CopyMap cm;
      cm.source_level = n;
      cm.target_level = n + 1;
      cm.map.reserve(coords.size());
      for (const Coord& c : coords) {
        Coord t{c.first + o.first, c.second + o.second};
        auto [it, inserted] = index.try_emplace(t, static_cast<Vertex>(next_coords.size()));
        if (inserted) next_coords.push_back(t);
        cm.map.push_back(it->second);
      }
      for (auto [u, v] : prev.edges()) edges.emplace_back(cm(u), cm(v));
      level_copies.push_back(std::move(cm));
    }
    x.levels.push_back(Graph::from_edges(static_cast<Vertex>(next_coords.size()), edges));
    x.embeddings.push_back(level_copies.front());
    x.copies.push_back(std::move(level_copies));
    coords = std::move(next_coords);
    extent *= seed.scale;
  }

  for (int n = 1; n <= max_level; ++n) {
    InvariantFrontier f = invariant_frontier(x, n);
    x.g_frontiers.push_back(std::move(f.vertices));
    x.epsilon.push_back(f.eps);
    x.frontier_depths.push_back(f.depth);
  }
  x.levels.pop_back();
  x.copies.pop_back();
  x.embeddings.pop_back();
  return x;
}

const std::vector<CopyMap>& copy_maps(const Exhaustion& x, int n) {
  if (n < 1 || n >= x.max_level()) throw std::invalid_argument("copy_maps: level out of range");
  return x.copies[static_cast<std::size_t>(n) - 1];
}

CopyMap compose_copy_maps(const Exhaustion& x, int n, int m, const std::vector<int>& word) {
  if (n > m || m > x.max_level()) throw std::invalid_argument("compose_copy_maps: bad levels");
  if (static_cast<int>(word.size()) != m - n)
    throw std::invalid_argument("compose_copy_maps: word length must be m - n");
  CopyMap acc;
  acc.source_level = n;
  acc.target_level = n;
  acc.map.resize(static_cast<std::size_t>(x.level(n).vertex_count()));
  for (std::size_t i = 0; i < acc.map.size(); ++i) acc.map[i] = static_cast<Vertex>(i);
  for (int k = n; k < m; ++k) {
    const auto& step = x.copies[static_cast<std::size_t>(k) - 1];
    int choice = word[static_cast<std::size_t>(k - n)];
    if (choice < 0 || choice >= static_cast<int>(step.size()))
      throw std::invalid_argument("compose_copy_maps: choice out of range");
    acc = compose(acc, step[static_cast<std::size_t>(choice)]);
  }
  return acc;
}

std::vector<CopyMap> all_copy_maps(const Exhaustion& x, int n, int m) {
  std::vector<CopyMap> out;
  std::vector<int> word(static_cast<std::size_t>(m - n), 0);
  while (true) {
    out.push_back(compose_copy_maps(x, n, m, word));
    int k = static_cast<int>(word.size()) - 1;
    while (k >= 0) {
      int limit = static_cast<int>(x.copies[static_cast<std::size_t>(n + k) - 1].size());
      if (++word[static_cast<std::size_t>(k)] < limit) break;
      word[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

InvariantFrontier invariant_frontier(const Exhaustion& x, int n) {
  const Graph& g = x.level(n);
  std::vector<char> in_frontier(static_cast<std::size_t>(g.vertex_count()), 0);
  int depth = n;
  for (int m = n; m <= x.max_level(); ++m) {
    bool grew = false;
    // Neighbors-outside-the-image tests run in K_{m+1} when available, else
    // in K_m itself; either way the result is a subset of the true frontier,
    // and the union over m stabilizes at it.
    const bool deeper = m + 1 <= x.max_level();
    const Graph& ambient = x.level(deeper ? m + 1 : m);
    for (const CopyMap& gamma : all_copy_maps(x, n, m)) {
      CopyMap into_ambient =
          deeper ? compose(gamma, x.embeddings[static_cast<std::size_t>(m) - 1]) : gamma;
      VertexSet img = into_ambient.image();
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (in_frontier[v]) continue;
        for (Vertex nb : ambient.neighbors(into_ambient(v)))
          if (!vertex_set_contains(img, nb)) {
            in_frontier[v] = 1;
            grew = true;
            break;
          }
      }
    }
    if (grew) depth = m;
  }
  InvariantFrontier out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (in_frontier[v]) out.vertices.push_back(v);
  out.eps = Rational(static_cast<long long>(out.vertices.size()),
                     static_cast<long long>(g.vertex_count()));
  out.depth = depth;
  return out;
}

EulerEstimate euler_characteristic_average(const Exhaustion& x) {
  EulerEstimate e;
  for (const auto& g : x.levels) {
    Int chi = Int(g.vertex_count()) - Int(g.edge_count());
    e.per_level.emplace_back(chi, Int(g.vertex_count()));
  }
  e.deepest = e.per_level.back();
  return e;
}

Exhaustion single_graph_exhaustion(const Graph& g) {
  Exhaustion x;
  x.family = Family::gasket;  // tag unused for degenerate exhaustions
  x.levels.push_back(g);
  x.g_frontiers.emplace_back();
  x.epsilon.emplace_back(0);
  x.frontier_depths.push_back(1);
  return x;
}

}  // namespace fzeta
