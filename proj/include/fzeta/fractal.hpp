#pragma once

#include "fzeta/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fzeta {

enum class Family { gasket, vicsek, lindstrom, carpet };

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// Injective vertex map K_source -> K_target realizing a graph isomorphism
/// onto its image.
struct CopyMap {
  int source_level = 0;
  int target_level = 0;
  std::vector<Vertex> map;  // image of source vertex i

  Vertex operator()(Vertex v) const { return map[static_cast<std::size_t>(v)]; }
  VertexSet image() const;
};

CopyMap compose(const CopyMap& inner, const CopyMap& outer);

/// Materialized levels K_1 .. K_N of a self-similar exhaustion, with the
/// one-step copy maps, invariant frontiers, and boundary densities.
struct Exhaustion {
  Family family;
  std::vector<Graph> levels;                 // levels[n-1] = K_n
  std::vector<CopyMap> embeddings;           // K_n -> K_{n+1}, the fixed copy
  std::vector<std::vector<CopyMap>> copies;  // one-step copy families
  std::vector<VertexSet> g_frontiers;        // invariant frontier per level
  std::vector<Rational> epsilon;             // |frontier| / |K_n|
  std::vector<int> frontier_depths;          // levels scanned before the union stabilized

  int max_level() const { return static_cast<int>(levels.size()); }
  const Graph& level(int n) const { return levels[static_cast<std::size_t>(n) - 1]; }

  /// Copies per level (3 gasket, 5 vicsek, 7 lindstrom, 8 carpet); also the
  /// growth rate lim |K_{n+1}|/|K_n|.
  int branching() const;

  /// Max degree across all built levels (the ambient bound d).
  int max_degree() const;

  /// Composite of the fixed embeddings, K_from -> K_to.
  CopyMap embedding_into(int from_level, int to_level) const;

  /// Interior set of K_n pulled to ambient coordinates of the deepest level:
  /// the embedded image of K_n minus the radius-r ball of its embedded
  /// invariant frontier, with the ball taken in the deepest graph.
  VertexSet interior_in_deepest(int n, int r) const;
};

/// Builds levels 1..max_level. Rejects level counts whose vertex estimate
/// exceeds the memory budget.
Exhaustion build_exhaustion(Family family, int max_level);

const std::vector<CopyMap>& copy_maps(const Exhaustion& x, int n);

/// Composite copy map K_n -> K_m selected by one copy index per level.
CopyMap compose_copy_maps(const Exhaustion& x, int n, int m, const std::vector<int>& word);

/// Every composite copy map K_n -> K_m (branching^(m-n) maps).
std::vector<CopyMap> all_copy_maps(const Exhaustion& x, int n, int m);

struct InvariantFrontier {
  VertexSet vertices;
  Rational eps;
  int depth;  // deepest level scanned when the union last grew
};

/// Truncated-union evaluation of the invariant frontier of K_n, scanning
/// copy images up to the last level that still has a successor.
InvariantFrontier invariant_frontier(const Exhaustion& x, int n);

struct EulerEstimate {
  std::vector<Rational> per_level;  // chi(K_n) / |K_n|
  Rational deepest;
};

EulerEstimate euler_characteristic_average(const Exhaustion& x);

/// Degenerate single-graph exhaustion (one level, the identity copy map,
/// empty frontier). Lets finite graphs flow through the trace machinery.
Exhaustion single_graph_exhaustion(const Graph& g);

}  // namespace fzeta
