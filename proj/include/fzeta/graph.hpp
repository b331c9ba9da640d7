#pragma once

#include "fzeta/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fzeta {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted list of vertex indices (strictly increasing).
using VertexSet = std::vector<Vertex>;

/// Finite simple undirected graph in compressed-row form.
///
/// Immutable after construction; adjacency lists are sorted, so iteration
/// order (and hence every trace/census derived from it) is deterministic.
class Graph {
 public:
  Graph() = default;

  /// Builds from an unordered edge list. Duplicate edges are collapsed;
  /// self-loops and out-of-range endpoints are rejected.
  static Graph from_edges(Vertex vertex_count, const std::vector<Edge>& edges);

  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return adj_.size() / 2; }
  int degree(Vertex v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  int max_degree() const { return max_degree_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges as sorted (u < v) pairs, lexicographic.
  std::vector<Edge> edges() const;

  // Edge-list text format: "p <n> <m>" header then "e <u> <v>" lines.
  static Graph read_edge_list(std::istream& in);
  void write_edge_list(std::ostream& out) const;
  std::string to_json() const;

 private:
  Vertex n_ = 0;
  int max_degree_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> adj_;
};

/// B_r of a vertex set: everything at combinatorial distance <= r.
VertexSet ball(const Graph& g, const VertexSet& center, int radius);

/// Vertices of k with at least one neighbor outside k.
VertexSet frontier(const Graph& g, const VertexSet& k);

bool vertex_set_contains(const VertexSet& s, Vertex v);
VertexSet vertex_set_union(const VertexSet& a, const VertexSet& b);
VertexSet vertex_set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet vertex_set_difference(const VertexSet& a, const VertexSet& b);

/// Power-iteration estimate of the spectral radius of the adjacency matrix.
double spectral_radius_estimate(const Graph& g, int iterations = 100);

/// One multiplicative term of a polynomial in the operators A, Q = D - I and
/// the transition operator P = D^{-1}A: coeff * (word applied right-to-left),
/// word over {'A', 'Q', 'P'}.
struct OpTerm {
  Rational coeff;
  std::string word;
};

/// Polynomial in A, Q, P, as a sum of OpTerms.
struct OpPoly {
  std::vector<OpTerm> terms;

  /// Finite-propagation radius (number of A or P factors in the longest
  /// word, plus one for the degree lookup of any Q factor).
  int propagation() const;
  /// Triangle-inequality norm bound through ||A|| <= d, ||Q|| <= d-1,
  /// ||P|| <= 1.
  double norm_bound(int d) const;

  static OpPoly adjacency() { return {{{Rational(1), "A"}}}; }
  static OpPoly q_minus_i() { return {{{Rational(1), "Q"}, {Rational(-1), ""}}}; }
  static OpPoly identity_op() { return {{{Rational(1), ""}}}; }
  static OpPoly transition_power(int k) { return {{{Rational(1), std::string(k, 'P')}}}; }
};

/// y = P(k) op P(k) x for x indexed by k, without materializing op.
/// Q uses the degrees of g itself.
template <typename Scalar>
std::vector<Scalar> restrict_apply(const Graph& g, const OpPoly& op, const VertexSet& k,
                                   const std::vector<Scalar>& x);

}  // namespace fzeta
