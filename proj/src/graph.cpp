#include "fzeta/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace fzeta {

Graph Graph::from_edges(Vertex vertex_count, const std::vector<Edge>& edges) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop edge (" + std::to_string(u) + ")");
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    norm.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

  Graph g;
  g.n_ = vertex_count;
  std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
  for (auto [u, v] : norm) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
  for (Vertex v = 0; v < vertex_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(static_cast<std::size_t>(g.offsets_[vertex_count]));
  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : norm) {
    g.adj_[cursor[u]++] = v;
    g.adj_[cursor[v]++] = u;
  }
  for (Vertex v = 0; v < vertex_count; ++v)
    std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
  g.max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < n_; ++v)
    for (Vertex w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

Graph Graph::read_edge_list(std::istream& in) {
  std::string tag;
  Vertex n = 0;
  std::size_t m = 0;
  if (!(in >> tag >> n >> m) || tag != "p") throw std::runtime_error("bad edge-list header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vertex u, v;
    if (!(in >> tag >> u >> v) || tag != "e") throw std::runtime_error("bad edge line");
    edges.emplace_back(u, v);
  }
  return from_edges(n, edges);
}

void Graph::write_edge_list(std::ostream& out) const {
  out << "p " << n_ << " " << edge_count() << "\n";
  for (auto [u, v] : edges()) out << "e " << u << " " << v << "\n";
}

std::string Graph::to_json() const {
  std::ostringstream os;
  os << "{\"n\": " << n_ << ", \"edges\": [";
  bool first = true;
  for (auto [u, v] : edges()) {
    if (!first) os << ",";
    first = false;
    os << "[" << u << "," << v << "]";
  }
  os << "]}";
  return os.str();
}

VertexSet ball(const Graph& g, const VertexSet& center, int radius) {
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<Vertex> front;
  for (Vertex v : center) {
    seen[v] = 1;
    front.push_back(v);
  }
  for (int r = 0; r < radius && !front.empty(); ++r) {
    std::vector<Vertex> next;
    for (Vertex v : front)
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          next.push_back(w);
        }
    front = std::move(next);
  }
  VertexSet out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

VertexSet frontier(const Graph& g, const VertexSet& k) {
  std::vector<char> in_k(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : k) in_k[v] = 1;
  VertexSet out;
  for (Vertex v : k)
    for (Vertex w : g.neighbors(v))
      if (!in_k[w]) {
        out.push_back(v);
        break;
      }
  return out;
}

bool vertex_set_contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

VertexSet vertex_set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet vertex_set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet vertex_set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

double spectral_radius_estimate(const Graph& g, int iterations) {
  const Vertex n = g.vertex_count();
  if (n == 0) return 0.0;
  std::vector<double> x(static_cast<std::size_t>(n), 1.0), y(static_cast<std::size_t>(n));
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    for (Vertex v = 0; v < n; ++v) {
      double acc = 0.0;
      for (Vertex w : g.neighbors(v)) acc += x[w];
      y[v] = acc;
    }
    double norm = 0.0;
    for (double t : y) norm += t * t;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    lambda = norm;
    for (Vertex v = 0; v < n; ++v) x[v] = y[v] / norm;
  }
  return lambda;
}

int OpPoly::propagation() const {
  int r = 0;
  bool has_q = false;
  for (const auto& t : terms) {
    int a = static_cast<int>(std::count(t.word.begin(), t.word.end(), 'A') +
                             std::count(t.word.begin(), t.word.end(), 'P'));
    r = std::max(r, a);
    has_q = has_q || t.word.find('Q') != std::string::npos;
  }
  return r + (has_q ? 1 : 0);
}

double OpPoly::norm_bound(int d) const {
  double bound = 0.0;
  for (const auto& t : terms) {
    double factor = std::abs(to_double(t.coeff));
    for (char c : t.word) {
      if (c == 'A') factor *= d;
      else if (c == 'Q') factor *= d - 1;
      // 'P' is a contraction
    }
    bound += factor;
  }
  return bound;
}

template <typename Scalar>
std::vector<Scalar> restrict_apply(const Graph& g, const OpPoly& op, const VertexSet& k,
                                   const std::vector<Scalar>& x) {
  if (x.size() != k.size()) throw std::invalid_argument("restrict_apply: dimension mismatch");
  std::vector<std::int32_t> pos(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < k.size(); ++i) pos[k[i]] = static_cast<std::int32_t>(i);

  std::vector<Scalar> result(k.size(), Scalar(0));
  std::vector<Scalar> cur(k.size()), next(k.size());
  for (const auto& term : op.terms) {
    cur = x;
    // Apply word factors right to left; every factor is sandwiched by P(k).
    for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) {
      std::fill(next.begin(), next.end(), Scalar(0));
      if (*it == 'A') {
        for (std::size_t i = 0; i < k.size(); ++i) {
          if (cur[i] == Scalar(0)) continue;
          for (Vertex w : g.neighbors(k[i]))
            if (pos[w] >= 0) next[pos[w]] += cur[i];
        }
      } else if (*it == 'Q') {
        for (std::size_t i = 0; i < k.size(); ++i) next[i] = Scalar(g.degree(k[i]) - 1) * cur[i];
      } else if (*it == 'P') {
        for (std::size_t i = 0; i < k.size(); ++i) {
          if (cur[i] == Scalar(0)) continue;
          for (Vertex w : g.neighbors(k[i]))
            if (pos[w] >= 0) next[pos[w]] += cur[i];
        }
        for (std::size_t i = 0; i < k.size(); ++i) {
          if constexpr (std::is_same_v<Scalar, Rational>)
            next[i] /= Rational(g.degree(k[i]));
          else
            next[i] /= Scalar(g.degree(k[i]));
        }
      } else {
        throw std::invalid_argument("restrict_apply: unknown operator symbol");
      }
      std::swap(cur, next);
    }
    Scalar c;
    if constexpr (std::is_same_v<Scalar, Rational>)
      c = term.coeff;
    else
      c = Scalar(to_double(term.coeff));
    for (std::size_t i = 0; i < k.size(); ++i) result[i] += c * cur[i];
  }
  return result;
}

template std::vector<Rational> restrict_apply<Rational>(const Graph&, const OpPoly&,
                                                        const VertexSet&,
                                                        const std::vector<Rational>&);
template std::vector<double> restrict_apply<double>(const Graph&, const OpPoly&, const VertexSet&,
                                                    const std::vector<double>&);
template std::vector<Complex> restrict_apply<Complex>(const Graph&, const OpPoly&, const VertexSet&,
                                                      const std::vector<Complex>&);

}  // namespace fzeta
