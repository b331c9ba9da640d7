#include "fzeta/counts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fzeta {

namespace {

// Worst-case magnitude of any A_m entry sum: d(d-1)^(m-1).
double entry_bound(int d, int m) {
  if (m == 0) return 1;
  return d * std::pow(static_cast<double>(std::max(1, d - 1)), m - 1);
}

std::vector<Vertex> sorted_image(const Exhaustion& x, int k) {
  return x.embedding_into(k, x.max_level()).image();
}

}  // namespace

double alpha_bound(int d) {
  return (d + std::sqrt(static_cast<double>(d) * d + 4.0 * d)) / 2.0;
}

std::vector<std::vector<std::int64_t>> am_diagonal_table(const Graph& g, int M) {
  if (M < 0) throw std::invalid_argument("negative order");
  if (entry_bound(g.max_degree(), M) > 4e18)
    throw std::invalid_argument("order too large for 64-bit path counts");
  const Vertex n = g.vertex_count();
  std::vector<std::vector<std::int64_t>> diag(static_cast<std::size_t>(M) + 1,
                                              std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  std::vector<std::int32_t> loc(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> ball_verts;
  std::vector<std::int64_t> y0, y1, y2;
  for (Vertex v = 0; v < n; ++v) {
    // Ball of radius M around v; supp(y_m) stays inside, so zero-padding
    // outside is lossless while Q keeps the ambient degrees.
    ball_verts.assign(1, v);
    loc[v] = 0;
    std::size_t frontier_begin = 0;
    for (int r = 0; r < M; ++r) {
      std::size_t frontier_end = ball_verts.size();
      for (std::size_t i = frontier_begin; i < frontier_end; ++i)
        for (Vertex w : g.neighbors(ball_verts[i]))
          if (loc[w] < 0) {
            loc[w] = static_cast<std::int32_t>(ball_verts.size());
            ball_verts.push_back(w);
          }
      frontier_begin = frontier_end;
    }
    const std::size_t bs = ball_verts.size();
    // y0 = A_{m-2} e_v, y1 = A_{m-1} e_v, y2 = scratch.
    y0.assign(bs, 0);
    y1.assign(bs, 0);
    y2.assign(bs, 0);
    y0[0] = 1;
    diag[0][v] = 1;
    if (M >= 1) {
      for (Vertex w : g.neighbors(v)) y1[static_cast<std::size_t>(loc[w])] = 1;
      diag[1][v] = 0;
    }
    for (int m = 2; m <= M; ++m) {
      for (std::size_t i = 0; i < bs; ++i) {
        std::int64_t acc = 0;
        for (Vertex w : g.neighbors(ball_verts[i]))
          if (loc[w] >= 0) acc += y1[static_cast<std::size_t>(loc[w])];
        // A_2 = A A_1 - (Q+I) A_0; A_m = A A_{m-1} - Q A_{m-2} for m >= 3
        acc -= static_cast<std::int64_t>(g.degree(ball_verts[i]) - 1 + (m == 2 ? 1 : 0)) * y0[i];
        y2[i] = acc;
      }
      diag[m][v] = y2[0];
      std::swap(y0, y1);
      std::swap(y1, y2);
    }
    for (Vertex w : ball_verts) loc[w] = -1;
  }
  return diag;
}

Rational diag_entry(const Graph& g, const OpPoly& op, Vertex v) {
  VertexSet k = ball(g, {v}, op.propagation());
  std::vector<Rational> x(k.size(), Rational(0));
  auto it = std::lower_bound(k.begin(), k.end(), v);
  std::size_t idx = static_cast<std::size_t>(it - k.begin());
  x[idx] = 1;
  return restrict_apply<Rational>(g, op, k, x)[idx];
}

TraceEstimate normalized_trace(const Exhaustion& x, const OpPoly& op) {
  const int N = x.max_level();
  const Graph& deep = x.level(N);
  const int d = x.max_degree();
  TraceEstimate est;
  est.radius = op.propagation();
  est.norm_bound = op.norm_bound(d);

  std::vector<Rational> diag(static_cast<std::size_t>(deep.vertex_count()));
  for (Vertex v = 0; v < deep.vertex_count(); ++v) diag[v] = diag_entry(deep, op, v);

  VertexSet cutoff = ball(deep, x.g_frontiers.back(), est.radius);
  for (int k = 1; k <= N; ++k) {
    VertexSet img = sorted_image(x, k);
    Rational sum(0);
    for (Vertex v : img) sum += diag[v];
    est.levels.push_back(k);
    est.values.push_back(sum / Rational(x.level(k).vertex_count()));
    est.cauchy_bounds.push_back(5.0 * est.norm_bound *
                                to_double(x.epsilon[static_cast<std::size_t>(k) - 1]) *
                                std::pow(d + 1.0, est.radius));
    VertexSet touched = vertex_set_intersection(img, cutoff);
    est.truncation.push_back(est.norm_bound * static_cast<double>(touched.size()) /
                             static_cast<double>(x.level(k).vertex_count()));
    VertexSet omega = x.interior_in_deepest(k, est.radius);
    if (omega.empty()) {
      est.interior_values.emplace_back(0);
      est.interior_defined.push_back(false);
    } else {
      Rational isum(0);
      for (Vertex v : omega) isum += diag[v];
      est.interior_values.push_back(isum / Rational(static_cast<long long>(omega.size())));
      est.interior_defined.push_back(true);
    }
  }
  est.value = to_double(est.values.back());
  est.tail_bound = est.cauchy_bounds.back() + est.truncation.back();
  return est;
}

namespace {

// Sum over j >= 1 of A_{m-2j}(v,v), up to the last index in `range_top`.
std::int64_t tail_sum(const std::vector<std::vector<std::int64_t>>& diag, int m, int range_top,
                      Vertex v) {
  std::int64_t s = 0;
  for (int j = 1; j <= range_top; ++j) s += diag[static_cast<std::size_t>(m - 2 * j)][v];
  return s;
}

}  // namespace

Rational PathCountTable::n_at(int m, int level) const {
  return N_m[static_cast<std::size_t>(m)][static_cast<std::size_t>(level) - 1];
}
Rational PathCountTable::t_at(int m, int level) const {
  return t_m[static_cast<std::size_t>(m)][static_cast<std::size_t>(level) - 1];
}
double PathCountTable::err_at(int m, int level) const {
  return err[static_cast<std::size_t>(m)][static_cast<std::size_t>(level) - 1];
}

PathCountTable path_count_table(const Exhaustion& x, int M) {
  const int N = x.max_level();
  const Graph& deep = x.level(N);
  const int d = x.max_degree();
  auto diag = am_diagonal_table(deep, M);

  PathCountTable table;
  table.max_order = M;
  for (int k = 1; k <= N; ++k) table.levels.push_back(k);
  table.tr_Am.resize(static_cast<std::size_t>(M) + 1);
  table.t_m.resize(static_cast<std::size_t>(M) + 1);
  table.N_m.resize(static_cast<std::size_t>(M) + 1);
  table.err.resize(static_cast<std::size_t>(M) + 1);

  std::vector<VertexSet> images;
  for (int k = 1; k <= N; ++k) images.push_back(sorted_image(x, k));
  std::vector<VertexSet> cutoffs;  // B_{floor(m/2)}(invariant frontier of K_N)
  for (int m = 0; m <= M; ++m)
    cutoffs.push_back(ball(deep, x.g_frontiers.back(), m / 2));

  for (int m = 0; m <= M; ++m) {
    for (int k = 1; k <= N; ++k) {
      const VertexSet& img = images[static_cast<std::size_t>(k) - 1];
      const Rational card(x.level(k).vertex_count());
      Int tr = 0, tail = 0;
      for (Vertex v : img) {
        tr += diag[static_cast<std::size_t>(m)][v];
        if (m >= 3)
          tail += Int(deep.degree(v) - 2) * tail_sum(diag, m, (m - 1) / 2, v);
      }
      Rational trv = Rational(tr) / card;
      Rational tv = Rational(tail) / card;
      table.tr_Am[static_cast<std::size_t>(m)].push_back(trv);
      table.t_m[static_cast<std::size_t>(m)].push_back(tv);
      table.N_m[static_cast<std::size_t>(m)].push_back(trv - tv);
      double eps = to_double(x.epsilon[static_cast<std::size_t>(k) - 1]);
      double rate = m >= 2 ? 6.0 * std::pow(d - 1.0, m - 2) * d * (d + 1) * eps : 2.0 * eps;
      VertexSet touched =
          vertex_set_intersection(img, cutoffs[static_cast<std::size_t>(m)]);
      double cutoff_slack = entry_bound(d, m) * static_cast<double>(touched.size()) /
                            static_cast<double>(x.level(k).vertex_count());
      table.err[static_cast<std::size_t>(m)].push_back(rate + cutoff_slack);
    }
  }
  return table;
}

std::vector<Int> finite_reduced_counts(const Graph& g, int M) {
  auto diag = am_diagonal_table(g, M);
  std::vector<Int> out(static_cast<std::size_t>(M) + 1, 0);
  for (int m = 1; m <= M; ++m) {
    Int n = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      n += diag[static_cast<std::size_t>(m)][v];
      if (m >= 3) n -= Int(g.degree(v) - 2) * tail_sum(diag, m, (m - 1) / 2, v);
    }
    out[static_cast<std::size_t>(m)] = n;
  }
  return out;
}

namespace {

using DenseInt = std::vector<std::vector<Int>>;

DenseInt dense_adjacency(const Graph& g) {
  const std::size_t n = static_cast<std::size_t>(g.vertex_count());
  DenseInt a(n, std::vector<Int>(n, 0));
  for (auto [u, v] : g.edges()) {
    a[u][v] = 1;
    a[v][u] = 1;
  }
  return a;
}

DenseInt mul(const DenseInt& a, const DenseInt& b) {
  const std::size_t n = a.size();
  DenseInt c(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

BmReport bm_parity_check(const Exhaustion& x, int M) {
  BmReport report;

  // Generating identity, checked coefficient-wise on a small level: the
  // recursion A_m = A_{m-1}A - A_{m-2}Q (m >= 3) with A_2 = A^2 - Q - I is
  // equivalent to (sum_m A_m u^m)(I - Au + Qu^2) = (1 - u^2) I.
  const Graph& small = x.level(std::min(2, x.max_level()));
  const std::size_t n = static_cast<std::size_t>(small.vertex_count());
  DenseInt a = dense_adjacency(small);
  std::vector<DenseInt> am;
  DenseInt id(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  am.push_back(id);
  am.push_back(a);
  DenseInt a2 = mul(a, a);
  for (std::size_t i = 0; i < n; ++i) a2[i][i] -= Int(small.degree(static_cast<Vertex>(i)) - 1) + 1;
  am.push_back(a2);
  const int order = std::min(M, 10);
  for (int m = 3; m <= order; ++m) {
    DenseInt next = mul(am[static_cast<std::size_t>(m) - 1], a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        next[i][j] -= am[static_cast<std::size_t>(m) - 2][i][j] *
                      Int(small.degree(static_cast<Vertex>(j)) - 1);
    am.push_back(std::move(next));
  }
  report.series_identity_ok = true;
  for (int m = 0; m <= order && report.series_identity_ok; ++m) {
    // coefficient of u^m in (sum A_k u^k)(I - Au + Qu^2)
    DenseInt coeff = am[static_cast<std::size_t>(m)];
    if (m >= 1) {
      DenseInt t = mul(am[static_cast<std::size_t>(m) - 1], a);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) coeff[i][j] -= t[i][j];
    }
    if (m >= 2)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          coeff[i][j] += am[static_cast<std::size_t>(m) - 2][i][j] *
                         Int(small.degree(static_cast<Vertex>(j)) - 1);
    Int want_diag = (m == 0) ? 1 : (m == 2 ? -1 : 0);
    for (std::size_t i = 0; i < n && report.series_identity_ok; ++i)
      for (std::size_t j = 0; j < n && report.series_identity_ok; ++j)
        if (coeff[i][j] != (i == j ? want_diag : Int(0))) report.series_identity_ok = false;
  }

  // Parity relations at the deepest level, exact rational equality.
  PathCountTable table = path_count_table(x, M);
  const int N = x.max_level();
  const Graph& deep = x.level(N);
  auto diag = am_diagonal_table(deep, M);
  VertexSet img = x.embedding_into(N, N).image();
  Rational tr_qmi(0);
  for (Vertex v : img) tr_qmi += Rational(deep.degree(v) - 2);
  tr_qmi /= Rational(deep.vertex_count());

  report.parity_ok = true;
  for (int m = 1; m <= M; ++m) {
    Rational tr_bm(0);
    for (Vertex v = 0; v < deep.vertex_count(); ++v) {
      Int b = diag[static_cast<std::size_t>(m)][v];
      b -= Int(deep.degree(v) - 2) * tail_sum(diag, m, m / 2, v);
      tr_bm += Rational(b);
    }
    tr_bm /= Rational(deep.vertex_count());
    report.tr_Bm.push_back(tr_bm);
    Rational want = table.n_at(m, N);
    if (m % 2 == 0) want -= tr_qmi;
    if (tr_bm != want) report.parity_ok = false;
  }
  return report;
}

}  // namespace fzeta
