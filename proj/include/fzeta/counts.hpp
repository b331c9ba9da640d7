#pragma once

#include "fzeta/fractal.hpp"

#include <cstdint>
#include <vector>

namespace fzeta {

/// Norm bound ||A_m|| <= alpha^m, alpha = (d + sqrt(d^2 + 4d)) / 2.
double alpha_bound(int d);

/// Diagonal entries A_m(v,v) for m = 0..M on every vertex of g, computed by
/// the three-term recursion restricted to the radius-M ball of each vertex.
/// Entries fit 64 bits through the d(d-1)^{m-1} bound (guarded).
std::vector<std::vector<std::int64_t>> am_diagonal_table(const Graph& g, int M);

/// Diagonal entry of a small operator polynomial at one vertex, evaluated on
/// the ball of the propagation radius (exact for the ambient graph as long
/// as the ball does not touch vertices that later gain neighbors).
Rational diag_entry(const Graph& g, const OpPoly& op, Vertex v);

/// Level-by-level normalized restricted traces of a geometric operator.
struct TraceEstimate {
  std::vector<int> levels;
  std::vector<Rational> values;           // Tr(P(K_k) T) / |K_k|, ambient diagonal
  std::vector<Rational> interior_values;  // same averaged over Omega_{k,r}; 0/1 when empty
  std::vector<bool> interior_defined;
  std::vector<double> cauchy_bounds;      // 5 ||T|| eps_k (d+1)^r per level
  std::vector<double> truncation;         // ambient-cutoff slack per level
  double norm_bound = 0;
  int radius = 0;
  double value = 0;       // deepest-level value
  double tail_bound = 0;  // bound on |value - limit|, Cauchy term plus cutoff slack
};

TraceEstimate normalized_trace(const Exhaustion& x, const OpPoly& op);

/// t_m, N_m and Tr A_m per level with rigorous error bounds.
struct PathCountTable {
  int max_order = 0;
  std::vector<int> levels;
  std::vector<std::vector<Rational>> tr_Am;  // [m][level index]
  std::vector<std::vector<Rational>> t_m;
  std::vector<std::vector<Rational>> N_m;
  std::vector<std::vector<double>> err;  // bound on |level value - limit|

  Rational n_at(int m, int level) const;
  Rational t_at(int m, int level) const;
  double err_at(int m, int level) const;
  /// Deepest-level values.
  Rational n_value(int m) const { return N_m[static_cast<std::size_t>(m)].back(); }
  double n_err(int m) const { return err[static_cast<std::size_t>(m)].back(); }
};

PathCountTable path_count_table(const Exhaustion& x, int M);

/// Finite-graph reduced-closed-path counts N_m^K (plain sums, no
/// normalization), from the same recursion plus the tail closed form.
std::vector<Int> finite_reduced_counts(const Graph& g, int M);

struct BmReport {
  bool series_identity_ok = false;  // (sum A_m u^m)(I - Au + Qu^2) = (1-u^2) I
  bool parity_ok = false;           // Tr B_m vs N_m / N_m - Tr(Q-I), exact per level
  std::vector<Rational> tr_Bm;      // deepest level
};

BmReport bm_parity_check(const Exhaustion& x, int M);

}  // namespace fzeta
