#pragma once

#include "fzeta/fractal.hpp"
#include "fzeta/series.hpp"

#include <vector>

namespace fzeta {

struct RegularityReport {
  bool essentially_regular = false;
  int q = 0;  // meaningful when essentially_regular
  std::vector<int> exceptional_per_level;  // vertices with ambient degree != q+1
};

/// Essentially (q+1)-regular detection through ambient degrees: vertices of
/// K_k measured inside the deepest level.
RegularityReport detect_regularity(const Exhaustion& x);

/// True iff u stays clear of the circle |u|^2 = 1/q and the real segments
/// 1/q <= |x| <= 1, with a numerical exclusion band.
bool omega_membership(Complex u, int q, double band = 1e-6);

/// Holomorphic-continuation evaluator for an essentially regular exhaustion,
/// built on the adjacency spectrum of one restricted level:
/// 1/Z = (1-u^2)^{-chi} det_G((1 + q u^2) I - u A), chi = (1-q)/2.
struct RegularEvaluator {
  int q = 0;
  int level = 0;
  double chi = 0;
  std::vector<double> lambda;  // adjacency eigenvalues of the level

  Complex det(Complex u) const;   // normalized, principal logs per eigenvalue
  Complex zeta(Complex u) const;
};

RegularEvaluator make_regular_evaluator(const Exhaustion& x, int level);

struct CompletionValues {
  Complex lambda;
  Complex xi;
  Complex Xi;
};

/// The three completions of a zeta value; principal branches continued from
/// u = 0 where every prefactor is 1. Rejects u outside Omega.
CompletionValues completions(Complex u, int q, Complex z);

struct FuncEqResidual {
  Complex u;
  Complex u_image;     // 1/(qu)
  double lambda_res;   // |Lambda(u) + Lambda(1/(qu))|
  double xi_res;       // |xi(u) - xi(1/(qu))|
  double Xi_res;       // |Xi(u) - Xi(1/(qu))|
};

FuncEqResidual funceq_residual(const RegularEvaluator& ev, Complex u);

struct TransitionCheckRow {
  int m = 0;
  double series_coeff = 0;      // N_m / m route
  double transition_coeff = 0;  // transition-operator route
  double bound = 0;
};

/// Rebuilds log Z from (1-q)/2 log(1-u^2) plus the binomial sums of
/// Tr_G(P^k) and compares with the N_m series, coefficient by coefficient.
std::vector<TransitionCheckRow> transition_series_check(const Exhaustion& x, int M);

}  // namespace fzeta
