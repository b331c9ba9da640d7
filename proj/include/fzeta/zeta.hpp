#pragma once

#include "fzeta/counts.hpp"
#include "fzeta/cycles.hpp"
#include "fzeta/series.hpp"

#include <string>
#include <vector>

namespace fzeta {

/// Validity radii: series |u| < 1/(d-1), determinant |u| < 1/alpha,
/// approximation |u| < 1/(d + sqrt(d^2 + 2(d-1))).
struct DomainGuards {
  double alpha;
  double r_series;
  double r_det;
  double r_approx;
};

DomainGuards domain_guards(int d);

/// log Z = sum N_m / m u^m from counts indexed 1..M (index 0 ignored).
RationalSeries log_zeta_from_counts(const std::vector<Rational>& counts, int M);
RationalSeries zeta_from_counts(const std::vector<Rational>& counts, int M);

/// prod (1 - u^len)^(-exponent) truncated at order M, via exact logs.
RationalSeries euler_product(const std::vector<std::pair<int, Rational>>& length_exponents, int M);

/// Adapter: one factor per prime G-class, weight = class density.
RationalSeries euler_product(const std::vector<CycleRecord>& records, int M);

/// Half-plane witness that 0 lies outside the convex hull of a spectrum.
struct DetDomainCertificate {
  std::vector<Complex> spectrum;
  double theta0 = 0;  // direction of the separating half-plane
  double margin = 0;  // min Re(e^{-i theta0} lambda); positive iff certified
  bool ok = false;
};

DetDomainCertificate det_certificate(const std::vector<Complex>& spectrum);

/// Branch log: cut along the ray opposite theta0, arg in (theta0 - pi, theta0 + pi].
Complex branch_log(Complex z, double theta0);

/// Analytic determinant with the normalized trace: exp(mean of branch logs).
/// Throws when 0 cannot be separated from the convex hull of the spectrum.
Complex analytic_det(const std::vector<Complex>& spectrum);
Complex analytic_det_matrix(const std::vector<std::vector<Complex>>& matrix);

/// Eigenvalues of a dense complex matrix (row-major vectors).
std::vector<Complex> matrix_spectrum(const std::vector<std::vector<Complex>>& matrix);

struct ZetaEvaluation {
  Complex u;
  std::string method;
  Complex value;
  int level = 0;
  double bound = 0;  // guard radius or reported gap, method dependent
};

/// Determinant-formula value at one level:
/// Z = (1-u^2)^{chi_n} / det_G(I - Au + Qu^2), det_G through the normalized
/// eigenvalue-log sum on the restricted matrix. `ambient_q` selects the
/// ambient degree diagonal E_n Q E_n over the subgraph's own Q_n.
ZetaEvaluation det_formula_zeta(const Exhaustion& x, Complex u, int level, bool ambient_q = true);

/// Gap between the two Q variants at one level (echo of the delta_n lemma).
double det_formula_q_gap(const Exhaustion& x, Complex u, int level);

/// Finite-graph Bass form: 1/Z_K = (1-u^2)^{|E|-|V|} * det(I - Au + Qu^2),
/// det expanded as an exact integer polynomial.
struct BassForm {
  std::vector<Int> det_poly;  // coefficients, constant first
  long long euler_exponent;   // |E| - |V|
};

BassForm finite_bass_form(const Graph& g);

/// Z_K as an exact series, by inverting the Bass form.
RationalSeries finite_ihara_zeta_series(const Graph& g, int M);

Complex finite_ihara_zeta_value(const Graph& g, Complex u);

struct ApproxRow {
  int level = 0;
  Complex value;            // Z_{K_n}(u)^{1/|K_n|}
  double dist_to_ref = 0;   // |value - reference|
};

/// Per-level normalized finite zetas. Requires |u| < r_approx; the 1/|K_n|
/// power is branch-tracked through log Z_{K_n} built from principal logs
/// (valid in the guard disc where ||f(u)|| < 1/2).
std::vector<ApproxRow> approx_zeta(const Exhaustion& x, Complex u, int min_level, int max_level,
                                   Complex reference);

}  // namespace fzeta
