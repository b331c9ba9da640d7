#include "fzeta/funceq.hpp"

#include "fzeta/counts.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fzeta {

namespace {

// Binomial coefficient, small arguments only.
double binom(int n, int k) {
  double b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace

RegularityReport detect_regularity(const Exhaustion& x) {
  const int deepest = x.max_level();
  const Graph& deep = x.level(deepest);
  // K_N's own boundary degrees are not settled yet, so measure K_1..K_{N-1}
  // inside K_N (all levels settle there except the persistent exceptions).
  const int measured = std::max(1, deepest - 1);
  RegularityReport report;
  int mode_degree = 0;
  for (int k = 1; k <= measured; ++k) {
    CopyMap emb = x.embedding_into(k, deepest);
    std::map<int, int> histogram;
    for (Vertex v = 0; v < x.level(k).vertex_count(); ++v) ++histogram[deep.degree(emb(v))];
    int best = 0, best_count = -1;
    for (const auto& [deg, count] : histogram)
      if (count > best_count) {
        best = deg;
        best_count = count;
      }
    if (k == measured) mode_degree = best;
    int exceptional = static_cast<int>(x.level(k).vertex_count()) - best_count;
    report.exceptional_per_level.push_back(exceptional);
  }
  report.q = mode_degree - 1;
  // Essentially regular: the exceptional count has stopped growing (observed
  // constant over the two deepest measured levels).
  const auto& e = report.exceptional_per_level;
  report.essentially_regular =
      e.size() == 1 ? e[0] == 0 : e[e.size() - 1] == e[e.size() - 2];
  return report;
}

bool omega_membership(Complex u, int q, double band) {
  if (q < 2) throw std::invalid_argument("omega is defined for q >= 2");
  double r = std::abs(u);
  if (std::abs(r - 1.0 / std::sqrt(static_cast<double>(q))) < band) return false;
  if (std::abs(u.imag()) < band) {
    double a = std::abs(u.real());
    if (a >= 1.0 / q - band && a <= 1.0 + band) return false;
  }
  return true;
}

Complex RegularEvaluator::det(Complex u) const {
  Complex mean = 0;
  for (double l : lambda) mean += std::log(1.0 + Complex(q) * u * u - u * l);
  return std::exp(mean / static_cast<double>(lambda.size()));
}

Complex RegularEvaluator::zeta(Complex u) const {
  return std::exp(Complex(chi) * std::log(1.0 - u * u)) / det(u);
}

RegularEvaluator make_regular_evaluator(const Exhaustion& x, int level) {
  RegularityReport report = detect_regularity(x);
  if (!report.essentially_regular)
    throw std::domain_error("continuation requires an essentially regular exhaustion");
  const Graph& g = x.level(level);
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (Vertex w : g.neighbors(v)) a(v, w) = 1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  RegularEvaluator ev;
  ev.q = report.q;
  ev.level = level;
  ev.chi = (1.0 - report.q) / 2.0;
  ev.lambda.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  return ev;
}

CompletionValues completions(Complex u, int q, Complex z) {
  if (!omega_membership(u, q))
    throw std::domain_error("completion evaluated outside omega");
  Complex one_minus_u2 = 1.0 - u * u;
  Complex qd(static_cast<double>(q));
  CompletionValues c;
  c.lambda = std::exp(0.5 * qd * std::log(one_minus_u2) +
                      0.5 * std::log(1.0 - qd * qd * u * u)) *
             z;
  c.xi = std::exp(0.5 * (qd - 1.0) * std::log(1.0 + u) +
                  0.5 * (qd + 1.0) * std::log(1.0 - u)) *
         (1.0 - qd * u) * z;
  c.Xi = std::exp(0.5 * (qd - 1.0) * std::log(one_minus_u2)) * (1.0 + qd * u * u) * z;
  return c;
}

FuncEqResidual funceq_residual(const RegularEvaluator& ev, Complex u) {
  Complex u_image = 1.0 / (Complex(static_cast<double>(ev.q)) * u);
  CompletionValues a = completions(u, ev.q, ev.zeta(u));
  CompletionValues b = completions(u_image, ev.q, ev.zeta(u_image));
  FuncEqResidual r;
  r.u = u;
  r.u_image = u_image;
  r.lambda_res = std::abs(a.lambda + b.lambda);
  r.xi_res = std::abs(a.xi - b.xi);
  r.Xi_res = std::abs(a.Xi - b.Xi);
  return r;
}

std::vector<TransitionCheckRow> transition_series_check(const Exhaustion& x, int M) {
  RegularityReport report = detect_regularity(x);
  if (!report.essentially_regular)
    throw std::domain_error("transition series requires an essentially regular exhaustion");
  const int q = report.q;
  PathCountTable table = path_count_table(x, M);
  std::vector<double> tr_p(static_cast<std::size_t>(M) + 1, 0);
  std::vector<double> tr_p_bound(static_cast<std::size_t>(M) + 1, 0);
  tr_p[0] = 1;
  for (int k = 1; k <= M; ++k) {
    TraceEstimate est = normalized_trace(x, OpPoly::transition_power(k));
    tr_p[static_cast<std::size_t>(k)] = est.value;
    tr_p_bound[static_cast<std::size_t>(k)] = est.tail_bound;
  }
  std::vector<TransitionCheckRow> rows;
  for (int m = 1; m <= M; ++m) {
    TransitionCheckRow row;
    row.m = m;
    row.series_coeff = to_double(table.n_value(m)) / m;
    row.bound = table.n_err(m) / m;
    double coeff = m % 2 == 0 ? static_cast<double>(q - 1) / m : 0.0;
    for (int n = (m + 1) / 2; n <= m; ++n) {
      int k = 2 * n - m;
      double weight = binom(n, k) * std::pow(static_cast<double>(q + 1), k) *
                      std::pow(static_cast<double>(-q), m - n) / n;
      coeff += weight * tr_p[static_cast<std::size_t>(k)];
      row.bound += std::abs(weight) * tr_p_bound[static_cast<std::size_t>(k)];
    }
    row.transition_coeff = coeff;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fzeta
