#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fzeta/counts.hpp"
#include "fzeta/cycles.hpp"
#include "fzeta/funceq.hpp"
#include "fzeta/zeta.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>

using namespace fzeta;

namespace {

void report(int criterion, const char* label, bool ok) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, label);
  CHECK_MESSAGE(ok, "criterion ", criterion, ": ", label);
}

std::vector<Rational> deepest_counts(const PathCountTable& t, int M) {
  std::vector<Rational> c(static_cast<std::size_t>(M) + 1, Rational(0));
  for (int m = 1; m <= M; ++m) c[static_cast<std::size_t>(m)] = t.n_value(m);
  return c;
}

}  // namespace

TEST_CASE("criterion 1: average Euler characteristic") {
  struct Target {
    Family family;
    int level;
    double chi;
  };
  bool ok = true;
  for (Target t : {Target{Family::gasket, 7, -1.0}, Target{Family::vicsek, 5, -1.0 / 3.0},
                   Target{Family::lindstrom, 4, -0.5}}) {
    Exhaustion x = build_exhaustion(t.family, t.level);
    EulerEstimate e = euler_characteristic_average(x);
    ok = ok && std::abs(to_double(e.deepest) - t.chi) <= 0.02;
  }
  report(1, "average Euler characteristic -1, -1/3, -1/2 within 0.02", ok);
}

TEST_CASE("criterion 2: gasket triangle multiplicity 2/9") {
  Exhaustion x = build_exhaustion(Family::gasket, 6);
  bool ok = mu_closed_form(Family::gasket, 1) == Rational(2, 9);
  auto ratios = mu_ratio_sequence(x, 1);
  Rational prev(0);
  for (const auto& [n, r] : ratios) {
    ok = ok && r > prev && r < Rational(2, 9);
    prev = r;
  }
  ok = ok && !ratios.empty() &&
       to_double(Rational(2, 9) - ratios.back().second) < 1e-2;
  report(2, "multiplicity ratios rise to 2/9, final gap < 1e-2", ok);
}

TEST_CASE("criterion 3: spectral counts vs brute-force oracle") {
  bool ok = true;
  struct Setup {
    Family family;
    int min_level, max_level;
  };
  for (Setup s : {Setup{Family::gasket, 2, 4}, Setup{Family::vicsek, 1, 3}}) {
    Exhaustion x = build_exhaustion(s.family, s.max_level);
    PathCountTable table = path_count_table(x, 8);
    auto census = weighted_census(x, 8, x.max_level());
    for (const auto& row : census) {
      double delta = std::abs(to_double(table.n_value(row.m) - row.weighted));
      ok = ok && delta <= table.n_err(row.m);
    }
    for (int level = s.min_level; level <= s.max_level; ++level) {
      const Graph& g = x.level(level);
      auto diag = am_diagonal_table(g, 8);
      for (int m = 1; m <= 8; ++m)
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
          auto oracle = static_cast<std::int64_t>(enumerate_proper_closed(g, m, {v}).size());
          ok = ok && diag[static_cast<std::size_t>(m)][static_cast<std::size_t>(v)] == oracle;
        }
    }
  }
  report(3, "N_m within bound and A_m(v,v) exact vs cycle oracle, m <= 8", ok);
}

TEST_CASE("criterion 4: finite Bass series vs census, order 12") {
  bool ok = true;
  Graph triangle = Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  Exhaustion g2 = build_exhaustion(Family::gasket, 2);
  for (const Graph& g : {triangle, k4, g2.level(2)}) {
    Census census = reduced_cycle_census(g, 12, 1ull << 32);
    RationalSeries log_z(12);
    for (int m = 1; m <= 12; ++m)
      log_z[m] = Rational(census.rows[static_cast<std::size_t>(m) - 1].raw_reduced, m);
    ok = ok && finite_ihara_zeta_series(g, 12) == log_z.exp();
  }
  report(4, "Bass determinant series equals exp of census counts, exact to order 12", ok);
}

TEST_CASE("criterion 5: analytic determinant") {
  bool ok = std::abs(analytic_det_matrix({{Complex(1, 0), 0}, {0, Complex(0, 1)}}) -
                     std::polar(1.0, std::numbers::pi / 4)) < 1e-12;

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  int done = 0;
  while (done < 100) {
    std::vector<std::vector<Complex>> m(4, std::vector<Complex>(4));
    for (auto& row : m)
      for (auto& e : row) e = Complex(coef(rng), coef(rng));
    for (int i = 0; i < 4; ++i) m[i][i] += 4.0;
    auto spec = matrix_spectrum(m);
    if (!det_certificate(spec).ok) continue;
    Complex z = std::polar(1.0 + 0.5 * coef(rng), std::numbers::pi * coef(rng));
    std::vector<Complex> scaled = spec;
    for (auto& s : scaled) s *= z;
    if (!det_certificate(scaled).ok) continue;
    ok = ok && std::abs(analytic_det(scaled) - z * analytic_det(spec)) < 1e-10;
    ++done;
  }

  Complex w = std::polar(1.0, 3 * std::numbers::pi / 4);
  ok = ok && std::abs(analytic_det({1, w * w}) - analytic_det({1, w}) * analytic_det({1, w})) > 0.5;
  report(5, "det_tau value, scaling on 100 random instances, product counterexample", ok);
}

TEST_CASE("criterion 6: determinant formula vs series") {
  Exhaustion x = build_exhaustion(Family::gasket, 6);
  PathCountTable table = path_count_table(x, 24);
  ComplexSeries z = to_complex(zeta_from_counts(deepest_counts(table, 24), 24));
  bool ok = true;
  for (double ur : {0.02, 0.05, 0.1}) {
    Complex u(ur, 0.0);
    Complex series = z.evaluate(u);
    double prev = 1e300;
    for (int level = 4; level <= 6; ++level) {
      double gap = std::abs(det_formula_zeta(x, u, level).value - series);
      ok = ok && gap < prev;
      prev = gap;
    }
    ok = ok && prev < 1e-3;
  }
  report(6, "series vs determinant formula below 1e-3 at level 6, decreasing in level", ok);
}

TEST_CASE("criterion 7: functional equations") {
  Exhaustion x = build_exhaustion(Family::gasket, 6);
  RegularEvaluator ev = make_regular_evaluator(x, 6);
  bool ok = ev.q == 3;
  int points = 0;
  for (double r : {0.08, 0.12})
    for (double a : {std::numbers::pi / 6, -std::numbers::pi / 6, std::numbers::pi / 4,
                     -std::numbers::pi / 4}) {
      FuncEqResidual res = funceq_residual(ev, std::polar(r, a));
      ok = ok && res.lambda_res < 1e-8 && res.xi_res < 1e-8 && res.Xi_res < 1e-8;
      ++points;
    }
  report(7, "Lambda, xi, Xi residuals < 1e-8 on the 8-point grid", ok && points == 8);
}

TEST_CASE("criterion 8: normalized approximation") {
  Exhaustion x = build_exhaustion(Family::gasket, 6);
  PathCountTable table = path_count_table(x, 24);
  ComplexSeries z = to_complex(zeta_from_counts(deepest_counts(table, 24), 24));
  bool ok = true;
  for (double ur : {0.03, 0.05, 0.08}) {
    Complex u(ur, 0.0);
    auto rows = approx_zeta(x, u, 2, 6, z.evaluate(u));
    ok = ok && rows.back().dist_to_ref < rows.front().dist_to_ref;
    ok = ok && rows.back().dist_to_ref < 1e-2;
  }
  report(8, "approximation gap shrinks with level, final gap < 1e-2", ok);
}

TEST_CASE("criterion 9: bound suite") {
  bool ok = true;
  for (int d : {3, 4, 6, 8}) {
    DomainGuards g = domain_guards(d);
    ok = ok && 1 / (2 * g.alpha) < g.r_approx && g.r_approx < g.r_det;
  }
  struct Setup {
    Family family;
    int level;
  };
  for (Setup s : {Setup{Family::gasket, 5}, Setup{Family::vicsek, 4},
                  Setup{Family::lindstrom, 3}, Setup{Family::carpet, 3}}) {
    Exhaustion x = build_exhaustion(s.family, s.level);
    const int d = x.max_degree();
    PathCountTable table = path_count_table(x, 6);
    for (int m = 1; m <= 6; ++m)
      for (std::size_t i = 0; i < table.levels.size(); ++i)
        ok = ok && to_double(table.N_m[static_cast<std::size_t>(m)][i]) <=
                       d * std::pow(d - 1.0, m - 1) + 1e-9;
    for (int n = 1; n <= x.max_level(); ++n) {
      const VertexSet& omega = x.g_frontiers[static_cast<std::size_t>(n) - 1];
      for (int r = 0; r <= 3; ++r)
        ok = ok && ball(x.level(n), omega, r).size() <=
                       omega.size() * std::pow(d + 1.0, r) + 1e-9;
    }
    TraceEstimate est = normalized_trace(x, OpPoly{{{Rational(1), "AA"}}});
    for (std::size_t i = 1; i < est.values.size(); ++i) {
      double gap = std::abs(to_double(est.values[i] - est.values[i - 1]));
      ok = ok && gap <= est.cauchy_bounds[i - 1] + est.cauchy_bounds[i] +
                            est.truncation[i - 1] + est.truncation[i] + 1e-12;
    }
  }
  report(9, "count, ball, trace-Cauchy bounds and radius ordering across families", ok);
}
