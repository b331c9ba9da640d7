#include "fzeta/zeta.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fzeta {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::MatrixXcd to_eigen(const std::vector<std::vector<Complex>>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return a;
}

// I - Au + Qu^2 on one level; Q from ambient degrees or the level's own.
Eigen::MatrixXcd bass_matrix(const Exhaustion& x, Complex u, int level, bool ambient_q) {
  const Graph& g = x.level(level);
  const Graph& deep = x.level(x.max_level());
  CopyMap emb = x.embedding_into(level, x.max_level());
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    int deg = ambient_q ? deep.degree(emb(v)) : g.degree(v);
    m(v, v) = 1.0 + Complex(deg - 1) * u * u;
    for (Vertex w : g.neighbors(v)) m(v, w) -= u;
  }
  return m;
}

std::vector<Complex> spectrum_of(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  std::vector<Complex> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

}  // namespace

DomainGuards domain_guards(int d) {
  if (d < 2) throw std::invalid_argument("degree must be >= 2");
  DomainGuards g;
  g.alpha = alpha_bound(d);
  g.r_series = 1.0 / (d - 1);
  g.r_det = 1.0 / g.alpha;
  g.r_approx = 1.0 / (d + std::sqrt(static_cast<double>(d) * d + 2.0 * (d - 1)));
  return g;
}

RationalSeries log_zeta_from_counts(const std::vector<Rational>& counts, int M) {
  RationalSeries s(M);
  for (int m = 1; m <= M && m < static_cast<int>(counts.size()); ++m)
    s[m] = counts[static_cast<std::size_t>(m)] / Rational(m);
  return s;
}

RationalSeries zeta_from_counts(const std::vector<Rational>& counts, int M) {
  return log_zeta_from_counts(counts, M).exp();
}

RationalSeries euler_product(const std::vector<std::pair<int, Rational>>& length_exponents,
                             int M) {
  RationalSeries log_z(M);
  for (const auto& [len, e] : length_exponents) {
    if (len <= 0) throw std::invalid_argument("cycle length must be positive");
    for (int k = 1; k * len <= M; ++k) log_z[k * len] += e / Rational(k);
  }
  return log_z.exp();
}

RationalSeries euler_product(const std::vector<CycleRecord>& records, int M) {
  std::vector<std::pair<int, Rational>> factors;
  factors.reserve(records.size());
  for (const auto& r : records) {
    if (r.size == 0 || r.density == 0)
      throw std::invalid_argument("euler product needs multiplicities on every record");
    factors.emplace_back(r.length, r.density);
  }
  return euler_product(factors, M);
}

DetDomainCertificate det_certificate(const std::vector<Complex>& spectrum) {
  DetDomainCertificate cert;
  cert.spectrum = spectrum;
  double scale = 0;
  for (Complex z : spectrum) scale = std::max(scale, std::abs(z));
  const int steps = 4096;
  cert.margin = -1e300;
  for (int s = 0; s < steps; ++s) {
    double theta = 2 * pi * s / steps;
    double m = 1e300;
    for (Complex z : spectrum) m = std::min(m, std::cos(theta) * z.real() + std::sin(theta) * z.imag());
    if (m > cert.margin) {
      cert.margin = m;
      cert.theta0 = theta;
    }
  }
  cert.ok = cert.margin > 1e-12 * std::max(scale, 1.0);
  return cert;
}

Complex branch_log(Complex z, double theta0) {
  double delta = std::arg(z) - theta0;
  delta -= 2 * pi * std::floor((delta + pi) / (2 * pi));
  return {std::log(std::abs(z)), theta0 + delta};
}

Complex analytic_det(const std::vector<Complex>& spectrum) {
  DetDomainCertificate cert = det_certificate(spectrum);
  if (!cert.ok)
    throw std::domain_error("analytic determinant undefined: 0 in the convex hull of the spectrum");
  Complex mean = 0;
  for (Complex z : spectrum) mean += branch_log(z, cert.theta0);
  mean /= static_cast<double>(spectrum.size());
  return std::exp(mean);
}

std::vector<Complex> matrix_spectrum(const std::vector<std::vector<Complex>>& matrix) {
  return spectrum_of(to_eigen(matrix));
}

Complex analytic_det_matrix(const std::vector<std::vector<Complex>>& matrix) {
  return analytic_det(matrix_spectrum(matrix));
}

ZetaEvaluation det_formula_zeta(const Exhaustion& x, Complex u, int level, bool ambient_q) {
  DomainGuards guards = domain_guards(x.max_degree());
  if (std::abs(u) >= guards.r_det)
    throw std::domain_error("determinant formula guard: |u| must be below 1/alpha");
  const Graph& g = x.level(level);
  std::vector<Complex> spec = spectrum_of(bass_matrix(x, u, level, ambient_q));
  Complex det_g = analytic_det(spec);
  double chi = (static_cast<double>(g.vertex_count()) - static_cast<double>(g.edge_count())) /
               static_cast<double>(g.vertex_count());
  Complex prefactor = std::exp(Complex(chi) * std::log(1.0 - u * u));
  ZetaEvaluation ev;
  ev.u = u;
  ev.method = ambient_q ? "det_formula" : "det_formula_subgraph_q";
  ev.value = prefactor / det_g;
  ev.level = level;
  ev.bound = guards.r_det;
  return ev;
}

double det_formula_q_gap(const Exhaustion& x, Complex u, int level) {
  Complex a = det_formula_zeta(x, u, level, true).value;
  Complex b = det_formula_zeta(x, u, level, false).value;
  return std::abs(a - b);
}

namespace {

Rational rational_det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = Rational(1) / m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      Rational f = m[row][col] * inv;
      for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return det;
}

}  // namespace

BassForm finite_bass_form(const Graph& g) {
  const std::size_t n = static_cast<std::size_t>(g.vertex_count());
  const int deg = 2 * static_cast<int>(n);
  // Evaluate det(I - Au + Qu^2) at deg+1 integer points, then interpolate.
  std::vector<Rational> points, values;
  for (int t = 0; t <= deg; ++t) {
    Rational u(t);
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      m[v][v] = Rational(1) + Rational(g.degree(v) - 1) * u * u;
      for (Vertex w : g.neighbors(v)) m[v][w] -= u;
    }
    points.push_back(u);
    values.push_back(rational_det(std::move(m)));
  }
  // Newton's divided differences, then expansion to monomial coefficients.
  std::vector<Rational> dd = values;
  for (int level = 1; level <= deg; ++level)
    for (int i = deg; i >= level; --i)
      dd[static_cast<std::size_t>(i)] =
          (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i) - 1]) /
          (points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(i - level)]);
  std::vector<Rational> coeffs(static_cast<std::size_t>(deg) + 1, Rational(0));
  std::vector<Rational> basis{Rational(1)};  // product of (u - points[j])
  for (int i = 0; i <= deg; ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j)
      coeffs[j] += dd[static_cast<std::size_t>(i)] * basis[j];
    if (i < deg) {
      basis.push_back(Rational(0));
      for (std::size_t j = basis.size() - 1; j > 0; --j)
        basis[j] = basis[j - 1] - points[static_cast<std::size_t>(i)] * basis[j];
      basis[0] = -points[static_cast<std::size_t>(i)] * basis[0];
    }
  }
  BassForm form;
  for (const Rational& c : coeffs) {
    if (denominator(c) != 1) throw std::logic_error("determinant polynomial not integral");
    form.det_poly.push_back(numerator(c));
  }
  while (form.det_poly.size() > 1 && form.det_poly.back() == 0) form.det_poly.pop_back();
  form.euler_exponent =
      static_cast<long long>(g.edge_count()) - static_cast<long long>(g.vertex_count());
  return form;
}

RationalSeries finite_ihara_zeta_series(const Graph& g, int M) {
  BassForm form = finite_bass_form(g);
  RationalSeries det_series(M);
  for (std::size_t k = 0; k < form.det_poly.size() && k <= static_cast<std::size_t>(M); ++k)
    det_series[static_cast<int>(k)] = Rational(form.det_poly[k]);
  RationalSeries one_minus_u2(M);
  one_minus_u2[0] = 1;
  if (M >= 2) one_minus_u2[2] = -1;
  RationalSeries inv_z = one_minus_u2.pow(Rational(form.euler_exponent)) * det_series;
  return inv_z.reciprocal();
}

Complex finite_ihara_zeta_value(const Graph& g, Complex u) {
  BassForm form = finite_bass_form(g);
  Complex det = 0;
  for (std::size_t k = form.det_poly.size(); k-- > 0;)
    det = det * u + Complex(to_double(form.det_poly[k]));
  Complex pre = std::pow(1.0 - u * u, Complex(static_cast<double>(form.euler_exponent)));
  return 1.0 / (pre * det);
}

std::vector<ApproxRow> approx_zeta(const Exhaustion& x, Complex u, int min_level, int max_level,
                                   Complex reference) {
  DomainGuards guards = domain_guards(x.max_degree());
  if (std::abs(u) >= guards.r_approx)
    throw std::domain_error("approximation guard: |u| must be below the norm-estimate radius");
  std::vector<ApproxRow> rows;
  for (int n = min_level; n <= max_level; ++n) {
    const Graph& g = x.level(n);
    std::vector<Complex> spec = spectrum_of(bass_matrix(x, u, n, false));
    // ||f(u)|| < 1/2 inside the guard disc, so the spectrum sits in the
    // right half-plane and principal logs are branch-safe.
    Complex log_det = 0;
    for (Complex z : spec) log_det += std::log(z);
    Complex log_z = -Complex(static_cast<double>(g.edge_count()) -
                             static_cast<double>(g.vertex_count())) *
                        std::log(1.0 - u * u) -
                    log_det;
    ApproxRow row;
    row.level = n;
    row.value = std::exp(log_z / Complex(static_cast<double>(g.vertex_count())));
    row.dist_to_ref = std::abs(row.value - reference);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fzeta
