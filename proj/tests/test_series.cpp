#include "fzeta/series.hpp"

#include <doctest.h>

using namespace fzeta;

namespace {

RationalSeries one_minus_u(int order) {
  RationalSeries s(order);
  s[0] = 1;
  s[1] = -1;
  return s;
}

}  // namespace

TEST_CASE("geometric series from reciprocal") {
  RationalSeries g = one_minus_u(10).reciprocal();
  for (int k = 0; k <= 10; ++k) CHECK(g[k] == 1);
  CHECK((one_minus_u(10) * g) == RationalSeries::constant(Rational(1), 10));
}

TEST_CASE("reciprocal requires nonzero constant term") {
  CHECK_THROWS_AS(RationalSeries::identity(4).reciprocal(), std::domain_error);
}

TEST_CASE("exp log inverse pair") {
  RationalSeries f(8);
  f[0] = 1;
  f[1] = Rational(2, 3);
  f[3] = Rational(-1, 5);
  f[7] = Rational(9, 4);
  CHECK(f.log().exp() == f);

  RationalSeries g(8);
  g[1] = Rational(1, 2);
  g[2] = Rational(-3, 7);
  g[5] = 4;
  CHECK(g.exp().log() == g);

  CHECK_THROWS_AS(f.exp(), std::domain_error);
  CHECK_THROWS_AS(g.log(), std::domain_error);
}

TEST_CASE("pow expands the binomial series") {
  RationalSeries s = one_minus_u(9).pow(Rational(-2));
  for (int k = 0; k <= 9; ++k) CHECK(s[k] == k + 1);
  // Half-integer exponent round trip: ((1-u)^{1/2})^2 = 1 - u.
  RationalSeries r = one_minus_u(9).pow(Rational(1, 2));
  CHECK(r * r == one_minus_u(9));
}

TEST_CASE("u dlog/du recovers the count series") {
  // Z = (1-u^3)^{-2}: u (log Z)' = 6u^3/(1-u^3), coefficients 6 at multiples of 3.
  RationalSeries z(12);
  z[0] = 1;
  z[3] = -1;
  RationalSeries n = z.pow(Rational(-2)).u_dlog_du();
  for (int m = 1; m <= 12; ++m) CHECK(n[m] == (m % 3 == 0 ? 6 : 0));
}

TEST_CASE("arithmetic truncates at the smaller order") {
  RationalSeries a(3), b(7);
  a[1] = 1;
  b[5] = 1;
  CHECK((a + b).order() == 3);
  CHECK((a * b).order() == 3);
  CHECK(b.truncated(3) == RationalSeries(3));
}

TEST_CASE("evaluate uses Horner") {
  ComplexSeries s(3);
  s[0] = 1;
  s[2] = Complex(0, 1);
  s[3] = 2;
  Complex u(0.5, -0.25);
  CHECK(std::abs(s.evaluate(u) - (1.0 + Complex(0, 1) * u * u + 2.0 * u * u * u)) < 1e-15);
}
