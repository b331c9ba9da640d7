#pragma once

#include "fzeta/rational.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace fzeta {

/// Truncated power series c_0 + c_1 u + ... + c_M u^M.
///
/// Coefficient type is either Rational (exact mode) or Complex (float mode).
/// All operations truncate at the smaller order of their operands.
template <typename T>
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(int order) : c_(static_cast<std::size_t>(order) + 1, T(0)) {}
  PowerSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(T(0));
  }

  static PowerSeries constant(const T& v, int order) {
    PowerSeries s(order);
    s.c_[0] = v;
    return s;
  }
  static PowerSeries identity(int order) {  // the series "u"
    PowerSeries s(order);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<T>& coeffs() const { return c_; }

  PowerSeries truncated(int order) const {
    PowerSeries s(order);
    for (int k = 0; k <= order && k <= this->order(); ++k) s.c_[k] = c_[k];
    return s;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries s(std::min(a.order(), b.order()));
    for (int k = 0; k <= s.order(); ++k) s.c_[k] = a.c_[k] + b.c_[k];
    return s;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries s(std::min(a.order(), b.order()));
    for (int k = 0; k <= s.order(); ++k) s.c_[k] = a.c_[k] - b.c_[k];
    return s;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries s(std::min(a.order(), b.order()));
    for (int i = 0; i <= s.order(); ++i) {
      if (a.c_[i] == T(0)) continue;
      for (int j = 0; i + j <= s.order(); ++j) s.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return s;
  }
  friend PowerSeries operator*(const T& z, const PowerSeries& a) {
    PowerSeries s = a;
    for (auto& c : s.c_) c = z * c;
    return s;
  }
  PowerSeries& operator+=(const PowerSeries& b) { return *this = *this + b; }
  PowerSeries& operator-=(const PowerSeries& b) { return *this = *this - b; }

  bool operator==(const PowerSeries&) const = default;

  /// 1 / this; requires c_0 != 0.
  PowerSeries reciprocal() const {
    if (c_[0] == T(0)) throw std::domain_error("reciprocal of series with zero constant term");
    PowerSeries r(order());
    r.c_[0] = T(1) / c_[0];
    for (int k = 1; k <= order(); ++k) {
      T acc(0);
      for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
      r.c_[k] = -acc / c_[0];
    }
    return r;
  }

  /// exp(this); requires c_0 == 0.
  PowerSeries exp() const {
    if (c_[0] != T(0)) throw std::domain_error("series exp needs zero constant term");
    PowerSeries e(order());
    e.c_[0] = T(1);
    // e' = f' e  =>  k e_k = sum_{j=1..k} j f_j e_{k-j}
    for (int k = 1; k <= order(); ++k) {
      T acc(0);
      for (int j = 1; j <= k; ++j) acc += T(j) * c_[j] * e.c_[k - j];
      e.c_[k] = acc / T(k);
    }
    return e;
  }

  /// log(this); requires c_0 == 1.
  PowerSeries log() const {
    if (c_[0] != T(1)) throw std::domain_error("series log needs unit constant term");
    PowerSeries l(order());
    // l' f = f'  =>  k f_k = sum_{j=1..k} j l_j f_{k-j}
    for (int k = 1; k <= order(); ++k) {
      T acc(0);
      for (int j = 1; j < k; ++j) acc += T(j) * l.c_[j] * c_[k - j];
      l.c_[k] = (T(k) * c_[k] - acc) / T(k);
    }
    return l;
  }

  /// this^e for scalar exponent e (binomial through exp/log); requires c_0 == 1.
  PowerSeries pow(const T& e) const { return (e * log()).exp(); }

  /// u * d/du of this.
  PowerSeries u_dlog_du() const {
    PowerSeries d(order());
    PowerSeries l = log();
    for (int k = 1; k <= order(); ++k) d.c_[k] = T(k) * l.c_[k];
    return d;
  }

  T evaluate(const T& u) const {
    T acc(0);
    for (int k = order(); k >= 0; --k) acc = acc * u + c_[k];
    return acc;
  }

 private:
  std::vector<T> c_;
};

using RationalSeries = PowerSeries<Rational>;
using ComplexSeries = PowerSeries<Complex>;

/// Coefficient-wise conversion Rational -> Complex.
inline ComplexSeries to_complex(const RationalSeries& s) {
  std::vector<Complex> c(static_cast<std::size_t>(s.order()) + 1);
  for (int k = 0; k <= s.order(); ++k) c[k] = Complex(to_double(s[k]), 0.0);
  return ComplexSeries(std::move(c));
}

}  // namespace fzeta
