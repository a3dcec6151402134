#pragma once

// Truncated formal power series. A series of order N stores the
// coefficients of x^0 .. x^(N-1); everything at or above x^N is unknown.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/polynomial.hpp"

namespace ssm {

template <class S>
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::size_t order) : c_(order, S(0)) {}
  PowerSeries(std::vector<S> coefficients, std::size_t order) : c_(std::move(coefficients)) { c_.resize(order, S(0)); }

  static PowerSeries from_polynomial(const Polynomial<S>& p, std::size_t order) {
    std::vector<S> c(p.coefficients().begin(),
                     p.coefficients().begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(order, p.coefficients().size())));
    return PowerSeries(std::move(c), order);
  }

  std::size_t order() const { return c_.size(); }
  const std::vector<S>& coefficients() const { return c_; }
  const S& operator[](std::size_t i) const { return c_.at(i); }
  S& operator[](std::size_t i) { return c_.at(i); }

  /// First nonzero index, or nullopt if every known coefficient is zero.
  std::optional<std::size_t> valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!is_zero(c_[i])) return i;
    return std::nullopt;
  }

  PowerSeries truncated(std::size_t order) const {
    if (order > c_.size()) throw std::invalid_argument("cannot extend a truncated series");
    return PowerSeries(std::vector<S>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order)), order);
  }

  /// Divides by x^k, losing k orders of precision.
  PowerSeries shifted_down(std::size_t k) const {
    if (k > c_.size()) throw std::invalid_argument("shift exceeds series order");
    for (std::size_t i = 0; i < k; ++i)
      if (!is_zero(c_[i])) throw std::domain_error("shift would drop a nonzero coefficient");
    return PowerSeries(std::vector<S>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()), c_.size() - k);
  }

  /// Partial sum of the known terms.
  template <class T>
  T evaluate(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + scalar_cast<T>(c_[i]);
    return acc;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < out.order(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
    return out;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < out.order(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
    return out;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < out.order(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < out.order(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }
  friend bool operator!=(const PowerSeries& a, const PowerSeries& b) { return !(a == b); }

 private:
  std::vector<S> c_;
};

/// Multiplicative inverse through the truncation order.
template <class S>
PowerSeries<S> series_invert(const PowerSeries<S>& s) {
  if (s.order() == 0) return s;
  if (is_zero(s[0])) throw std::domain_error("series_invert: zero constant term");
  const S inv0 = scalar_inverse(s[0]);
  PowerSeries<S> t(s.order());
  t[0] = inv0;
  for (std::size_t k = 1; k < s.order(); ++k) {
    S acc(0);
    for (std::size_t j = 1; j <= k; ++j)
      if (!is_zero(s[j])) acc += s[j] * t[k - j];
    t[k] = -(acc * inv0);
  }
  return t;
}

/// Quotient num/den. A common factor x^k (k = valuation of den) is cancelled
/// first, which costs k orders of precision in the result.
template <class S>
PowerSeries<S> series_div(const PowerSeries<S>& num, const PowerSeries<S>& den) {
  if (num.order() != den.order()) throw std::invalid_argument("series_div: order mismatch");
  auto vd = den.valuation();
  if (!vd) throw std::domain_error("series_div: denominator vanishes through the truncation order");
  auto vn = num.valuation();
  if (vn && *vn < *vd) throw std::domain_error("series_div: numerator valuation below denominator valuation");
  const PowerSeries<S> n = num.shifted_down(*vd);
  const PowerSeries<S> d = den.shifted_down(*vd);
  // Long division keeps this one pass: q_k = (n_k - sum_{j>=1} d_j q_{k-j}) / d_0.
  const S inv0 = scalar_inverse(d[0]);
  PowerSeries<S> q(n.order());
  for (std::size_t k = 0; k < n.order(); ++k) {
    S acc = n[k];
    for (std::size_t j = 1; j <= k; ++j)
      if (!is_zero(d[j])) acc -= d[j] * q[k - j];
    q[k] = acc * inv0;
  }
  return q;
}

/// Quotient of two exact polynomials as a series of the requested order. The
/// common power of x is cancelled on the polynomials, so no precision is lost.
template <class S>
PowerSeries<S> polynomial_ratio_series(const Polynomial<S>& num, const Polynomial<S>& den, std::size_t order) {
  if (den.is_zero()) throw std::domain_error("ratio series: denominator is identically zero");
  std::size_t vd = den.valuation();
  if (!num.is_zero() && num.valuation() < vd)
    throw std::domain_error("ratio series: numerator valuation below denominator valuation");
  if (num.is_zero()) return PowerSeries<S>(order);
  auto n = PowerSeries<S>::from_polynomial(num.shifted_down(vd), order);
  auto d = PowerSeries<S>::from_polynomial(den.shifted_down(vd), order);
  return series_div(n, d);
}

}  // namespace ssm
