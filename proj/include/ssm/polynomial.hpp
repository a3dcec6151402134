#pragma once

// Dense univariate polynomials over a field of scalars (exact Gaussian
// rationals in practice). Coefficient i multiplies x^i; trailing zeros are
// always trimmed so degree() is exact.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssm/exact.hpp"

namespace ssm {

template <class S>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<S> coefficients) : c_(std::move(coefficients)) { trim(); }

  static Polynomial constant(S value) { return Polynomial(std::vector<S>{std::move(value)}); }
  static Polynomial monomial(S value, std::size_t k) {
    std::vector<S> c(k + 1, S(0));
    c[k] = std::move(value);
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(S(1), 1); }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<S>& coefficients() const { return c_; }

  S coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : S(0); }
  const S& leading() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }

  /// Index of the lowest nonzero coefficient.
  std::size_t valuation() const {
    if (c_.empty()) throw std::domain_error("valuation of the zero polynomial");
    std::size_t k = 0;
    while (is_zero_scalar(c_[k])) ++k;
    return k;
  }

  /// Divides by x^k; the low coefficients must be zero.
  Polynomial shifted_down(std::size_t k) const {
    for (std::size_t i = 0; i < k && i < c_.size(); ++i)
      if (!is_zero_scalar(c_[i])) throw std::domain_error("shifted_down would drop a nonzero coefficient");
    if (k >= c_.size()) return {};
    return Polynomial(std::vector<S>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  template <class T>
  T evaluate(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + scalar_cast<T>(c_[i]);
    return acc;
  }
  S operator()(const S& x) const { return evaluate<S>(x); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * S(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  /// p(c + t) as a polynomial in t.
  Polynomial taylor_shift(const S& c) const {
    // Horner in the polynomial ring: acc = acc * (t + c) + a_i.
    std::vector<S> acc;
    for (std::size_t i = c_.size(); i-- > 0;) {
      std::vector<S> next(acc.size() + 1, S(0));
      for (std::size_t j = 0; j < acc.size(); ++j) {
        next[j + 1] += acc[j];
        next[j] += acc[j] * c;
      }
      next[0] += c_[i];
      acc = std::move(next);
    }
    return Polynomial(std::move(acc));
  }

  Polynomial monic() const {
    if (c_.empty()) return {};
    S inv = scalar_inverse(c_.back());
    std::vector<S> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * inv;
    return Polynomial(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> out(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero_scalar(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const S& s, const Polynomial& p) {
    std::vector<S> out(p.c_);
    for (auto& x : out) x *= s;
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  static bool is_zero_scalar(const S& s) { return ssm::is_zero(s); }
  void trim() {
    while (!c_.empty() && is_zero_scalar(c_.back())) c_.pop_back();
  }

  std::vector<S> c_;
};

/// Euclidean division a = q*b + r with deg r < deg b.
template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divmod(const Polynomial<S>& a, const Polynomial<S>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<S> rem = a.coefficients();
  const auto& bc = b.coefficients();
  if (rem.size() < bc.size()) return {Polynomial<S>{}, a};
  S inv_lead = scalar_inverse(bc.back());
  std::vector<S> quot(rem.size() - bc.size() + 1, S(0));
  for (std::size_t k = quot.size(); k-- > 0;) {
    S factor = rem[k + bc.size() - 1] * inv_lead;
    if (is_zero(factor)) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[k + j] -= factor * bc[j];
    quot[k] = std::move(factor);
  }
  rem.resize(bc.size() - 1);
  return {Polynomial<S>(std::move(quot)), Polynomial<S>(std::move(rem))};
}

/// Monic greatest common divisor (zero if both inputs are zero).
template <class S>
Polynomial<S> gcd(Polynomial<S> a, Polynomial<S> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Exact quotient; throws if the division leaves a remainder.
template <class S>
Polynomial<S> exact_quotient(const Polynomial<S>& a, const Polynomial<S>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

/// Square-free decomposition (Yun): returns (factor, multiplicity) pairs of
/// pairwise coprime square-free monic factors whose product with
/// multiplicities is the monic part of p. Requires characteristic zero.
template <class S>
std::vector<std::pair<Polynomial<S>, std::size_t>> square_free_decomposition(const Polynomial<S>& p) {
  if (p.degree() < 1) return {};
  std::vector<std::pair<Polynomial<S>, std::size_t>> out;
  Polynomial<S> f = p.monic();
  Polynomial<S> df = f.derivative();
  Polynomial<S> a = gcd(f, df);
  Polynomial<S> b = exact_quotient(f, a);
  Polynomial<S> c = exact_quotient(df, a);
  Polynomial<S> d = c - b.derivative();
  for (std::size_t i = 1; b.degree() >= 1; ++i) {
    a = gcd(b, d);
    Polynomial<S> nb = exact_quotient(b, a);
    Polynomial<S> nc = exact_quotient(d, a);
    if (a.degree() >= 1) out.emplace_back(a, i);
    b = std::move(nb);
    d = nc - b.derivative();
  }
  return out;
}

}  // namespace ssm
