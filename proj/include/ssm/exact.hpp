#pragma once

// Scalar types: exact Gaussian rationals backed by GMP and plain complex
// doubles, plus the small set of free functions the generic algorithms use
// to treat both uniformly.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace ssm {

using Rational = mpq_class;
using ApproxComplex = std::complex<double>;

/// Parses "p/q", "p" or "-p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  auto check_int = [&](std::string_view part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) throw std::invalid_argument("malformed rational literal: " + s);
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("malformed rational literal: " + s);
  };
  if (slash == std::string::npos) {
    check_int(s);
    if (s[0] == '+') s.erase(0, 1);
    return Rational(mpz_class(s, 10));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in rational literal: " + s);
  Rational q(mpz_class(num, 10), d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str() + "/1";
  return q.get_str();
}

/// Complex number with arbitrary-precision rational parts. Every operation is
/// exact and results are kept in canonical (reduced, positive denominator) form.
class ExactComplex {
 public:
  ExactComplex() : re_(0), im_(0) {}
  ExactComplex(long value) : re_(value), im_(0) {}  // NOLINT(implicit)
  ExactComplex(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT(implicit)
  ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactComplex parse(std::string_view re, std::string_view im = "0") {
    return {parse_rational(re), parse_rational(im)};
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Rational norm2() const { return re_ * re_ + im_ * im_; }
  ExactComplex conj() const { return {re_, -im_}; }

  ExactComplex inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (is_real()) return ExactComplex(Rational(1) / re_);
    Rational n = norm2();
    return {re_ / n, -im_ / n};
  }

  ApproxComplex to_approx() const { return {re_.get_d(), im_.get_d()}; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  ExactComplex& operator/=(const ExactComplex& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.is_real()) {
      re_ /= o.re_;
      if (sgn(im_) != 0) im_ /= o.re_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

  std::string to_string() const {
    if (is_real()) return ssm::to_string(re_);
    return ssm::to_string(re_) + (sgn(im_) < 0 ? " - " : " + ") + ssm::to_string(abs(im_)) + "i";
  }

 private:
  Rational re_;
  Rational im_;
};

inline std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << z.to_string(); }

// ---- generic scalar helpers -------------------------------------------------

inline bool is_zero(const ExactComplex& z) { return z.is_zero(); }
inline bool is_zero(const ApproxComplex& z) { return z == ApproxComplex(0.0, 0.0); }

inline ApproxComplex to_approx(const ExactComplex& z) { return z.to_approx(); }
inline ApproxComplex to_approx(const ApproxComplex& z) { return z; }

inline double magnitude(const ExactComplex& z) { return std::abs(z.to_approx()); }
inline double magnitude(const ApproxComplex& z) { return std::abs(z); }

/// Rational to long double keeping roughly 106 significant bits before the
/// final rounding (two-term double expansion).
inline long double to_long_double(const Rational& q) {
  double hi = q.get_d();
  Rational rest = q - Rational(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

/// Converts between scalar representations. Exact targets only accept exact
/// sources.
template <class T>
T scalar_cast(const ExactComplex& z) {
  if constexpr (std::is_same_v<T, ExactComplex>) {
    return z;
  } else {
    using R = typename T::value_type;
    if constexpr (std::is_same_v<R, long double>)
      return T(to_long_double(z.re()), to_long_double(z.im()));
    else
      return T(static_cast<R>(z.re().get_d()), static_cast<R>(z.im().get_d()));
  }
}

template <class T>
T scalar_cast(const ApproxComplex& z) {
  static_assert(!std::is_same_v<T, ExactComplex>, "cannot convert a floating value to an exact scalar");
  using R = typename T::value_type;
  return T(static_cast<R>(z.real()), static_cast<R>(z.imag()));
}

template <class S>
S scalar_inverse(const S& z) {
  if (is_zero(z)) throw std::domain_error("inverse of zero");
  return S(1) / z;
}

/// z^k by repeated squaring; z^0 == 1 for every z, including zero.
template <class S>
S power(S base, std::uint64_t exponent) {
  S result(1);
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

}  // namespace ssm
