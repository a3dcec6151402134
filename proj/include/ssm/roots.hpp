#pragma once

// Complex polynomial roots by Aberth–Ehrlich simultaneous iteration.
//
// The exact overload first strips the power of x and splits the polynomial
// into square-free factors with exact arithmetic, so the floating-point
// iteration only ever sees simple roots. Multiplicities are restored on
// output.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/polynomial.hpp"

namespace ssm {

class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kRootSweepCap = 1000;

namespace detail {

using WideComplex = std::complex<long double>;

inline void horner_with_derivative(const std::vector<WideComplex>& a, const WideComplex& z, WideComplex& p,
                                   WideComplex& dp) {
  p = a.back();
  dp = WideComplex(0);
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
  }
}

/// Roots of a polynomial with nonzero leading coefficient given in wide
/// precision. Stops each root once |p(z)| < tol * (1 + |lead| |z|^n).
inline std::vector<WideComplex> aberth(const std::vector<WideComplex>& a, double tol) {
  const std::size_t n = a.size() - 1;
  if (n == 0) return {};
  const long double lead = std::abs(a.back());
  if (lead == 0) throw std::domain_error("aberth: zero leading coefficient");
  if (n == 1) return {-a[0] / a[1]};

  long double max_ratio = 0;
  for (std::size_t i = 0; i < n; ++i) max_ratio = std::max(max_ratio, std::abs(a[i]) / lead);
  const long double radius = 1 + max_ratio;
  // Fixed irrational offset keeps the starting circle off any symmetry axis.
  const long double offset = (std::sqrt(5.0L) - 1) / 2;
  const long double two_pi = 2 * std::numbers::pi_v<long double>;

  std::vector<WideComplex> z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(radius, two_pi * static_cast<long double>(k) / static_cast<long double>(n) + offset);

  std::vector<char> done(n, 0);
  std::size_t remaining = n;
  for (std::size_t sweep = 0; sweep < kRootSweepCap && remaining > 0; ++sweep) {
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      WideComplex p, dp;
      horner_with_derivative(a, z[k], p, dp);
      const long double scale = 1 + lead * std::pow(std::abs(z[k]), static_cast<long double>(n));
      if (std::abs(p) < tol * scale) {
        done[k] = 1;
        --remaining;
        continue;
      }
      WideComplex repulsion(0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += WideComplex(1) / (z[k] - z[j]);
      const WideComplex newton = p / dp;
      WideComplex step = newton / (WideComplex(1) - newton * repulsion);
      if (!std::isfinite(std::abs(step))) step = newton;
      if (!std::isfinite(std::abs(step)))
        step = WideComplex(std::numeric_limits<long double>::epsilon() * (1 + std::abs(z[k])), 0);
      z[k] -= step;
    }
  }
  if (remaining > 0)
    throw RootFindingError("root iteration did not converge after " + std::to_string(kRootSweepCap) + " sweeps (" +
                           std::to_string(remaining) + " of " + std::to_string(n) + " roots unresolved)");
  // One Newton polish per root; harmless for converged simple roots.
  for (auto& r : z) {
    WideComplex p, dp;
    horner_with_derivative(a, r, p, dp);
    if (std::abs(dp) > 0) {
      WideComplex cand = r - p / dp;
      WideComplex pc, dpc;
      horner_with_derivative(a, cand, pc, dpc);
      if (std::abs(pc) < std::abs(p)) r = cand;
    }
  }
  return z;
}

inline void sort_roots(std::vector<ApproxComplex>& roots) {
  std::sort(roots.begin(), roots.end(), [](const ApproxComplex& x, const ApproxComplex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

}  // namespace detail

/// All deg(p) roots with multiplicity, sorted by (real, imag).
inline std::vector<ApproxComplex> poly_roots(const Polynomial<ApproxComplex>& p, double tol = 1e-12) {
  if (p.degree() < 1) throw std::invalid_argument("poly_roots: degree must be at least 1");
  std::vector<detail::WideComplex> a;
  for (const auto& c : p.coefficients()) a.push_back(scalar_cast<detail::WideComplex>(c));
  std::vector<ApproxComplex> out;
  for (const auto& r : detail::aberth(a, tol)) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  detail::sort_roots(out);
  return out;
}

inline std::vector<ApproxComplex> poly_roots(const Polynomial<ExactComplex>& p, double tol = 1e-12) {
  if (p.degree() < 1) throw std::invalid_argument("poly_roots: degree must be at least 1");
  const std::size_t zeros = p.valuation();
  std::vector<ApproxComplex> out(zeros, ApproxComplex(0.0, 0.0));
  const Polynomial<ExactComplex> rest = p.shifted_down(zeros);
  for (const auto& [factor, multiplicity] : square_free_decomposition(rest)) {
    std::vector<detail::WideComplex> a;
    for (const auto& c : factor.coefficients()) a.push_back(scalar_cast<detail::WideComplex>(c));
    for (const auto& r : detail::aberth(a, tol))
      for (std::size_t m = 0; m < multiplicity; ++m)
        out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  }
  if (out.size() != static_cast<std::size_t>(p.degree()))
    throw RootFindingError("root count mismatch: " + std::to_string(out.size()) + " vs degree " + std::to_string(p.degree()));
  detail::sort_roots(out);
  return out;
}

}  // namespace ssm
