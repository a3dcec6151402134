#pragma once

// Where the zeros of Z(lambda) are: root scans of the exact partition
// polynomial, annulus checks for pinned Ising instances, grid sampling of |Z|
// near the origin, and minimum-modulus tables over parameter grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"
#include "ssm/partition.hpp"
#include "ssm/polynomial.hpp"
#include "ssm/roots.hpp"

namespace ssm {

inline constexpr double kModulusTolerance = 1e-9;

struct RootReport {
  std::vector<ApproxComplex> roots;
  std::vector<double> moduli;  // ascending
  double min_modulus = 0;
  double max_modulus = 0;
  std::optional<std::pair<double, double>> band;
  std::size_t annulus_violations = 0;  // roots with modulus strictly outside the band
};

inline RootReport make_root_report(std::vector<ApproxComplex> roots,
                                   std::optional<std::pair<double, double>> band = std::nullopt,
                                   double tol = kModulusTolerance) {
  RootReport r;
  r.roots = std::move(roots);
  for (const auto& z : r.roots) r.moduli.push_back(std::abs(z));
  std::sort(r.moduli.begin(), r.moduli.end());
  if (!r.moduli.empty()) {
    r.min_modulus = r.moduli.front();
    r.max_modulus = r.moduli.back();
  }
  r.band = band;
  if (band)
    for (double m : r.moduli)
      if (m < band->first - tol || m > band->second + tol) ++r.annulus_violations;
  return r;
}

inline RootReport lambda_root_scan(const Graph& g, const Pinning& p, const ExactComplex& beta,
                                   const ExactComplex& gamma) {
  const auto poly = z_poly_lambda(g, p, beta, gamma);
  if (poly.degree() < 1) throw std::domain_error("partition polynomial is constant");
  return make_root_report(poly_roots(poly));
}

/// True iff the two root lists can be paired up with every pair closer than tol.
inline bool roots_match(const std::vector<ApproxComplex>& a, const std::vector<ApproxComplex>& b, double tol) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<long> match_b(n, -1);
  // Bipartite matching (augmenting paths) on the "closer than tol" relation.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> seen(n, 0);
    auto augment = [&](auto&& self, std::size_t x) -> bool {
      for (std::size_t y = 0; y < n; ++y) {
        if (seen[y] || std::abs(a[x] - b[y]) >= tol) continue;
        seen[y] = 1;
        if (match_b[y] < 0 || self(self, static_cast<std::size_t>(match_b[y]))) {
          match_b[y] = static_cast<long>(x);
          return true;
        }
      }
      return false;
    };
    if (!augment(augment, i)) return false;
  }
  return true;
}

struct AnnulusReport {
  RootReport direct;      // pinned Z(lambda), zero roots removed
  RootReport eliminated;  // Z of G minus the pins with rescaled fields
  std::size_t zero_roots = 0;
  bool paths_agree = false;
};

/// Ising (gamma = beta > 1) with max degree <= d: every nonzero root of the
/// pinned Z(lambda) must lie in the band [beta^-d, beta^d].
inline AnnulusReport pinned_annulus_check(const Graph& g, const Pinning& p, const ExactComplex& beta, std::size_t d) {
  if (!beta.is_real() || beta.re() <= 1) throw std::invalid_argument("annulus check needs real beta > 1");
  if (g.max_degree() > d) throw std::invalid_argument("graph degree exceeds the stated bound");
  if (!is_feasible(g, p, false, false)) throw std::invalid_argument("infeasible pinning");
  const double b = beta.re().get_d();
  const std::pair<double, double> band{std::pow(b, -static_cast<double>(d)), std::pow(b, static_cast<double>(d))};

  AnnulusReport out;
  const auto poly = z_poly_lambda(g, p, beta, beta);
  out.zero_roots = poly.valuation();
  const auto rest = poly.shifted_down(out.zero_roots);
  out.direct = make_root_report(rest.degree() >= 1 ? poly_roots(rest) : std::vector<ApproxComplex>{}, band);

  const auto elim = eliminate_pins(g, p, beta, std::vector<ExactComplex>(g.vertex_count(), ExactComplex(1)));
  const auto scaled = z_poly_scaled(elim.rest.graph, Pinning{}, beta, beta, elim.fields);
  out.eliminated =
      make_root_report(scaled.degree() >= 1 ? poly_roots(scaled) : std::vector<ApproxComplex>{}, band);
  out.paths_agree = roots_match(out.direct.roots, out.eliminated.roots, kModulusTolerance);
  return out;
}

struct SinglePinResult {
  bool nonzero = true;
  std::optional<ApproxComplex> witness;
  std::size_t samples = 0;
};

/// Samples |Z(lambda)| on circles inside the zero-free disk |lambda| < 1/beta
/// (at most one + pin) or outside |lambda| > beta (at most one - pin).
/// `fractions` place the circles relative to the boundary radius.
inline SinglePinResult single_pin_check(const Graph& g, const Pinning& p, const ExactComplex& beta,
                                        const std::vector<double>& fractions = {0.2, 0.4, 0.6, 0.9},
                                        std::size_t angles = 8) {
  if (!beta.is_real() || beta.re() <= 1) throw std::invalid_argument("single-pin check needs real beta > 1");
  const bool inner = p.count(Spin::Plus) <= 1;
  if (!inner && p.count(Spin::Minus) > 1)
    throw std::invalid_argument("single-pin check: more than one + pin and more than one - pin");
  const auto poly = z_poly_lambda(g, p, beta, beta);
  double norm1 = 0;
  std::vector<std::complex<long double>> coef;
  for (const auto& c : poly.coefficients()) {
    coef.push_back(scalar_cast<std::complex<long double>>(c));
    norm1 += magnitude(c);
  }
  const double b = beta.re().get_d();
  SinglePinResult out;
  for (double f : fractions)
    for (std::size_t k = 0; k < angles; ++k) {
      const double radius = inner ? f / b : b / f;
      const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
      const std::complex<long double> z = std::polar<long double>(radius, theta);
      std::complex<long double> acc = 0;
      for (std::size_t i = coef.size(); i-- > 0;) acc = acc * z + coef[i];
      ++out.samples;
      const double scale = 1 + norm1 * std::pow(std::max(1.0, radius), static_cast<double>(coef.size()));
      if (std::abs(acc) <= 1e-14L * scale && out.nonzero) {
        out.nonzero = false;
        out.witness = ApproxComplex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
      }
    }
  return out;
}

struct RegionRow {
  ExactComplex lambda;
  double min_modulus = 0;
};

/// min over the family of |Z(lambda)| at every grid point, exact until the
/// final modulus.
inline std::vector<RegionRow> region_min_modulus(const std::vector<std::pair<Graph, Pinning>>& family,
                                                 const ExactComplex& beta, const ExactComplex& gamma,
                                                 const std::vector<ExactComplex>& grid) {
  std::vector<RegionRow> rows;
  if (family.empty()) return rows;
  std::vector<Polynomial<ExactComplex>> polys;
  for (const auto& [g, p] : family) polys.push_back(z_poly_lambda(g, p, beta, gamma));
  for (const auto& lambda : grid) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& poly : polys) best = std::min(best, magnitude(poly(lambda)));
    rows.push_back({lambda, best});
  }
  return rows;
}

/// Square grid of steps x steps exact points covering [-radius, radius]^2.
inline std::vector<ExactComplex> square_grid(const Rational& radius, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("grid needs at least 2 steps per axis");
  std::vector<ExactComplex> out;
  for (std::size_t i = 0; i < steps; ++i)
    for (std::size_t j = 0; j < steps; ++j) {
      Rational re = radius * (Rational(2 * static_cast<long>(i), static_cast<long>(steps - 1)) - 1);
      Rational im = radius * (Rational(2 * static_cast<long>(j), static_cast<long>(steps - 1)) - 1);
      re.canonicalize();
      im.canonicalize();
      out.emplace_back(re, im);
    }
  return out;
}

}  // namespace ssm
