#pragma once

// Marginal ratios P = Z+_v / Z: exact values, Taylor series around lambda = 0
// and around a point in beta, decay profiles under changed boundary
// conditions, and the depth-truncated SAW-tree approximation.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"
#include "ssm/params.hpp"
#include "ssm/partition.hpp"
#include "ssm/polynomial.hpp"
#include "ssm/saw_tree.hpp"
#include "ssm/series.hpp"
#include "ssm/tree_dp.hpp"

namespace ssm {

namespace detail {

inline void require_proper(const Graph& g, const Pinning& p, Vertex v, HardConstraints hc) {
  check_pinning_range(g, p);
  if (v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (!is_feasible(g, p, hc)) throw std::invalid_argument("infeasible pinning");
  if (!is_proper(g, p, v, hc)) throw std::invalid_argument("vertex " + std::to_string(v) + " is not proper");
}

}  // namespace detail

/// Z+_v / Z. Uses the tree recurrence on trees and enumeration otherwise.
template <class S>
S marginal(const Graph& g, const Pinning& p, Vertex v, const Params<S>& params) {
  detail::require_proper(g, p, v, params.hard());
  params.check_vertex_count(g.vertex_count());
  if (is_tree(g)) return tree_marginal(g, p, v, params);
  const S z = z_brute(g, p, params);
  if (is_zero(z)) throw ZeroPartitionError("partition function vanishes");
  return z_single(g, p, v, Spin::Plus, params) / z;
}

/// Marginal at v on G against the marginal at the root of its SAW tree.
template <class S>
bool verify_saw_marginal(const Graph& g, const Pinning& p, Vertex v, const Params<S>& params) {
  detail::require_proper(g, p, v, params.hard());
  const S pg = marginal(g, p, v, params);
  const SawTree t = build_saw_tree(g, v, p);
  const S pt = tree_marginal(t.tree, t.induced_pinning, t.root, params.mapped(t.origin));
  return pg == pt;
}

// ---- series ------------------------------------------------------------------

struct SeriesCenter {
  enum class Variable { Lambda, Beta } variable = Variable::Lambda;
  ExactComplex point{0};
  BetaMode mode = BetaMode::General;
};

template <class S>
struct MarginalSeries {
  PowerSeries<S> series;
  SeriesCenter center;
  std::string graph_id;
  Pinning pinning;
  Vertex vertex = 0;
};

/// Truncation order used when the caller has no preference.
inline std::size_t default_series_order(const Graph& g) { return diameter(g) + 2; }

/// Taylor series of P in lambda at 0. With per-vertex fields on g the
/// variable is the common scale z of lambda_v = z * fields_v.
template <class S>
MarginalSeries<S> marginal_series_lambda(const Graph& g, const Pinning& p, Vertex v, const S& beta, const S& gamma,
                                         std::size_t order) {
  // Only feasibility is needed: if v = + is impossible the series is 0.
  check_pinning_range(g, p);
  if (v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (p.contains(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " is pinned");
  if (!is_feasible(g, p, is_zero(beta), is_zero(gamma))) throw std::invalid_argument("infeasible pinning");
  std::vector<S> fields;
  if (g.has_fields())
    for (const auto& f : g.fields()) fields.push_back(scalar_cast<S>(f));
  const Polynomial<S> z = z_poly_scaled(g, p, beta, gamma, fields);
  const Polynomial<S> zp = z_poly_scaled(g, p.with(v, Spin::Plus), beta, gamma, fields);
  if (z.is_zero()) throw std::domain_error("partition polynomial vanishes identically");
  MarginalSeries<S> out;
  out.series = polynomial_ratio_series(zp, z, order);
  out.pinning = p;
  out.vertex = v;
  return out;
}

struct LdcReport {
  std::size_t first_difference = 0;  // == order when the series agree throughout
  std::size_t order = 0;
  Distance distance;                  // d(v, disagreement set)
  bool contract_holds = false;        // a_i == b_i for every i <= d - 1
};

template <class S>
std::size_t first_difference(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  const std::size_t n = std::min(a.order(), b.order());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

inline LdcReport make_ldc_report(std::size_t diff, std::size_t order, Distance d) {
  LdcReport r{diff, order, d, false};
  // Infinite distance: v cannot see the disagreement, so the series must match.
  r.contract_holds = d.is_infinite() ? diff >= order : diff >= std::min(d.value(), order);
  return r;
}

template <class S>
LdcReport ldc_report(const Graph& g, const Pinning& s, const Pinning& t, Vertex v, const S& beta, const S& gamma,
                     std::size_t order) {
  const auto a = marginal_series_lambda(g, s, v, beta, gamma, order);
  const auto b = marginal_series_lambda(g, t, v, beta, gamma, order);
  const std::size_t n = std::min(a.series.order(), b.series.order());
  return make_ldc_report(first_difference(a.series, b.series), n, disagreement_distance(g, v, s, t));
}

/// Taylor series of P in t = beta - center. General mode holds gamma fixed
/// and needs center * gamma == 1; Ising mode ties gamma to beta and needs
/// center == +-1.
template <class S>
MarginalSeries<S> marginal_series_beta(const Graph& g, const Pinning& p, Vertex v, const S& gamma,
                                       const std::variant<S, std::vector<S>>& field, const S& center, std::size_t order,
                                       BetaMode mode = BetaMode::General) {
  if (mode == BetaMode::General) {
    if (center * gamma != S(1)) throw std::invalid_argument("beta series: center must equal 1/gamma");
  } else if (center != S(1) && center != S(-1)) {
    throw std::invalid_argument("beta series: Ising center must be 1 or -1");
  }
  const S gamma_at_center = mode == BetaMode::Ising ? center : gamma;
  detail::require_proper(g, p, v, {is_zero(center), is_zero(gamma_at_center)});
  const Polynomial<S> z = z_poly_beta(g, p, gamma, field, mode).taylor_shift(center);
  const Polynomial<S> zp = z_poly_beta(g, p.with(v, Spin::Plus), gamma, field, mode).taylor_shift(center);
  if (is_zero(z.coefficient(0))) throw ZeroPartitionError("partition function vanishes at the expansion point");
  MarginalSeries<S> out;
  out.series = series_div(PowerSeries<S>::from_polynomial(zp, order), PowerSeries<S>::from_polynomial(z, order));
  out.center = {SeriesCenter::Variable::Beta, scalar_cast<ExactComplex>(center), mode};
  out.pinning = p;
  out.vertex = v;
  return out;
}

template <class S>
LdcReport ldc_beta_report(const Graph& g, const Pinning& s, const Pinning& t, Vertex v, const S& gamma,
                          const std::variant<S, std::vector<S>>& field, const S& center, std::size_t order,
                          BetaMode mode = BetaMode::General) {
  const auto a = marginal_series_beta(g, s, v, gamma, field, center, order, mode);
  const auto b = marginal_series_beta(g, t, v, gamma, field, center, order, mode);
  return make_ldc_report(first_difference(a.series, b.series), order, disagreement_distance(g, v, s, t));
}

// ---- decay profiles -----------------------------------------------------------

/// One member of a decay family: marginals at v under two boundary pinnings.
struct DecayInstance {
  Graph graph;
  Vertex v = 0;
  Pinning sigma;
  Pinning tau;
};

struct DecayRow {
  std::size_t k = 0;
  double gap = 0;
};

struct DecayProfile {
  std::vector<DecayRow> rows;
  std::optional<double> rate;      // r, with gap ~ C r^-k
  std::optional<double> constant;  // C
};

enum class DecayFamily { Path, CompleteTree };
enum class DecayMode {
  Ssm,  // all + against all - on the boundary
  Psm,  // all + against free
  Msm,  // all - against free
};

/// Boundary at distance k from v: the far end of a path on k + 1 vertices,
/// or the leaves of a complete tree of depth k.
inline DecayInstance make_decay_instance(DecayFamily family, DecayMode mode, std::size_t k, std::size_t branching = 2) {
  DecayInstance inst;
  std::vector<Vertex> boundary;
  if (family == DecayFamily::Path) {
    inst.graph = path_graph(k + 1);
    boundary.push_back(static_cast<Vertex>(k));
  } else {
    inst.graph = complete_tree(branching, k);
    for (Vertex x = 0; x < inst.graph.vertex_count(); ++x)
      if (k > 0 && inst.graph.degree(x) == 1) boundary.push_back(x);
  }
  for (Vertex b : boundary) {
    if (mode != DecayMode::Msm) inst.sigma.pin(b, Spin::Plus);
    if (mode == DecayMode::Ssm) inst.tau.pin(b, Spin::Minus);
    if (mode == DecayMode::Msm) inst.sigma.pin(b, Spin::Minus);
  }
  return inst;
}

/// Least squares of log gap against k over rows with nonzero gap.
inline void fit_decay(DecayProfile& prof) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : prof.rows)
    if (r.gap > 0) pts.emplace_back(static_cast<double>(r.k), std::log(r.gap));
  prof.rate.reset();
  prof.constant.reset();
  if (pts.size() < 2) return;
  double sx = 0, sy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double n = static_cast<double>(pts.size()), mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  const double slope = sxy / sxx;
  prof.rate = std::exp(-slope);
  prof.constant = std::exp(my - slope * mx);
}

/// Gap |P^sigma_v - P^tau_v| for k = k_min .. k_max, then the fit.
template <class S>
DecayProfile decay_profile(const std::function<DecayInstance(std::size_t)>& family, const Params<S>& params,
                           std::size_t k_min, std::size_t k_max) {
  if (k_min > k_max) throw std::invalid_argument("decay profile: k_min exceeds k_max");
  if (!params.is_uniform()) throw std::invalid_argument("decay profile: families use a uniform field");
  DecayProfile prof;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const DecayInstance inst = family(k);
    S a, b;
    try {
      a = marginal(inst.graph, inst.sigma, inst.v, params);
      b = marginal(inst.graph, inst.tau, inst.v, params);
    } catch (const ZeroPartitionError& e) {
      throw ZeroPartitionError("decay profile at k = " + std::to_string(k) + ": " + e.what());
    }
    prof.rows.push_back({k, magnitude(a - b)});
  }
  fit_decay(prof);
  return prof;
}

// ---- truncated SAW approximation -------------------------------------------

template <class S>
struct WeitzResult {
  S value;
  bool exact = false;
  std::size_t tree_size = 0;
};

/// Marginal at the root of the SAW tree cut at `depth`, cut nodes pinned -.
template <class S>
WeitzResult<S> weitz_approx_marginal(const Graph& g, Vertex v, const Pinning& p, const Params<S>& params,
                                     std::size_t depth) {
  detail::require_proper(g, p, v, params.hard());
  const SawTree t = build_truncated_saw_tree(g, v, p, depth);
  WeitzResult<S> r;
  r.value = tree_marginal(t.tree, t.induced_pinning, t.root, params.mapped(t.origin));
  r.exact = !t.truncated;
  r.tree_size = t.tree.vertex_count();
  return r;
}

}  // namespace ssm
