#pragma once

// Exact partition functions by enumeration.
//
// Every configuration extending the pinning is visited once in Gray-code
// order, so each step flips one vertex and the statistics (m+, m-, n+) are
// updated with two popcounts. Configurations are bucketed by those
// statistics; all the partition values, polynomials in lambda and in beta
// are then cheap reductions of the same census.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"
#include "ssm/params.hpp"
#include "ssm/polynomial.hpp"

namespace ssm {

inline constexpr std::size_t kEnumerationCap = 24;

/// Configuration statistics: edges with both ends +, edges with both ends -,
/// and vertices at +.
struct SpinStats {
  std::size_t plus_edges = 0;
  std::size_t minus_edges = 0;
  std::size_t plus_vertices = 0;
  friend auto operator<=>(const SpinStats&, const SpinStats&) = default;
};

/// Weighted count of configurations per SpinStats. `mass` is the summed
/// field product prod_{sigma(v)=+} lambda_v, or a plain count when the field
/// is uniform (the lambda power is then applied at reduction time).
template <class S>
struct Census {
  bool uniform = true;
  std::map<SpinStats, S> mass;
};

namespace detail {

inline void check_enumerable(const Graph& g, const Pinning& p) {
  if (g.vertex_count() > 64) throw std::invalid_argument("graph too large for enumeration (more than 64 vertices)");
  check_pinning_range(g, p);
  const std::size_t free = g.vertex_count() - p.size();
  if (free > kEnumerationCap)
    throw std::invalid_argument("enumeration cap exceeded: " + std::to_string(free) + " free vertices > " +
                                std::to_string(kEnumerationCap));
}

}  // namespace detail

/// Census of all configurations extending p. `fields` empty means uniform.
template <class S>
Census<S> census(const Graph& g, const Pinning& p, const std::vector<S>& fields = {}) {
  detail::check_enumerable(g, p);
  const std::size_t n = g.vertex_count();
  const bool uniform = fields.empty();
  if (!uniform && fields.size() != n) throw std::invalid_argument("field vector length mismatch");

  std::vector<std::uint64_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= std::uint64_t{1} << v;
    adj[v] |= std::uint64_t{1} << u;
  }
  std::vector<Vertex> free;
  std::uint64_t plus = 0;
  for (Vertex v = 0; v < n; ++v) {
    auto s = p.spin(v);
    if (!s) free.push_back(v);
    else if (*s == Spin::Plus) plus |= std::uint64_t{1} << v;
  }

  SpinStats st;
  S prod(1);
  for (auto [u, v] : g.edges()) {
    const bool pu = (plus >> u) & 1U, pv = (plus >> v) & 1U;
    if (pu && pv) ++st.plus_edges;
    if (!pu && !pv) ++st.minus_edges;
  }
  st.plus_vertices = static_cast<std::size_t>(std::popcount(plus));
  if (!uniform)
    for (Vertex v = 0; v < n; ++v)
      if ((plus >> v) & 1U) prod *= fields[v];

  std::vector<S> inverse;
  if (!uniform)
    for (Vertex v : free) inverse.push_back(scalar_inverse(fields[v]));

  Census<S> out;
  out.uniform = uniform;
  // Dense counters for the uniform case, folded into the map at the end.
  const std::size_t e = g.edge_count();
  std::vector<std::uint64_t> counts;
  if (uniform) counts.assign((e + 1) * (e + 1) * (n + 1), 0);
  auto record = [&] {
    if (uniform) {
      ++counts[(st.plus_edges * (e + 1) + st.minus_edges) * (n + 1) + st.plus_vertices];
    } else {
      auto [it, fresh] = out.mass.try_emplace(st, prod);
      if (!fresh) it->second += prod;
    }
  };

  record();
  const std::uint64_t steps = std::uint64_t{1} << free.size();
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    const Vertex x = free[bit];
    const std::uint64_t xm = std::uint64_t{1} << x;
    const auto plus_nb = static_cast<std::size_t>(std::popcount(adj[x] & plus));
    const std::size_t minus_nb = g.degree(x) - plus_nb;
    if (plus & xm) {
      plus &= ~xm;
      st.plus_edges -= plus_nb;
      st.minus_edges += minus_nb;
      --st.plus_vertices;
      if (!uniform) prod *= inverse[bit];
    } else {
      plus |= xm;
      st.plus_edges += plus_nb;
      st.minus_edges -= minus_nb;
      ++st.plus_vertices;
      if (!uniform) prod *= fields[x];
    }
    record();
  }

  if (uniform) {
    for (std::size_t mp = 0; mp <= e; ++mp)
      for (std::size_t mm = 0; mm <= e; ++mm)
        for (std::size_t np = 0; np <= n; ++np) {
          const std::uint64_t c = counts[(mp * (e + 1) + mm) * (n + 1) + np];
          if (c != 0) out.mass.emplace(SpinStats{mp, mm, np}, S(static_cast<long>(c)));
        }
  }
  return out;
}

template <class S>
Census<S> census(const Graph& g, const Pinning& p, const Params<S>& params) {
  params.check_vertex_count(g.vertex_count());
  if (params.is_uniform()) return census<S>(g, p);
  return census<S>(g, p, params.fields());
}

/// Z of an arbitrary pinning; infeasible pinnings simply give zero.
template <class S>
S z_unchecked(const Graph& g, const Pinning& p, const Params<S>& params) {
  const Census<S> c = census(g, p, params);
  S z(0);
  for (const auto& [st, m] : c.mass) {
    S w = m * power(params.beta, st.plus_edges) * power(params.gamma, st.minus_edges);
    if (c.uniform) w *= power(params.uniform_lambda(), st.plus_vertices);
    z += w;
  }
  return z;
}

/// Pinned partition function by enumeration.
template <class S>
S z_brute(const Graph& g, const Pinning& p, const Params<S>& params) {
  check_pinning_range(g, p);
  if (!is_feasible(g, p, params.hard())) throw std::invalid_argument("z_brute: infeasible pinning");
  return z_unchecked(g, p, params);
}

/// Z with p extended by u -> su and v -> sv.
template <class S>
S z_pair(const Graph& g, const Pinning& p, Vertex u, Spin su, Vertex v, Spin sv, const Params<S>& params) {
  if (u == v) throw std::invalid_argument("z_pair: u and v must differ");
  if (p.contains(u) || p.contains(v)) throw std::invalid_argument("z_pair: u or v already pinned");
  check_pinning_range(g, p);
  if (u >= g.vertex_count() || v >= g.vertex_count()) throw std::invalid_argument("z_pair: vertex out of range");
  return z_unchecked(g, p.with(u, su).with(v, sv), params);
}

/// Z with p extended by v -> s.
template <class S>
S z_single(const Graph& g, const Pinning& p, Vertex v, Spin s, const Params<S>& params) {
  if (p.contains(v)) throw std::invalid_argument("vertex already pinned");
  if (v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
  return z_unchecked(g, p.with(v, s), params);
}

/// Z as a polynomial in a uniform lambda (graph fields are ignored).
template <class S>
Polynomial<S> z_poly_lambda(const Graph& g, const Pinning& p, const S& beta, const S& gamma) {
  const Census<S> c = census<S>(g, p);
  std::vector<S> coef(g.vertex_count() + 1, S(0));
  for (const auto& [st, m] : c.mass)
    coef[st.plus_vertices] += m * power(beta, st.plus_edges) * power(gamma, st.minus_edges);
  return Polynomial<S>(std::move(coef));
}

/// Z(z * fields) as a polynomial in the scaling variable z.
template <class S>
Polynomial<S> z_poly_scaled(const Graph& g, const Pinning& p, const S& beta, const S& gamma,
                            const std::vector<S>& fields) {
  if (fields.empty()) return z_poly_lambda(g, p, beta, gamma);
  const Census<S> c = census<S>(g, p, fields);
  std::vector<S> coef(g.vertex_count() + 1, S(0));
  for (const auto& [st, m] : c.mass)
    coef[st.plus_vertices] += m * power(beta, st.plus_edges) * power(gamma, st.minus_edges);
  return Polynomial<S>(std::move(coef));
}

enum class BetaMode {
  General,  // gamma held fixed
  Ising,    // gamma tied to beta
};

/// Z as a polynomial in beta, with lambda (uniform or per-vertex) fixed.
/// In Ising mode every monochromatic edge contributes one power of beta and
/// `gamma` is ignored.
template <class S>
Polynomial<S> z_poly_beta(const Graph& g, const Pinning& p, const S& gamma, const std::variant<S, std::vector<S>>& field,
                          BetaMode mode) {
  const bool uniform = std::holds_alternative<S>(field);
  const Census<S> c = uniform ? census<S>(g, p) : census<S>(g, p, std::get<std::vector<S>>(field));
  std::vector<S> coef(g.edge_count() + 1, S(0));
  for (const auto& [st, m] : c.mass) {
    S w = m;
    if (uniform) w *= power(std::get<S>(field), st.plus_vertices);
    if (mode == BetaMode::General) {
      coef[st.plus_edges] += w * power(gamma, st.minus_edges);
    } else {
      coef[st.plus_edges + st.minus_edges] += w;
    }
  }
  return Polynomial<S>(std::move(coef));
}

// ---- q-spin systems ---------------------------------------------------------

namespace detail {

/// Depth-first enumeration of q-spin configurations in vertex order. `leaf`
/// receives the full assignment and its weight.
template <class S, class Leaf>
void qspin_enumerate(const Graph& g, const QPinning& p, const QSpinParams<S>& qp, Leaf&& leaf) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> spin(n, 0);
  std::vector<S> weight(n + 1, S(1));
  // Recursion depth is n <= cap.
  auto rec = [&](auto&& self, Vertex x) -> void {
    if (x == n) {
      leaf(spin, weight[n]);
      return;
    }
    auto pinned = p.find(x);
    for (std::size_t s = 0; s < qp.q(); ++s) {
      if (pinned != p.end() && pinned->second != s) continue;
      S w = weight[x] * qp.lambdas[s];
      for (Vertex y : g.neighbors(x)) {
        if (y >= x) break;  // neighbours are sorted; only earlier ones are assigned
        w *= qp.a[s][spin[y]];
      }
      spin[x] = s;
      weight[x + 1] = std::move(w);
      self(self, x + 1);
    }
  };
  rec(rec, 0);
}

inline void check_qspin_pinning(const Graph& g, const QPinning& p, std::size_t q) {
  for (auto [v, s] : p) {
    if (v >= g.vertex_count()) throw std::invalid_argument("pinned vertex out of range");
    if (s >= q) throw std::invalid_argument("spin " + std::to_string(s) + " out of range for q = " + std::to_string(q));
  }
}

}  // namespace detail

template <class S>
S z_qspin(const Graph& g, const QPinning& p, const QSpinParams<S>& qp) {
  qp.validate();
  detail::check_qspin_pinning(g, p, qp.q());
  if (g.vertex_count() - p.size() > kEnumerationCap) throw std::invalid_argument("enumeration cap exceeded");
  S z(0);
  detail::qspin_enumerate(g, p, qp, [&](const std::vector<std::size_t>&, const S& w) { z += w; });
  return z;
}

/// Matrix M[i][j] = Z with u -> i and v -> j, in one enumeration pass.
template <class S>
std::vector<std::vector<S>> z_qspin_pair_matrix(const Graph& g, const QPinning& p, Vertex u, Vertex v,
                                                const QSpinParams<S>& qp) {
  qp.validate();
  detail::check_qspin_pinning(g, p, qp.q());
  if (u == v) throw std::invalid_argument("u and v must differ");
  if (p.count(u) || p.count(v)) throw std::invalid_argument("u or v already pinned");
  if (g.vertex_count() - p.size() > kEnumerationCap) throw std::invalid_argument("enumeration cap exceeded");
  std::vector<std::vector<S>> m(qp.q(), std::vector<S>(qp.q(), S(0)));
  detail::qspin_enumerate(g, p, qp, [&](const std::vector<std::size_t>& spin, const S& w) { m[spin[u]][spin[v]] += w; });
  return m;
}

// ---- transformations --------------------------------------------------------

/// Ising instance with the pins folded into rescaled fields on G minus the
/// pinned set.
template <class S>
struct PinElimination {
  InducedSubgraph rest;
  std::vector<S> fields;  // indexed by vertices of rest.graph
  S prefactor;
};

/// Requires beta == gamma. Z^p_G(beta, fields) = prefactor * Z_{G-Lambda}(beta, fields').
template <class S>
PinElimination<S> eliminate_pins(const Graph& g, const Pinning& p, const S& beta, const std::vector<S>& fields) {
  check_pinning_range(g, p);
  if (fields.size() != g.vertex_count()) throw std::invalid_argument("field vector length mismatch");
  if (!is_feasible(g, p, is_zero(beta), is_zero(beta))) throw std::invalid_argument("infeasible pinning");
  std::vector<Vertex> pinned;
  for (auto [v, s] : p) pinned.push_back(v);
  PinElimination<S> out{delete_vertices(g, pinned), {}, S(1)};

  std::size_t mono = 0;
  for (auto [u, v] : g.edges()) {
    auto su = p.spin(u), sv = p.spin(v);
    if (su && sv && *su == *sv) ++mono;
  }
  for (auto [v, s] : p)
    if (s == Spin::Plus) out.prefactor *= fields[v];

  for (Vertex w : out.rest.origin) {
    long plus_nb = 0, minus_nb = 0;
    for (Vertex y : g.neighbors(w)) {
      auto s = p.spin(y);
      if (!s) continue;
      (*s == Spin::Plus ? plus_nb : minus_nb) += 1;
    }
    // A free vertex at - gains beta per minus-pinned neighbour whatever the
    // rest does; that part moves into the prefactor.
    mono += static_cast<std::size_t>(minus_nb);
    const long shift = plus_nb - minus_nb;
    S scale = shift >= 0 ? power(beta, static_cast<std::uint64_t>(shift))
                         : power(scalar_inverse(beta), static_cast<std::uint64_t>(-shift));
    out.fields.push_back(scale * fields[w]);
  }
  out.prefactor *= power(beta, mono);
  return out;
}

/// Flipped pinning and swapped parameters: Z^p(beta, gamma, l) =
/// prefactor * Z^{flip p}(gamma, beta, 1/l).
template <class S>
struct SpinReversal {
  Pinning pinning;
  Params<S> params;
  S prefactor;
};

template <class S>
SpinReversal<S> spin_reversal(const Graph& g, const Pinning& p, const Params<S>& params) {
  params.validate();
  params.check_vertex_count(g.vertex_count());
  SpinReversal<S> out{p.flipped(), Params<S>{params.gamma, params.beta, S(1)}, S(1)};
  if (params.is_uniform()) {
    out.params.field = scalar_inverse(params.uniform_lambda());
    out.prefactor = power(params.uniform_lambda(), g.vertex_count());
  } else {
    std::vector<S> inv;
    for (const auto& l : params.fields()) {
      inv.push_back(scalar_inverse(l));
      out.prefactor *= l;
    }
    out.params.field = std::move(inv);
  }
  return out;
}

}  // namespace ssm
