#pragma once

// Two-point determinant identities on trees. The left sides are computed by
// enumeration; the right sides only from tree messages of the subtrees that
// hang off the u-v path, so agreement is a real cross-check of two
// independent computations.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"
#include "ssm/params.hpp"
#include "ssm/partition.hpp"
#include "ssm/tree_dp.hpp"

namespace ssm {

template <class S>
struct CdReport {
  S lhs;
  S rhs;
  std::size_t distance = 0;
  bool path_hits_pinning = false;
  bool equal = false;
};

/// Determinant over a field by Gaussian elimination.
template <class S>
S determinant(std::vector<std::vector<S>> m) {
  const std::size_t n = m.size();
  S det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(m[pivot][col])) ++pivot;
    if (pivot == n) return S(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const S inv = scalar_inverse(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col])) continue;
      const S f = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

namespace detail {

struct PathSplit {
  std::vector<Vertex> path;
  bool hits_pinning = false;
};

inline PathSplit split_path(const Graph& t, Vertex u, Vertex v, const std::vector<Vertex>& pinned) {
  PathSplit out{tree_path(t, u, v), false};
  for (Vertex w : out.path)
    for (Vertex x : pinned)
      if (w == x) out.hits_pinning = true;
  return out;
}

inline void check_pair(const Graph& t, Vertex u, Vertex v) {
  if (!is_tree(t)) throw std::invalid_argument("input graph is not a tree");
  if (u >= t.vertex_count() || v >= t.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (u == v) throw std::invalid_argument("u and v must differ");
}

/// Children of path vertices that are not themselves on the path, with the
/// tree rooted at path.front().
inline std::vector<Vertex> hanging_roots(const RootedTree& rt, const std::vector<Vertex>& path) {
  std::vector<char> on_path(rt.parent.size(), 0);
  for (Vertex w : path) on_path[w] = 1;
  std::vector<Vertex> out;
  for (Vertex w : path)
    for (Vertex c : rt.children[w])
      if (!on_path[c]) out.push_back(c);
  return out;
}

}  // namespace detail

/// Z++ Z-- - Z+- Z-+ against (beta gamma - 1)^d * Phi * prod_i
/// (beta Z+_i + Z-_i)(Z+_i + gamma Z-_i), where i runs over the subtrees
/// hanging off the path and Phi is the product of the path fields.
template <class S>
CdReport<S> cd_sides(const Graph& t, const Pinning& p, Vertex u, Vertex v, const Params<S>& params) {
  detail::check_pair(t, u, v);
  check_pinning_range(t, p);
  if (p.contains(u) || p.contains(v)) throw std::invalid_argument("cd_sides: u or v is pinned");
  if (!is_feasible(t, p, params.hard())) throw std::invalid_argument("cd_sides: infeasible pinning");
  params.check_vertex_count(t.vertex_count());

  CdReport<S> r;
  r.lhs = z_pair(t, p, u, Spin::Plus, v, Spin::Plus, params) * z_pair(t, p, u, Spin::Minus, v, Spin::Minus, params) -
          z_pair(t, p, u, Spin::Plus, v, Spin::Minus, params) * z_pair(t, p, u, Spin::Minus, v, Spin::Plus, params);

  std::vector<Vertex> pinned;
  for (auto [w, s] : p) pinned.push_back(w);
  const auto split = detail::split_path(t, u, v, pinned);
  r.distance = split.path.size() - 1;
  r.path_hits_pinning = split.hits_pinning;
  if (split.hits_pinning) {
    r.rhs = S(0);
  } else {
    const auto [z, msg] = z_tree(t, p, params, u);
    S rhs = power(params.beta * params.gamma - S(1), r.distance);
    for (Vertex w : split.path) rhs *= params.lambda(w);
    for (Vertex c : detail::hanging_roots(msg.rooted, split.path))
      rhs *= (params.beta * msg.plus[c] + msg.minus[c]) * (msg.plus[c] + params.gamma * msg.minus[c]);
    r.rhs = std::move(rhs);
  }
  r.equal = r.lhs == r.rhs;
  return r;
}

/// Z Z++ - Z+_u Z+_v == Z Z-- - Z-_u Z-_v == Z++ Z-- - Z+- Z-+.
template <class S>
bool cd_remark_check(const Graph& t, const Pinning& p, Vertex u, Vertex v, const Params<S>& params) {
  detail::check_pair(t, u, v);
  if (p.contains(u) || p.contains(v)) throw std::invalid_argument("cd_remark_check: u or v is pinned");
  if (!is_feasible(t, p, params.hard())) throw std::invalid_argument("cd_remark_check: infeasible pinning");
  const S pp = z_pair(t, p, u, Spin::Plus, v, Spin::Plus, params);
  const S pm = z_pair(t, p, u, Spin::Plus, v, Spin::Minus, params);
  const S mp = z_pair(t, p, u, Spin::Minus, v, Spin::Plus, params);
  const S mm = z_pair(t, p, u, Spin::Minus, v, Spin::Minus, params);
  const S z = pp + pm + mp + mm;
  const S lhs = pp * mm - pm * mp;
  const S plus_form = z * pp - (pp + pm) * (pp + mp);
  const S minus_form = z * mm - (mp + mm) * (pm + mm);
  return plus_form == lhs && minus_form == lhs;
}

/// Hard-core tree identity:
/// Z_T Z_{T-u-v} - Z_{T-u} Z_{T-v} = -(-lambda)^{d+1} Z_{T-path} Z_{T-N[path]}.
template <class S>
CdReport<S> gutman_sides(const Graph& t, Vertex u, Vertex v, const S& lambda) {
  detail::check_pair(t, u, v);
  const auto hc = Params<S>::uniform(S(0), S(1), lambda);
  auto z_without = [&](const std::vector<Vertex>& removed) {
    InducedSubgraph sub = delete_vertices(t, removed);
    return z_brute(sub.graph, Pinning{}, hc);
  };
  CdReport<S> r;
  r.lhs = z_brute(t, Pinning{}, hc) * z_without({u, v}) - z_without({u}) * z_without({v});

  const auto path = tree_path(t, u, v);
  r.distance = path.size() - 1;
  std::vector<Vertex> closed(path);
  for (Vertex w : path)
    for (Vertex y : t.neighbors(w)) closed.push_back(y);
  const S f1 = z_forest(delete_vertices(t, path).graph, Pinning{}, hc);
  const S f2 = z_forest(delete_vertices(t, closed).graph, Pinning{}, hc);
  r.rhs = -power(-lambda, r.distance + 1) * f1 * f2;
  r.equal = r.lhs == r.rhs;
  return r;
}

/// q-spin version: det[Z^{i,j}_{u,v}] against (det A)^d (prod_i lambda_i)^{d+1}
/// prod_s prod_t (sum_k a_{t,k} Z^k_s) over hanging subtrees s.
template <class S>
CdReport<S> qspin_det_sides(const Graph& t, const QPinning& p, Vertex u, Vertex v, const QSpinParams<S>& qp) {
  detail::check_pair(t, u, v);
  qp.validate();
  const std::size_t q = qp.q();
  CdReport<S> r;
  r.lhs = determinant(z_qspin_pair_matrix(t, p, u, v, qp));

  std::vector<Vertex> pinned;
  for (auto [w, s] : p) pinned.push_back(w);
  const auto split = detail::split_path(t, u, v, pinned);
  r.distance = split.path.size() - 1;
  r.path_hits_pinning = split.hits_pinning;
  if (split.hits_pinning) {
    r.rhs = S(0);
  } else {
    const auto [z, msg] = z_qspin_tree(t, p, qp, u);
    S field_product(1);
    for (const auto& l : qp.lambdas) field_product *= l;
    S rhs = power(determinant(qp.a), r.distance) * power(field_product, r.distance + 1);
    for (Vertex c : detail::hanging_roots(msg.rooted, split.path))
      for (std::size_t row = 0; row < q; ++row) {
        S acc(0);
        for (std::size_t k = 0; k < q; ++k) acc += qp.a[row][k] * msg.z[c][k];
        rhs *= acc;
      }
    r.rhs = std::move(rhs);
  }
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace ssm
