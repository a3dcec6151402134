#pragma once

// Partition functions on trees by bottom-up message passing.
//
//   Z+_w = lambda_w * prod_c (beta Z+_c + Z-_c)
//   Z-_w =            prod_c (Z+_c + gamma Z-_c)
//
// A pin on w zeroes the opposite component.

#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"
#include "ssm/params.hpp"

namespace ssm {

/// Rooted view of a tree: parent pointers, ascending child lists and a
/// breadth-first order (parents before children).
struct RootedTree {
  Vertex root = 0;
  std::vector<Vertex> parent;
  std::vector<std::vector<Vertex>> children;
  std::vector<Vertex> order;
};

/// Roots a forest component; vertices outside the component keep parent ==
/// max(). Children inherit the ascending neighbour order.
inline RootedTree root_tree(const Graph& t, Vertex root) {
  constexpr Vertex none = std::numeric_limits<Vertex>::max();
  RootedTree rt{root, std::vector<Vertex>(t.vertex_count(), none), std::vector<std::vector<Vertex>>(t.vertex_count()), {}};
  rt.parent.at(root) = root;
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    rt.order.push_back(x);
    for (Vertex y : t.neighbors(x)) {
      if (rt.parent[y] != none) continue;
      rt.parent[y] = x;
      rt.children[x].push_back(y);
      queue.push_back(y);
    }
  }
  return rt;
}

/// Per-vertex pair (Z+_w, Z-_w) for the subtree below w.
template <class S>
struct TreeMessages {
  RootedTree rooted;
  std::vector<S> plus;
  std::vector<S> minus;
};

namespace detail {

template <class S>
void tree_messages(const Graph& t, const Pinning& p, const Params<S>& params, TreeMessages<S>& m, bool normalize) {
  const std::size_t n = t.vertex_count();
  m.plus.assign(n, S(0));
  m.minus.assign(n, S(0));
  const auto& order = m.rooted.order;
  for (std::size_t i = order.size(); i-- > 0;) {
    const Vertex w = order[i];
    S zp = params.lambda(w), zm(1);
    for (Vertex c : m.rooted.children[w]) {
      zp *= params.beta * m.plus[c] + m.minus[c];
      zm *= m.plus[c] + params.gamma * m.minus[c];
    }
    if (auto s = p.spin(w)) (*s == Spin::Plus ? zm : zp) = S(0);
    if (normalize) {
      // Projective rescaling: only the ratio matters to the parent.
      if (!is_zero(zm)) {
        zp /= zm;
        zm = S(1);
      } else if (!is_zero(zp)) {
        zp = S(1);
      }
    }
    m.plus[w] = std::move(zp);
    m.minus[w] = std::move(zm);
  }
}

inline void check_tree_input(const Graph& t, const Pinning& p) {
  if (!is_tree(t)) throw std::invalid_argument("input graph is not a tree");
  check_pinning_range(t, p);
}

}  // namespace detail

/// Z of a tree plus every subtree message. Roots at the lowest-index vertex
/// unless told otherwise.
template <class S>
std::pair<S, TreeMessages<S>> z_tree(const Graph& t, const Pinning& p, const Params<S>& params,
                                     std::optional<Vertex> root = std::nullopt) {
  detail::check_tree_input(t, p);
  params.check_vertex_count(t.vertex_count());
  if (!is_feasible(t, p, params.hard())) throw std::invalid_argument("z_tree: infeasible pinning");
  TreeMessages<S> m{root_tree(t, root.value_or(0)), {}, {}};
  detail::tree_messages(t, p, params, m, false);
  const Vertex r = m.rooted.root;
  S z = m.plus[r] + m.minus[r];
  return {std::move(z), std::move(m)};
}

/// Product of z_tree over the components of a forest; the empty graph gives 1.
template <class S>
S z_forest(const Graph& f, const Pinning& p, const Params<S>& params) {
  if (!is_forest(f)) throw std::invalid_argument("input graph is not a forest");
  S z(1);
  for (const auto& comp : connected_components(f)) {
    InducedSubgraph sub = induced_subgraph(f, comp);
    z *= z_tree(sub.graph, restrict_pinning(p, sub), params.mapped(sub.origin)).first;
  }
  return z;
}

/// Marginal Z+_v / Z at the root v of a tree, with messages rescaled at
/// every step so exact arithmetic stays small on large trees.
template <class S>
S tree_marginal(const Graph& t, const Pinning& p, Vertex v, const Params<S>& params) {
  detail::check_tree_input(t, p);
  params.check_vertex_count(t.vertex_count());
  TreeMessages<S> m{root_tree(t, v), {}, {}};
  detail::tree_messages(t, p, params, m, true);
  S z = m.plus[v] + m.minus[v];
  if (is_zero(z)) throw ZeroPartitionError("partition function vanishes on the tree");
  return m.plus[v] / z;
}

// ---- q-spin trees -----------------------------------------------------------

/// Z^k_w for every vertex w and spin k, rooted as in z_tree.
template <class S>
struct QTreeMessages {
  RootedTree rooted;
  std::vector<std::vector<S>> z;  // z[w][k]
};

template <class S>
std::pair<S, QTreeMessages<S>> z_qspin_tree(const Graph& t, const QPinning& p, const QSpinParams<S>& qp,
                                            std::optional<Vertex> root = std::nullopt) {
  if (!is_tree(t)) throw std::invalid_argument("input graph is not a tree");
  qp.validate();
  const std::size_t q = qp.q();
  for (auto [v, s] : p)
    if (v >= t.vertex_count() || s >= q) throw std::invalid_argument("q-spin pin out of range");
  QTreeMessages<S> m{root_tree(t, root.value_or(0)), std::vector<std::vector<S>>(t.vertex_count())};
  const auto& order = m.rooted.order;
  for (std::size_t i = order.size(); i-- > 0;) {
    const Vertex w = order[i];
    std::vector<S> zw(qp.lambdas);
    for (Vertex c : m.rooted.children[w])
      for (std::size_t k = 0; k < q; ++k) {
        S acc(0);
        for (std::size_t j = 0; j < q; ++j) acc += qp.a[k][j] * m.z[c][j];
        zw[k] *= acc;
      }
    if (auto it = p.find(w); it != p.end())
      for (std::size_t k = 0; k < q; ++k)
        if (k != it->second) zw[k] = S(0);
    m.z[w] = std::move(zw);
  }
  S z(0);
  for (const auto& x : m.z[m.rooted.root]) z += x;
  return {std::move(z), std::move(m)};
}

}  // namespace ssm
