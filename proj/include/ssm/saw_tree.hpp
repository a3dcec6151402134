#pragma once

// Self-avoiding-walk trees.
//
// Tree nodes are numbered in depth-first preorder, neighbours are expanded
// in ascending index order. A walk ends at a pinned vertex, which becomes a
// leaf carrying its pin. When a walk x_0 .. x_m could step back onto some
// x_i (i < m - 1), a leaf copy of x_i is added instead, pinned + if the
// closing neighbour x_m has a larger index than the continuing neighbour
// x_{i+1}, and - otherwise.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssm/graph.hpp"

namespace ssm {

struct SawTree {
  Graph tree;
  Vertex root = 0;
  std::vector<Vertex> origin;  // tree node -> source vertex
  std::vector<Vertex> parent;  // root is its own parent
  std::vector<std::size_t> depth;
  Pinning induced_pinning;
  bool truncated = false;  // some node was cut by a depth limit
};

namespace detail {

class SawBuilder {
 public:
  SawBuilder(const Graph& g, const Pinning& p, std::optional<std::size_t> depth_limit)
      : g_(g), p_(p), limit_(depth_limit), on_walk_(g.vertex_count(), -1) {}

  SawTree build(Vertex root) {
    add_node(root, root_marker, 0);
    walk_.push_back(root);
    on_walk_[root] = 0;
    expand(0);
    SawTree out;
    out.tree = Graph(origin_.size());
    for (std::size_t x = 1; x < origin_.size(); ++x) out.tree.add_edge(parent_[x], static_cast<Vertex>(x));
    out.root = 0;
    out.origin = std::move(origin_);
    out.parent = std::move(parent_);
    out.parent[0] = 0;
    out.depth = std::move(depth_);
    out.induced_pinning = Pinning(std::move(pins_));
    out.truncated = truncated_;
    return out;
  }

 private:
  static constexpr Vertex root_marker = 0;

  Vertex add_node(Vertex source, Vertex parent, std::size_t depth) {
    origin_.push_back(source);
    parent_.push_back(parent);
    depth_.push_back(depth);
    return static_cast<Vertex>(origin_.size() - 1);
  }

  void expand(Vertex node) {
    const Vertex x = walk_.back();
    const std::size_t depth = depth_[node];
    const bool has_previous = walk_.size() >= 2;
    const Vertex previous = has_previous ? walk_[walk_.size() - 2] : x;
    const std::size_t would_have_children = g_.degree(x) - (has_previous ? 1 : 0);
    if (limit_ && depth >= *limit_ && would_have_children > 0) {
      pins_.emplace(node, Spin::Minus);
      truncated_ = true;
      return;
    }
    for (Vertex y : g_.neighbors(x)) {
      if (has_previous && y == previous) continue;
      const Vertex child = add_node(y, node, depth + 1);
      if (on_walk_[y] >= 0) {
        const auto i = static_cast<std::size_t>(on_walk_[y]);
        pins_.emplace(child, x > walk_[i + 1] ? Spin::Plus : Spin::Minus);
      } else if (auto s = p_.spin(y)) {
        pins_.emplace(child, *s);
      } else {
        on_walk_[y] = static_cast<long>(walk_.size());
        walk_.push_back(y);
        expand(child);
        walk_.pop_back();
        on_walk_[y] = -1;
      }
    }
  }

  const Graph& g_;
  const Pinning& p_;
  std::optional<std::size_t> limit_;
  std::vector<long> on_walk_;
  std::vector<Vertex> walk_;
  std::vector<Vertex> origin_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> depth_;
  Pinning::Map pins_;
  bool truncated_ = false;
};

inline void check_saw_input(const Graph& g, const Pinning& p, Vertex root) {
  if (root >= g.vertex_count()) throw std::invalid_argument("root out of range");
  check_pinning_range(g, p);
  if (p.contains(root)) throw std::invalid_argument("SAW tree root is pinned");
}

}  // namespace detail

/// Full SAW tree. Feasibility of p is the caller's concern for
/// hard-constraint systems (see saw_tree_for).
inline SawTree build_saw_tree(const Graph& g, Vertex root, const Pinning& p) {
  detail::check_saw_input(g, p, root);
  return detail::SawBuilder(g, p, std::nullopt).build(root);
}

/// SAW tree cut at the given depth: nodes at that depth which would still
/// have children are pinned - and not expanded.
inline SawTree build_truncated_saw_tree(const Graph& g, Vertex root, const Pinning& p, std::size_t depth) {
  detail::check_saw_input(g, p, root);
  return detail::SawBuilder(g, p, depth).build(root);
}

/// build_saw_tree with the feasibility and properness preconditions checked.
inline SawTree saw_tree_for(const Graph& g, Vertex root, const Pinning& p, HardConstraints hc) {
  if (!is_feasible(g, p, hc)) throw std::invalid_argument("SAW tree: infeasible pinning");
  if (!is_proper(g, p, root, hc)) throw std::invalid_argument("SAW tree: root is not proper");
  return build_saw_tree(g, root, p);
}

/// All tree nodes whose origin lies in `sources`.
inline std::vector<Vertex> saw_copies(const SawTree& t, const std::vector<Vertex>& sources) {
  std::vector<char> want;
  for (Vertex s : sources) {
    if (s >= want.size()) want.resize(s + 1, 0);
    want[s] = 1;
  }
  std::vector<Vertex> out;
  for (std::size_t x = 0; x < t.origin.size(); ++x)
    if (t.origin[x] < want.size() && want[t.origin[x]]) out.push_back(static_cast<Vertex>(x));
  return out;
}

}  // namespace ssm
