#pragma once

// Simple undirected graphs, partial spin configurations (pinnings), and the
// distance/feasibility queries the rest of the library is built on.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ssm/exact.hpp"

namespace ssm {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

enum class Spin : std::uint8_t { Minus = 0, Plus = 1 };

inline Spin flip(Spin s) { return s == Spin::Plus ? Spin::Minus : Spin::Plus; }
inline char spin_char(Spin s) { return s == Spin::Plus ? '+' : '-'; }

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n) {}

  /// Validating constructor: rejects self-loops, duplicate edges, ids out of
  /// range and zero field values.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges,
                          std::optional<std::vector<ExactComplex>> fields = std::nullopt) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    if (fields) g.set_fields(std::move(*fields));
    return g;
  }

  void add_edge(Vertex u, Vertex v) {
    if (u >= vertex_count() || v >= vertex_count())
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (adjacent(u, v))
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }

  void set_fields(std::vector<ExactComplex> fields) {
    if (fields.size() != vertex_count())
      throw std::invalid_argument("field vector length " + std::to_string(fields.size()) +
                                  " does not match vertex count " + std::to_string(vertex_count()));
    for (std::size_t v = 0; v < fields.size(); ++v)
      if (fields[v].is_zero()) throw std::invalid_argument("zero external field at vertex " + std::to_string(v));
    fields_ = std::move(fields);
  }

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adjacency_) d = std::max(d, a.size());
    return d;
  }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& a = adjacency_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  bool has_fields() const { return fields_.has_value(); }
  const std::vector<ExactComplex>& fields() const { return fields_.value(); }
  const std::optional<std::vector<ExactComplex>>& maybe_fields() const { return fields_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_ && a.fields_ == b.fields_;
  }

 private:
  static void insert_sorted(std::vector<Vertex>& a, Vertex v) { a.insert(std::upper_bound(a.begin(), a.end(), v), v); }

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
  std::optional<std::vector<ExactComplex>> fields_;
};

/// Partial configuration: each pinned vertex carries a spin.
class Pinning {
 public:
  using Map = std::map<Vertex, Spin>;

  Pinning() = default;
  Pinning(std::initializer_list<std::pair<const Vertex, Spin>> init) : spins_(init) {}
  explicit Pinning(Map spins) : spins_(std::move(spins)) {}

  bool contains(Vertex v) const { return spins_.count(v) != 0; }
  std::optional<Spin> spin(Vertex v) const {
    auto it = spins_.find(v);
    if (it == spins_.end()) return std::nullopt;
    return it->second;
  }

  void pin(Vertex v, Spin s) {
    if (!spins_.emplace(v, s).second) throw std::invalid_argument("vertex " + std::to_string(v) + " pinned twice");
  }
  Pinning with(Vertex v, Spin s) const {
    Pinning out = *this;
    out.pin(v, s);
    return out;
  }
  Pinning without(Vertex v) const {
    Pinning out = *this;
    out.spins_.erase(v);
    return out;
  }
  Pinning flipped() const {
    Pinning out;
    for (auto [v, s] : spins_) out.spins_.emplace(v, flip(s));
    return out;
  }

  std::size_t size() const { return spins_.size(); }
  bool empty() const { return spins_.empty(); }
  std::size_t count(Spin s) const {
    return static_cast<std::size_t>(std::count_if(spins_.begin(), spins_.end(), [s](const auto& e) { return e.second == s; }));
  }
  bool all_plus() const { return count(Spin::Minus) == 0; }
  bool all_minus() const { return count(Spin::Plus) == 0; }

  Map::const_iterator begin() const { return spins_.begin(); }
  Map::const_iterator end() const { return spins_.end(); }
  const Map& map() const { return spins_; }

  friend bool operator==(const Pinning& a, const Pinning& b) { return a.spins_ == b.spins_; }
  friend bool operator!=(const Pinning& a, const Pinning& b) { return !(a == b); }

 private:
  Map spins_;
};

/// Which edge weights vanish. A vanishing weight turns the corresponding
/// same-spin edge into a hard constraint.
struct HardConstraints {
  bool beta_zero = false;
  bool gamma_zero = false;
};

inline void check_pinning_range(const Graph& g, const Pinning& p) {
  for (auto [v, s] : p)
    if (v >= g.vertex_count()) throw std::invalid_argument("pinned vertex " + std::to_string(v) + " out of range");
}

inline bool is_feasible(const Graph& g, const Pinning& p, bool beta_is_zero, bool gamma_is_zero) {
  if (!beta_is_zero && !gamma_is_zero) return true;
  for (auto [u, v] : g.edges()) {
    auto su = p.spin(u), sv = p.spin(v);
    if (!su || !sv || *su != *sv) continue;
    if (*su == Spin::Plus && beta_is_zero) return false;
    if (*su == Spin::Minus && gamma_is_zero) return false;
  }
  return true;
}

inline bool is_feasible(const Graph& g, const Pinning& p, HardConstraints hc) {
  return is_feasible(g, p, hc.beta_zero, hc.gamma_zero);
}

inline bool is_proper(const Graph& g, const Pinning& p, Vertex v, bool beta_is_zero, bool gamma_is_zero) {
  if (p.contains(v)) return false;
  return is_feasible(g, p.with(v, Spin::Plus), beta_is_zero, gamma_is_zero) &&
         is_feasible(g, p.with(v, Spin::Minus), beta_is_zero, gamma_is_zero);
}

inline bool is_proper(const Graph& g, const Pinning& p, Vertex v, HardConstraints hc) {
  return is_proper(g, p, v, hc.beta_zero, hc.gamma_zero);
}

/// Graph distance that may be infinite (empty target set or unreachable).
class Distance {
 public:
  Distance() = default;  // infinity
  explicit Distance(std::size_t d) : value_(d) {}
  static Distance infinity() { return {}; }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  std::size_t value() const {
    if (!value_) throw std::logic_error("infinite distance has no value");
    return *value_;
  }

  friend bool operator==(const Distance& a, const Distance& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Distance& a, const Distance& b) { return !(a == b); }
  friend bool operator<(const Distance& a, const Distance& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : std::string("inf"); }

 private:
  std::optional<std::size_t> value_;
};

/// BFS distances from a set of sources.
inline std::vector<Distance> bfs_distances(const Graph& g, const std::vector<Vertex>& sources) {
  std::vector<Distance> dist(g.vertex_count());
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (s >= g.vertex_count()) throw std::invalid_argument("source vertex out of range");
    if (dist[s].is_infinite()) {
      dist[s] = Distance(0);
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y].is_finite()) continue;
      dist[y] = Distance(dist[x].value() + 1);
      queue.push_back(y);
    }
  }
  return dist;
}

inline Distance distance_to_set(const Graph& g, Vertex v, const std::vector<Vertex>& targets) {
  if (targets.empty()) return Distance::infinity();
  return bfs_distances(g, targets).at(v);
}

inline Distance distance(const Graph& g, Vertex u, Vertex v) { return bfs_distances(g, {u}).at(v); }

/// Vertices where two pinnings disagree: pinned by only one of them, or
/// pinned to different spins.
inline std::vector<Vertex> disagreement_set(const Pinning& s, const Pinning& t) {
  std::vector<Vertex> out;
  for (auto [v, spin] : s) {
    auto other = t.spin(v);
    if (!other || *other != spin) out.push_back(v);
  }
  for (auto [v, spin] : t)
    if (!s.contains(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

inline Distance disagreement_distance(const Graph& g, Vertex v, const Pinning& s, const Pinning& t) {
  return distance_to_set(g, v, disagreement_set(s, t));
}

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> seen(g.vertex_count(), 0);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    comps.emplace_back();
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      comps.back().push_back(x);
      for (Vertex y : g.neighbors(x))
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

inline bool is_connected(const Graph& g) { return g.vertex_count() <= 1 || connected_components(g).size() == 1; }

inline bool is_tree(const Graph& g) {
  return g.vertex_count() >= 1 && g.edge_count() + 1 == g.vertex_count() && is_connected(g);
}

inline bool is_forest(const Graph& g) { return g.edge_count() + connected_components(g).size() == g.vertex_count(); }

/// Unique path between u and v in a tree, listed from u to v.
inline std::vector<Vertex> tree_path(const Graph& t, Vertex u, Vertex v) {
  std::vector<Vertex> parent(t.vertex_count(), std::numeric_limits<Vertex>::max());
  std::deque<Vertex> queue{u};
  parent[u] = u;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : t.neighbors(x))
      if (parent[y] == std::numeric_limits<Vertex>::max()) {
        parent[y] = x;
        queue.push_back(y);
      }
  }
  if (parent[v] == std::numeric_limits<Vertex>::max()) throw std::invalid_argument("vertices are not connected");
  std::vector<Vertex> path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Largest finite eccentricity over all vertices.
inline std::size_t diameter(const Graph& g) {
  std::size_t d = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (const auto& x : bfs_distances(g, {v}))
      if (x.is_finite()) d = std::max(d, x.value());
  return d;
}

inline std::size_t eccentricity(const Graph& g, Vertex v) {
  std::size_t e = 0;
  for (const auto& x : bfs_distances(g, {v}))
    if (x.is_finite()) e = std::max(e, x.value());
  return e;
}

/// Subgraph induced by `keep`; vertices are relabelled in ascending order of
/// their original ids. `origin[i]` is the source id of new vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> origin;
  std::vector<std::optional<Vertex>> index;  // source id -> new id
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<Vertex> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  InducedSubgraph out;
  out.index.assign(g.vertex_count(), std::nullopt);
  for (std::size_t i = 0; i < keep.size(); ++i) out.index.at(keep[i]) = static_cast<Vertex>(i);
  out.graph = Graph(keep.size());
  for (auto [u, v] : g.edges())
    if (out.index[u] && out.index[v]) out.graph.add_edge(*out.index[u], *out.index[v]);
  if (g.has_fields()) {
    std::vector<ExactComplex> f;
    f.reserve(keep.size());
    for (Vertex v : keep) f.push_back(g.fields()[v]);
    out.graph.set_fields(std::move(f));
  }
  out.origin = std::move(keep);
  return out;
}

inline InducedSubgraph delete_vertices(const Graph& g, const std::vector<Vertex>& removed) {
  std::vector<char> drop(g.vertex_count(), 0);
  for (Vertex v : removed) drop.at(v) = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(g, std::move(keep));
}

/// Pinning restricted to the vertices of an induced subgraph, relabelled.
inline Pinning restrict_pinning(const Pinning& p, const InducedSubgraph& sub) {
  Pinning out;
  for (auto [v, s] : p)
    if (v < sub.index.size() && sub.index[v]) out.pin(*sub.index[v], s);
  return out;
}

// ---- small graph constructors used by tests, the CLI and decay families ----

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(0, static_cast<Vertex>(n - 1));
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

/// Complete tree of the given depth where every internal vertex has
/// `branching` children; breadth-first labelling with the root at 0.
inline Graph complete_tree(std::size_t branching, std::size_t depth) {
  std::size_t n = 1, level = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    level *= branching;
    n += level;
  }
  Graph g(n);
  Vertex next = 1;
  for (Vertex x = 0; next < n; ++x)
    for (std::size_t c = 0; c < branching && next < n; ++c) g.add_edge(x, next++);
  return g;
}

}  // namespace ssm
