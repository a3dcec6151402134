#pragma once

// Seeded random instances. Everything is driven by std::mt19937_64 and a
// hand-written bounded draw, so a seed produces the same corpus with every
// standard library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"

namespace ssm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty range");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }
  /// Uniform in [lo, hi].
  long between(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  bool coin() { return below(2) == 1; }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <class T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Independent stream per trial (splitmix64 of seed and trial index).
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// numerator in [-10, 10], denominator in [1, 10].
inline Rational random_rational(Rng& rng, bool allow_zero = true) {
  for (;;) {
    Rational q(rng.between(-10, 10), static_cast<unsigned long>(rng.between(1, 10)));
    q.canonicalize();
    if (allow_zero || q != 0) return q;
  }
}

inline Rational random_positive_rational(Rng& rng) {
  Rational q(rng.between(1, 10), static_cast<unsigned long>(rng.between(1, 10)));
  q.canonicalize();
  return q;
}

/// Erdos-Renyi G(n, 1/2) conditioned on being connected.
inline Graph random_connected_graph(Rng& rng, std::size_t n) {
  for (;;) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.coin()) g.add_edge(u, v);
    if (is_connected(g)) return g;
  }
}

/// Uniform spanning tree of a connected graph (Wilson's algorithm, rooted at 0).
inline Graph random_spanning_tree(Rng& rng, const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (!is_connected(g)) throw std::invalid_argument("spanning tree of a disconnected graph");
  std::vector<char> in_tree(n, 0);
  std::vector<Vertex> next(n, 0);
  if (n > 0) in_tree[0] = 1;
  for (Vertex s = 0; s < n; ++s) {
    Vertex x = s;
    while (!in_tree[x]) {
      const auto& nb = g.neighbors(x);
      next[x] = nb[rng.below(nb.size())];
      x = next[x];
    }
    for (x = s; !in_tree[x]; x = next[x]) in_tree[x] = 1;
  }
  Graph t(n);
  for (Vertex v = 1; v < n; ++v) t.add_edge(v, next[v]);
  return t;
}

/// Uniform spanning tree of a random connected graph on n vertices.
inline Graph random_tree(Rng& rng, std::size_t n) { return random_spanning_tree(rng, random_connected_graph(rng, n)); }

/// Connected graph with maximum degree <= d: a random tree (rejected until
/// its degrees fit) plus random extra edges that keep the bound.
inline Graph random_bounded_degree_graph(Rng& rng, std::size_t n, std::size_t d) {
  if (d < 2 && n > 2) throw std::invalid_argument("degree bound too small for a connected graph");
  Graph g;
  do g = random_tree(rng, n);
  while (g.max_degree() > d);
  std::vector<Edge> extra;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) extra.emplace_back(u, v);
  rng.shuffle(extra);
  for (auto [u, v] : extra)
    if (rng.coin() && g.degree(u) < d && g.degree(v) < d) g.add_edge(u, v);
  return g;
}

/// Each eligible vertex is pinned with probability num/den to a random spin;
/// a pin that would break feasibility is tried with the other spin and then
/// dropped. Vertices in `keep_free` stay unpinned and proper.
inline Pinning random_feasible_pinning(Rng& rng, const Graph& g, HardConstraints hc,
                                       const std::vector<Vertex>& keep_free = {}, std::uint64_t num = 1,
                                       std::uint64_t den = 3) {
  std::vector<char> excluded(g.vertex_count(), 0);
  for (Vertex v : keep_free) excluded.at(v) = 1;
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  Pinning p;
  auto acceptable = [&](const Pinning& cand) {
    if (!is_feasible(g, cand, hc)) return false;
    for (Vertex v : keep_free)
      if (!is_proper(g, cand, v, hc)) return false;
    return true;
  };
  for (Vertex x : order) {
    if (excluded[x] || !rng.chance(num, den)) continue;
    const Spin s = rng.coin() ? Spin::Plus : Spin::Minus;
    if (acceptable(p.with(x, s))) p.pin(x, s);
    else if (acceptable(p.with(x, flip(s)))) p.pin(x, flip(s));
  }
  return p;
}

}  // namespace ssm
