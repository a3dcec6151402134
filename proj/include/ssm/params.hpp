#pragma once

// Parameters of 2-spin and q-spin systems.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"

namespace ssm {

/// Raised when a marginal is requested at parameters where Z vanishes.
class ZeroPartitionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Edge weights beta (both ends +) and gamma (both ends -), and either a
/// uniform external field or one field per vertex.
template <class S>
struct Params {
  S beta{1};
  S gamma{1};
  std::variant<S, std::vector<S>> field{S(1)};

  static Params uniform(S beta, S gamma, S lambda) {
    Params p{std::move(beta), std::move(gamma), std::move(lambda)};
    p.validate();
    return p;
  }
  static Params per_vertex(S beta, S gamma, std::vector<S> fields) {
    Params p{std::move(beta), std::move(gamma), std::move(fields)};
    p.validate();
    return p;
  }
  /// Uses the graph's own field vector when it carries one.
  static Params for_graph(const Graph& g, S beta, S gamma, S lambda) {
    if (!g.has_fields()) return uniform(std::move(beta), std::move(gamma), std::move(lambda));
    std::vector<S> f;
    for (const auto& x : g.fields()) f.push_back(scalar_cast<S>(x));
    return per_vertex(std::move(beta), std::move(gamma), std::move(f));
  }

  bool is_uniform() const { return std::holds_alternative<S>(field); }
  const S& uniform_lambda() const { return std::get<S>(field); }
  const std::vector<S>& fields() const { return std::get<std::vector<S>>(field); }

  const S& lambda(Vertex v) const {
    if (is_uniform()) return std::get<S>(field);
    return std::get<std::vector<S>>(field).at(v);
  }

  HardConstraints hard() const { return {is_zero(beta), is_zero(gamma)}; }
  bool is_ising() const { return beta == gamma; }

  void validate() const {
    if (is_zero(beta) && is_zero(gamma)) throw std::invalid_argument("beta and gamma cannot both be zero");
    if (is_uniform()) {
      if (is_zero(uniform_lambda())) throw std::invalid_argument("external field must be nonzero");
    } else {
      for (std::size_t v = 0; v < fields().size(); ++v)
        if (is_zero(fields()[v])) throw std::invalid_argument("zero external field at vertex " + std::to_string(v));
    }
  }

  void check_vertex_count(std::size_t n) const {
    if (!is_uniform() && fields().size() != n)
      throw std::invalid_argument("field vector length " + std::to_string(fields().size()) + " does not match " +
                                  std::to_string(n) + " vertices");
  }

  /// Same parameters seen through a vertex relabelling: new vertex i takes
  /// the field of source vertex origin[i].
  Params mapped(const std::vector<Vertex>& origin) const {
    if (is_uniform()) return *this;
    std::vector<S> f;
    f.reserve(origin.size());
    for (Vertex o : origin) f.push_back(fields().at(o));
    return Params{beta, gamma, std::move(f)};
  }

  Params<ApproxComplex> approx() const {
    Params<ApproxComplex> out{to_approx(beta), to_approx(gamma), ApproxComplex(1)};
    if (is_uniform()) {
      out.field = to_approx(uniform_lambda());
    } else {
      std::vector<ApproxComplex> f;
      for (const auto& x : fields()) f.push_back(to_approx(x));
      out.field = std::move(f);
    }
    return out;
  }

  friend bool operator==(const Params& a, const Params& b) {
    return a.beta == b.beta && a.gamma == b.gamma && a.field == b.field;
  }
};

using ExactParams = Params<ExactComplex>;

/// q-spin system: symmetric interaction matrix A and per-spin fields.
template <class S>
struct QSpinParams {
  std::vector<std::vector<S>> a;
  std::vector<S> lambdas;

  std::size_t q() const { return lambdas.size(); }

  void validate() const {
    if (lambdas.size() < 2) throw std::invalid_argument("q-spin system needs q >= 2");
    if (a.size() != q()) throw std::invalid_argument("interaction matrix has wrong size");
    for (std::size_t i = 0; i < q(); ++i) {
      if (a[i].size() != q()) throw std::invalid_argument("interaction matrix is not square");
      for (std::size_t j = 0; j < i; ++j)
        if (a[i][j] != a[j][i]) throw std::invalid_argument("interaction matrix is not symmetric");
    }
  }

  /// The 2-spin system written as a q = 2 system, spin 0 = +, spin 1 = -.
  static QSpinParams from_two_spin(const S& beta, const S& gamma, const S& lambda) {
    return QSpinParams{{{beta, S(1)}, {S(1), gamma}}, {lambda, S(1)}};
  }
};

/// Spins of a q-spin pinning are 0..q-1.
using QPinning = std::map<Vertex, std::size_t>;

inline QPinning to_qspin_pinning(const Pinning& p) {
  QPinning out;
  for (auto [v, s] : p) out.emplace(v, s == Spin::Plus ? 0U : 1U);
  return out;
}

}  // namespace ssm
