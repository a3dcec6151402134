#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ssm/mixing.hpp"

using namespace ssm;
using PS = PowerSeries<ExactComplex>;

namespace {

std::map<Vertex, bool> as_map(const Pinning& p) {
  std::map<Vertex, bool> m;
  for (auto [v, s] : p) m[v] = s == Spin::Plus;
  return m;
}

PS series(std::initializer_list<Rational> c, std::size_t order) {
  std::vector<ExactComplex> v;
  for (const auto& x : c) v.emplace_back(x);
  return PS(v, order);
}

const ExactComplex kZero(0), kOne(1);

}  // namespace

TEST(Marginal, Examples) {
  EXPECT_EQ(marginal(Graph(1), Pinning{}, 0, ExactParams::uniform(1, 1, 1)), ExactComplex(Rational(1, 2)));
  for (Vertex v = 0; v < 3; ++v)
    EXPECT_EQ(marginal(complete_graph(3), Pinning{}, v, ExactParams::uniform(0, 1, 1)), ExactComplex(Rational(1, 4)));
  EXPECT_EQ(marginal(path_graph(2), Pinning{}, 0, ExactParams::uniform(1, 1, 3)), ExactComplex(Rational(3, 4)));
}

TEST(Marginal, Preconditions) {
  EXPECT_THROW(marginal(path_graph(2), Pinning{{0, Spin::Plus}}, 0, ExactParams::uniform(1, 1, 1)), std::invalid_argument);
  EXPECT_THROW(marginal(path_graph(2), Pinning{{1, Spin::Plus}}, 0, ExactParams::uniform(0, 1, 1)), std::invalid_argument);
  // Z = 1 + lambda vanishes at lambda = -1.
  EXPECT_THROW(marginal(Graph(1), Pinning{}, 0, ExactParams::uniform(1, 1, -1)), ZeroPartitionError);
  EXPECT_THROW(marginal(cycle_graph(3), Pinning{}, 0, ExactParams::uniform(2, 2, -1)), ZeroPartitionError);
}

TEST(SawMarginal, AgreesWithEnumeration) {
  oracle::Gen gen(103);
  int checked = 0;
  for (int trial = 0; checked < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.between(1, 9));
    const Graph g = gen.connected(n);
    const Vertex v = static_cast<Vertex>(gen.between(0, static_cast<long>(n) - 1));
    const ExactComplex beta = trial % 4 == 0 ? kZero : ExactComplex(gen.rational());
    std::vector<ExactComplex> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(gen.nonzero_complex());
    const auto params = ExactParams::per_vertex(beta, gen.rational(), f);
    Pinning p;
    for (Vertex w = 0; w < n; ++w)
      if (w != v && gen.between(0, 4) == 0) {
        const Spin s = gen.between(0, 1) ? Spin::Plus : Spin::Minus;
        const Pinning cand = p.with(w, s);
        if (is_feasible(g, cand, params.hard()) && is_proper(g, cand, v, params.hard())) p.pin(w, s);
      }
    const ExactComplex z = oracle::z(g, as_map(p), params.beta, params.gamma, f);
    if (z.is_zero()) continue;
    auto plus = as_map(p);
    plus[v] = true;
    const ExactComplex expected = oracle::z(g, plus, params.beta, params.gamma, f) / z;
    EXPECT_EQ(marginal(g, p, v, params), expected);
    EXPECT_TRUE(verify_saw_marginal(g, p, v, params)) << "trial " << trial;
    ++checked;
  }
}

TEST(LambdaSeries, Examples) {
  EXPECT_EQ(marginal_series_lambda(Graph(1), Pinning{}, 0, kOne, kOne, 4).series, series({0, 1, -1, 1}, 4));
  EXPECT_EQ(marginal_series_lambda(path_graph(2), Pinning{}, 0, kZero, kOne, 4).series, series({0, 1, -2, 4}, 4));
  EXPECT_EQ(marginal_series_lambda(path_graph(2), Pinning{{1, Spin::Minus}}, 0, kZero, kOne, 4).series,
            series({0, 1, -1, 1}, 4));
}

TEST(LambdaSeries, MultipliesBackToPinnedPolynomial) {
  oracle::Gen gen(107);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.between(1, 8));
    const Graph g = gen.connected(n);
    const ExactComplex beta = gen.rational(true), gamma = gen.rational();
    const std::size_t order = 6;
    const auto s = marginal_series_lambda(g, Pinning{}, 0, beta, gamma, order).series;
    const auto z = PS::from_polynomial(z_poly_lambda(g, Pinning{}, beta, gamma), order);
    const auto zp = PS::from_polynomial(z_poly_lambda(g, Pinning{{0, Spin::Plus}}, beta, gamma), order);
    EXPECT_EQ(s * z, zp);
  }
}

TEST(Ldc, Examples) {
  const Graph p2 = path_graph(2);
  const auto a = ldc_report(p2, Pinning{{1, Spin::Minus}}, Pinning{{1, Spin::Plus}}, 0, kZero, kOne, 4);
  EXPECT_EQ(a.first_difference, 1u);
  EXPECT_EQ(a.distance, Distance(1));
  EXPECT_TRUE(a.contract_holds);
  const auto b = ldc_report(p2, Pinning{}, Pinning{{1, Spin::Minus}}, 0, kZero, kOne, 4);
  EXPECT_EQ(b.first_difference, 2u);
  EXPECT_TRUE(b.contract_holds);
  const auto c = ldc_report(path_graph(5), Pinning{{4, Spin::Plus}}, Pinning{{4, Spin::Plus}}, 0, ExactComplex(2),
                            ExactComplex(3), 6);
  EXPECT_EQ(c.first_difference, 6u);
  EXPECT_TRUE(c.distance.is_infinite());
  EXPECT_TRUE(c.contract_holds);
}

TEST(Ldc, ContractOnRandomPaths) {
  oracle::Gen gen(109);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.between(2, 8));
    const Graph g = path_graph(n);
    const ExactComplex beta = gen.rational(), gamma = gen.rational();
    const Vertex far = static_cast<Vertex>(n - 1);
    const auto r = ldc_report(g, Pinning{{far, Spin::Plus}}, Pinning{{far, Spin::Minus}}, 0, beta, gamma, n + 2);
    EXPECT_EQ(r.distance, Distance(n - 1));
    EXPECT_GE(r.first_difference, n - 1);
    EXPECT_TRUE(r.contract_holds);
  }
  EXPECT_FALSE(make_ldc_report(1, 5, Distance(3)).contract_holds);
  EXPECT_TRUE(make_ldc_report(3, 5, Distance(3)).contract_holds);
  EXPECT_FALSE(make_ldc_report(4, 5, Distance::infinity()).contract_holds);
}

TEST(BetaSeries, EdgeAtCenterOne) {
  const Graph e = path_graph(2);
  const std::variant<ExactComplex, std::vector<ExactComplex>> field = kOne;
  const auto free = marginal_series_beta(e, Pinning{}, 0, kOne, field, kOne, 3).series;
  EXPECT_EQ(free[0], ExactComplex(Rational(1, 2)));
  EXPECT_EQ(free[1], ExactComplex(Rational(1, 8)));
  // Re-multiplication by Z(1 + t) = 4 + t gives Z+ = 2 + t.
  EXPECT_EQ(free * series({4, 1}, 3), series({2, 1}, 3));
  const auto pinned = marginal_series_beta(e, Pinning{{1, Spin::Plus}}, 0, kOne, field, kOne, 3).series;
  EXPECT_EQ(pinned[0], ExactComplex(Rational(1, 2)));
  EXPECT_EQ(pinned[1], ExactComplex(Rational(1, 4)));
  const auto r = ldc_beta_report(e, Pinning{}, Pinning{{1, Spin::Plus}}, 0, kOne, field, kOne, 3);
  EXPECT_EQ(r.first_difference, 1u);
  EXPECT_TRUE(r.contract_holds);
}

TEST(BetaSeries, SingularIsingCenterIsReported) {
  const std::variant<ExactComplex, std::vector<ExactComplex>> field = kOne;
  EXPECT_THROW(marginal_series_beta(path_graph(2), Pinning{}, 0, kOne, field, ExactComplex(-1), 3, BetaMode::Ising),
               ZeroPartitionError);
  EXPECT_THROW(marginal_series_beta(path_graph(2), Pinning{}, 0, ExactComplex(2), field, kOne, 3), std::invalid_argument);
}

TEST(BetaSeries, ConstantTermIsMarginalAtCenter) {
  oracle::Gen gen(113);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.between(2, 7));
    const Graph g = gen.connected(n);
    const ExactComplex gamma = gen.rational(), lambda = gen.rational();
    const ExactComplex center = gamma.inverse();
    const ExactComplex z = oracle::z(g, {}, center, gamma, lambda);
    if (z.is_zero()) continue;
    const std::variant<ExactComplex, std::vector<ExactComplex>> field = lambda;
    const auto s = marginal_series_beta(g, Pinning{}, 0, gamma, field, center, 4).series;
    EXPECT_EQ(s[0], oracle::z(g, {{0, true}}, center, gamma, lambda) / z);
  }
}

TEST(Decay, FitRecoversSyntheticRate) {
  DecayProfile prof;
  for (std::size_t k = 1; k <= 6; ++k) prof.rows.push_back({k, 2 * std::pow(3.0, -static_cast<double>(k))});
  fit_decay(prof);
  ASSERT_TRUE(prof.rate);
  EXPECT_NEAR(*prof.rate, 3.0, 1e-9);
  EXPECT_NEAR(*prof.constant, 2.0, 1e-9);
  DecayProfile one;
  one.rows.push_back({1, 0.5});
  fit_decay(one);
  EXPECT_FALSE(one.rate);
}

TEST(Decay, DecoupledSystemHasNoGap) {
  const auto params = ExactParams::uniform(2, Rational(1, 2), 3);
  const auto prof = decay_profile<ExactComplex>(
      [](std::size_t k) { return make_decay_instance(DecayFamily::Path, DecayMode::Ssm, k); }, params, 1, 6);
  for (const auto& r : prof.rows) EXPECT_EQ(r.gap, 0.0);
  EXPECT_FALSE(prof.rate);
}

TEST(Decay, HardCorePathDecays) {
  const auto params = ExactParams::uniform(0, 1, Rational(1, 10));
  const auto prof = decay_profile<ExactComplex>(
      [](std::size_t k) { return make_decay_instance(DecayFamily::Path, DecayMode::Ssm, k); }, params, 2, 10);
  ASSERT_TRUE(prof.rate);
  EXPECT_GT(*prof.rate, 1.0);
}

TEST(Decay, FamiliesHaveTheBoundaryAtDistanceK) {
  const auto path = make_decay_instance(DecayFamily::Path, DecayMode::Psm, 4);
  EXPECT_EQ(path.graph.vertex_count(), 5u);
  EXPECT_EQ(path.sigma, (Pinning{{4, Spin::Plus}}));
  EXPECT_TRUE(path.tau.empty());
  const auto tree = make_decay_instance(DecayFamily::CompleteTree, DecayMode::Msm, 2, 3);
  EXPECT_EQ(tree.graph.vertex_count(), 13u);
  EXPECT_EQ(tree.sigma.size(), 9u);
  EXPECT_EQ(tree.sigma.count(Spin::Minus), 9u);
  for (auto [b, s] : tree.sigma) EXPECT_EQ(distance(tree.graph, 0, b), Distance(2));
}

TEST(Weitz, TriangleAtDepthOne) {
  const auto params = ExactParams::uniform(0, 1, 1);
  const auto w = weitz_approx_marginal(complete_graph(3), 0, Pinning{}, params, 1);
  EXPECT_FALSE(w.exact);
  EXPECT_EQ(w.tree_size, 3u);
  EXPECT_EQ(w.value, ExactComplex(Rational(1, 2)));
  EXPECT_EQ(w.value - marginal(complete_graph(3), Pinning{}, 0, params), ExactComplex(Rational(1, 4)));
}

TEST(Weitz, ExactAtEccentricity) {
  const auto params = ExactParams::uniform(Rational(1, 2), 2, 3);
  const auto w = weitz_approx_marginal(path_graph(5), 0, Pinning{}, params, 4);
  EXPECT_TRUE(w.exact);
  EXPECT_EQ(w.value, marginal(path_graph(5), Pinning{}, 0, params));
}

TEST(Weitz, FullDepthIsExactOnRandomGraphs) {
  oracle::Gen gen(127);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.between(1, 7));
    const Graph g = gen.connected(n);
    const auto params = ExactParams::uniform(gen.positive(), gen.positive(), gen.positive());
    const auto w = weitz_approx_marginal(g, 0, Pinning{}, params, n);
    EXPECT_TRUE(w.exact);
    EXPECT_EQ(w.value, marginal(g, Pinning{}, 0, params));
  }
}
