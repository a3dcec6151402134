#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssm/polynomial.hpp"

using namespace ssm;
using P = Polynomial<ExactComplex>;

namespace {
P poly(std::initializer_list<long> c) {
  std::vector<ExactComplex> v;
  for (long x : c) v.emplace_back(x);
  return P(v);
}
}  // namespace

TEST(Polynomial, TrimsAndReportsDegree) {
  EXPECT_EQ(poly({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(poly({0, 0}).is_zero());
  EXPECT_EQ(P().degree(), -1);
  EXPECT_EQ(poly({0, 0, 3, 1}).valuation(), 2u);
}

TEST(Polynomial, ArithmeticAndEvaluation) {
  const P a = poly({1, 1}), b = poly({-1, 1});
  EXPECT_EQ(a * b, poly({-1, 0, 1}));
  EXPECT_EQ(a + b, poly({0, 2}));
  EXPECT_EQ(a - a, P());
  EXPECT_EQ(poly({2, 2, 2})(ExactComplex(3)), ExactComplex(26));
  EXPECT_EQ(poly({1, 2, 3}).derivative(), poly({2, 6}));
}

TEST(Polynomial, TaylorShiftMatchesSubstitution) {
  oracle::Gen gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ExactComplex> c;
    for (int i = 0; i < 6; ++i) c.push_back(gen.complex());
    const P p(c);
    const ExactComplex center = gen.complex(), t = gen.complex();
    EXPECT_EQ(p.taylor_shift(center)(t), p(center + t));
  }
}

TEST(Polynomial, DivisionAndGcd) {
  const P f = poly({-1, 0, 1}), g = poly({1, 1});
  auto [q, r] = divmod(f, g);
  EXPECT_EQ(q, poly({-1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(poly({-1, 0, 1}), poly({1, 2, 1})), poly({1, 1}));
  EXPECT_THROW(exact_quotient(poly({1, 0, 1}), poly({1, 1})), std::domain_error);
}

TEST(Polynomial, SquareFreeDecompositionRebuildsMonicPart) {
  // 3 (x-1)^3 (x+2)^2 (x^2+1)
  const P x1 = poly({-1, 1}), x2 = poly({2, 1}), x3 = poly({1, 0, 1});
  const P p = ExactComplex(3) * x1 * x1 * x1 * x2 * x2 * x3;
  const auto parts = square_free_decomposition(p);
  P rebuilt = poly({1});
  for (const auto& [f, m] : parts)
    for (std::size_t i = 0; i < m; ++i) rebuilt = rebuilt * f;
  EXPECT_EQ(rebuilt, p.monic());
  std::map<std::size_t, P> by_mult;
  for (const auto& [f, m] : parts) by_mult.emplace(m, f);
  ASSERT_EQ(by_mult.size(), 3u);
  EXPECT_EQ(by_mult.at(1), x3);
  EXPECT_EQ(by_mult.at(2), x2);
  EXPECT_EQ(by_mult.at(3), x1);
}
