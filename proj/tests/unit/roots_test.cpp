#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "ssm/roots.hpp"

using namespace ssm;
using P = Polynomial<ExactComplex>;

namespace {

P from_roots(const std::vector<ExactComplex>& roots) {
  P p(std::vector<ExactComplex>{ExactComplex(1)});
  for (const auto& r : roots) p = p * P({-r, ExactComplex(1)});
  return p;
}

/// Every expected root is matched by a distinct found root within tol.
bool same_multiset(std::vector<ApproxComplex> found, const std::vector<ApproxComplex>& expected, double tol) {
  if (found.size() != expected.size()) return false;
  for (const auto& e : expected) {
    auto best = found.end();
    for (auto it = found.begin(); it != found.end(); ++it)
      if (std::abs(*it - e) < tol && (best == found.end() || std::abs(*it - e) < std::abs(*best - e))) best = it;
    if (best == found.end()) return false;
    found.erase(best);
  }
  return true;
}

}  // namespace

TEST(PolyRoots, DifferenceOfSquares) {
  const auto r = poly_roots(P({ExactComplex(-1), ExactComplex(0), ExactComplex(1)}));
  EXPECT_TRUE(same_multiset(r, {1.0, -1.0}, 1e-12));
}

TEST(PolyRoots, IsingEdgeQuadraticHasUnitModulusRoots) {
  const auto r = poly_roots(P({ExactComplex(2), ExactComplex(2), ExactComplex(2)}));
  const double s = std::sqrt(3.0) / 2;
  EXPECT_TRUE(same_multiset(r, {{-0.5, s}, {-0.5, -s}}, 1e-12));
  for (const auto& z : r) EXPECT_NEAR(std::abs(z), 1.0, 1e-12);
}

TEST(PolyRoots, MultipleRootAtZero) {
  const auto r = poly_roots(P({ExactComplex(0), ExactComplex(0), ExactComplex(0), ExactComplex(1)}));
  ASSERT_EQ(r.size(), 3u);
  for (const auto& z : r) EXPECT_EQ(z, ApproxComplex(0));
}

TEST(PolyRoots, RejectsConstants) { EXPECT_THROW(poly_roots(P({ExactComplex(4)})), std::invalid_argument); }

// Planted exact roots, some repeated, recovered to 1e-9.
TEST(PolyRoots, RecoversPlantedRoots) {
  oracle::Gen gen(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<ExactComplex> roots;
    const long distinct = gen.between(1, 6);
    for (long i = 0; i < distinct; ++i) {
      const ExactComplex z = gen.complex();
      const long mult = gen.between(1, 3);
      for (long m = 0; m < mult; ++m) roots.push_back(z);
    }
    std::vector<ApproxComplex> expected;
    for (const auto& z : roots) expected.push_back(z.to_approx());
    const auto found = poly_roots(ExactComplex(gen.rational()) * from_roots(roots));
    EXPECT_TRUE(same_multiset(found, expected, 1e-9)) << "trial " << trial;
  }
}

TEST(PolyRoots, FloatingInputSimpleRoots) {
  Polynomial<ApproxComplex> p({ApproxComplex(6), ApproxComplex(-5), ApproxComplex(1)});
  EXPECT_TRUE(same_multiset(poly_roots(p), {2.0, 3.0}, 1e-12));
}
