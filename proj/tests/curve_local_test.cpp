#include <gtest/gtest.h>

#include "fastloop/curve.hpp"
#include "fastloop/parse.hpp"
#include "fastloop/puiseux.hpp"
#include "oracles.hpp"

using namespace fastloop;

namespace {

const VarList XY{"x", "y"};
MultiPoly P(const std::string& s) { return parse_poly(s, XY); }
PlaneCurveGerm G(const std::string& s) { return PlaneCurveGerm(P(s)); }

struct MilnorCase {
  const char* f;
  unsigned mult;
  unsigned mu;
};

// mu frozen from oracle::milnor_number
const MilnorCase kMilnorCorpus[] = {
    {"x^2 + y^2", 2, 1},        {"x^2 + y^3", 2, 2},         {"x^2 + y^4", 2, 3},
    {"x^2 + y^6", 2, 5},        {"x^2*y + y^3", 3, 4},       {"x^2*y + y^4", 3, 5},
    {"x^3 + y^4", 3, 6},        {"x^3 + x*y^3", 3, 7},       {"x^3 + y^5", 3, 8},
    {"x^4 + y^4", 4, 9},        {"x^4 + y^5", 4, 12},        {"x^2*y^2 + x^5 + y^5", 4, 11},
    {"y*(x^2 - y^3)", 3, 5},    {"x*y*(x - y)*(x + y)", 4, 9}, {"(x^2 - y^3)^2 + x^5*y", 4, 20},
};

}  // namespace

TEST(IntersectionMultiplicity, Examples) {
  EXPECT_EQ(intersection_multiplicity(P("x"), P("y")).value(), 1u);
  EXPECT_EQ(intersection_multiplicity(P("y^2 - x^3"), P("y")).value(), 3u);
  EXPECT_TRUE(intersection_multiplicity(P("x^2 + y^3"), P("x^2 + y^3")).is_infinite());
  EXPECT_TRUE(intersection_multiplicity(P("x*(y - x^2)"), P("x*y")).is_infinite());
  EXPECT_EQ(intersection_multiplicity(P("x + 1"), P("y")).value(), 0u);
}

TEST(IntersectionMultiplicity, Symmetric) {
  const char* curves[] = {"x^2 + y^3", "y - x^2", "x^3 - y^2 + x*y", "x*y + y^4"};
  for (auto a : curves)
    for (auto b : curves) {
      auto ab = intersection_multiplicity(P(a), P(b)), ba = intersection_multiplicity(P(b), P(a));
      EXPECT_EQ(ab.is_infinite(), ba.is_infinite());
      if (ab.is_finite()) {
        EXPECT_EQ(ab.value(), ba.value()) << a << " / " << b;
      }
    }
}

TEST(MilnorKappa, Examples) {
  auto a2 = milnor_kappa(G("x^2 + y^3"));
  EXPECT_EQ(a2.multiplicity, 2u);
  EXPECT_EQ(a2.kappa, 3u);
  EXPECT_EQ(*a2.milnor, 2u);
  auto a1 = milnor_kappa(G("x^2 + y^2"));
  EXPECT_EQ(*a1.milnor, 1u);
  EXPECT_EQ(a1.kappa, 2u);
  auto smooth = milnor_kappa(G("x + y^2"));
  EXPECT_EQ(smooth.multiplicity, 1u);
  EXPECT_EQ(smooth.kappa, 0u);
  EXPECT_EQ(*smooth.milnor, 0u);
  EXPECT_THROW(milnor_kappa(G("x^2*y")), std::invalid_argument);
}

TEST(MilnorOracle, AgreesWithFrozenValues) {
  for (const auto& c : kMilnorCorpus) EXPECT_EQ(oracle::milnor_number(P(c.f)), c.mu) << c.f;
}

TEST(MilnorKappa, KappaIdentityOnCorpus) {
  for (const auto& c : kMilnorCorpus) {
    auto inv = milnor_kappa(G(c.f));
    EXPECT_EQ(inv.multiplicity, c.mult) << c.f;
    ASSERT_TRUE(inv.milnor) << c.f;
    EXPECT_EQ(*inv.milnor, c.mu) << c.f;
    EXPECT_EQ(inv.kappa, c.mu + c.mult - 1) << c.f;
  }
}

TEST(MilnorKappa, InvariantUnderShears) {
  const char* germs[] = {"x^2 + y^3", "x^3 + x*y^3", "y*(x^2 - y^3)", "x^2*y^2 + x^5 + y^5"};
  for (auto f : germs) {
    const auto base = milnor_kappa(G(f));
    RationalSampler sampler(99);
    for (int i = 0; i < 5; ++i) {
      Rational a = sampler.next(), b = sampler.next();
      MultiPoly x = MultiPoly::variable(XY, 0), y = MultiPoly::variable(XY, 1);
      MultiPoly g = P(f).compose({x + y * a, y + x * b});
      if (LinearFrame{1, a, b, 1}.det() == 0) continue;
      auto inv = milnor_kappa(PlaneCurveGerm(g), 7 + i);
      EXPECT_EQ(inv.kappa, base.kappa) << f;
      EXPECT_EQ(*inv.milnor, *base.milnor) << f;
    }
  }
}

TEST(Ordinary, Examples) {
  EXPECT_TRUE(is_ordinary_multiple_point(P("x^3 + y^3")));
  EXPECT_FALSE(is_ordinary_multiple_point(P("x^2 + y^3")));
  EXPECT_TRUE(is_ordinary_multiple_point(P("x^2*y")));
  EXPECT_TRUE(is_ordinary_multiple_point(P("x + y^2")));
  EXPECT_FALSE(is_ordinary_multiple_point(P("(x^2 + y^2)^2 + x^5")));
}

TEST(Ordinary, MatchesMilnorBoundOracle) {
  // a reduced germ of multiplicity m is ordinary iff mu = (m - 1)^2
  for (const auto& c : kMilnorCorpus)
    EXPECT_EQ(is_ordinary_multiple_point(P(c.f)), c.mu == (c.mult - 1) * (c.mult - 1)) << c.f;
}

TEST(Ordinary, EquivalentToSmoothTangentialComponents) {
  for (const auto& c : kMilnorCorpus) {
    auto comps = tangential_decomposition<double>(G(c.f));
    bool all_smooth = std::all_of(comps.begin(), comps.end(), [](const auto& k) { return k.multiplicity == 1; });
    EXPECT_EQ(is_ordinary_multiple_point(P(c.f)), all_smooth) << c.f;
  }
}

TEST(TangentialDecomposition, Examples) {
  auto three = tangential_decomposition<Real128>(G("x*(x^2 + y^2)"));
  ASSERT_EQ(three.size(), 3u);
  for (const auto& k : three) EXPECT_EQ(k.multiplicity, 1u);

  auto cusp = tangential_decomposition<Real128>(G("x^2 + y^3"));
  ASSERT_EQ(cusp.size(), 1u);
  EXPECT_EQ(cusp[0].tangent, P("x"));
  EXPECT_EQ(cusp[0].multiplicity, 2u);
  ASSERT_EQ(cusp[0].branches.size(), 1u);
  EXPECT_EQ(cusp[0].branches[0].multiplicity, 2u);

  auto e = tangential_decomposition<Real128>(G("x^6 + y^4"));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].tangent, P("y"));
  EXPECT_EQ(e[0].multiplicity, 4u);
  ASSERT_EQ(e[0].branches.size(), 2u);
  for (const auto& b : e[0].branches) EXPECT_EQ(b.multiplicity, 2u);
}

TEST(TangentialDecomposition, MultiplicitiesAddUp) {
  for (const auto& c : kMilnorCorpus) {
    auto comps = tangential_decomposition<Real128>(G(c.f));
    unsigned total = 0;
    for (const auto& k : comps) {
      unsigned branch_sum = 0;
      for (const auto& b : k.branches) branch_sum += b.multiplicity;
      EXPECT_EQ(branch_sum, k.multiplicity) << c.f;
      total += k.multiplicity;
    }
    EXPECT_EQ(total, c.mult) << c.f;
  }
}

TEST(NewtonPuiseux, Examples) {
  auto cusp = newton_puiseux<Real128>(G("x^2 + y^3"));
  ASSERT_EQ(cusp.size(), 1u);
  EXPECT_EQ(cusp[0].ramification, 2u);
  EXPECT_EQ(cusp[0].multiplicity, 2u);

  auto lines = newton_puiseux<Real128>(G("x^3 + y^3"));
  ASSERT_EQ(lines.size(), 3u);
  for (const auto& b : lines) EXPECT_EQ(b.multiplicity, 1u);

  auto deep = newton_puiseux<Real128>(G("y^2 - x^3 - x^4"), 4);
  ASSERT_EQ(deep.size(), 1u);
  EXPECT_EQ(deep[0].multiplicity, 2u);
  ASSERT_GE(deep[0].terms.size(), 2u);
  EXPECT_EQ(deep[0].terms[0].exponent, Rational(3, 2));
}

TEST(NewtonPuiseux, ResidualOrderExceedsDepth) {
  for (const auto& c : kMilnorCorpus) {
    auto germ = PlaneCurveGerm(squarefree_part(P(c.f)));
    for (const auto& br : newton_puiseux<Real256>(germ)) {
      unsigned limit = br.depth * br.ramification + 1;
      EXPECT_GT(residual_order(germ.poly(), br, limit), br.depth * br.ramification) << c.f;
    }
  }
}
