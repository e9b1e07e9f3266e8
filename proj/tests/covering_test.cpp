#include <gtest/gtest.h>

#include "fastloop/covering.hpp"
#include "fastloop/parse.hpp"

using namespace fastloop;

namespace {

const VarList XYZ{"x", "y", "z"};
const VarList XY{"x", "y"};

SurfaceGerm S(const std::string& f, const std::string& fiber = "z") { return SurfaceGerm(parse_poly(f, XYZ), fiber); }

struct Expected {
  const char* f;
  std::vector<std::pair<unsigned, unsigned>> branches;  // (mult, q) per component, one component each
  unsigned r;
};

void expect_riemann_hurwitz(const CoveringData& cd, const std::string& label) {
  for (const auto& c : cd.components) {
    ASSERT_TRUE(c.r) << label;
    EXPECT_GE(*c.r, 1u) << label;
    EXPECT_LE(*c.r, cd.p) << label;
    EXPECT_GE(static_cast<int>(*c.r + c.sum_q_mult) - static_cast<int>(cd.p), 0) << label;
  }
}

std::vector<unsigned> rs(const CoveringData& cd) {
  std::vector<unsigned> out;
  for (const auto& c : cd.components) out.push_back(c.r.value_or(0));
  return out;
}

}  // namespace

TEST(SurfaceGerm, Basics) {
  auto X = S("z^3 + x*y*z + x^3 + y^3");
  EXPECT_EQ(X.p(), 3u);
  EXPECT_TRUE(X.is_weierstrass());
  EXPECT_EQ(X.base_dim(), 2u);
  EXPECT_EQ(X.coefficient(1), parse_poly("x*y", XY));
  auto Y = S("x^2*z - y^3 + x^4 + y^4 + z^4", "x");
  EXPECT_EQ(Y.p(), 4u);
  EXPECT_TRUE(Y.is_weierstrass());
  EXPECT_FALSE(S("(1 + x)*z^2 + x^2 + y^3").is_weierstrass());
  EXPECT_EQ(S("z^3 + z^2 + x^2 + y^3").p(), 2u);
}

TEST(SurfaceGerm, RejectsNonFiniteProjections) {
  EXPECT_THROW(S("x*y"), InvalidGerm);
  EXPECT_THROW(S("x*z^2 + y + z"), InvalidGerm);
  EXPECT_THROW(S("z^2 + x", "w"), InvalidGerm);
  EXPECT_THROW(S("z^2 + x + 1"), InvalidGerm);
}

TEST(Convenience, Examples) {
  EXPECT_TRUE(check_convenient(S("z^2 + x^2 + y^3")).convenient);
  auto bad = check_convenient(S("z^2 - x"));
  EXPECT_FALSE(bad.convenient);
  EXPECT_EQ(bad.diagnostic, "ord(a₀)=1 < 2");
  auto bad1 = check_convenient(S("z^3 + x*z + y^3"));
  EXPECT_FALSE(bad1.convenient);
  EXPECT_EQ(bad1.diagnostic, "ord(a₁)=1 < 2");
  EXPECT_TRUE(check_convenient(S("z^3 + x^2*z + y^3")).convenient);
}

TEST(Discriminant, PowerCoversArePowers) {
  const char* fs[] = {"x^2 + y^3", "x*y*(x - y)", "x^3 + x*y^3 + y^5"};
  for (auto f : fs) {
    MultiPoly a0 = parse_poly(f, XY);
    for (unsigned p = 2; p <= 5; ++p) {
      auto d = discriminant(S("z^" + std::to_string(p) + " - (" + f + ")"));
      EXPECT_EQ(d.full, primitive_normalized(a0.pow(p - 1))) << f << " p=" << p;
      EXPECT_EQ(d.reduced, primitive_normalized(a0)) << f << " p=" << p;
    }
  }
}

TEST(Discriminant, Examples) {
  EXPECT_EQ(discriminant(S("z^3 + x*y*z + x^3 + y^3")).full, parse_poly("27*x^6 + 58*x^3*y^3 + 27*y^6", XY));
  EXPECT_TRUE(discriminant(S("z + x^2")).full.is_constant());
  EXPECT_THROW(discriminant(S("z^2 - 2*x*z + x^2")), InvalidGerm);
}

TEST(Ramification, FiberCounts) {
  auto X = S("z^3 - (x^3 + y^4)");
  EXPECT_EQ(fiber_ramification(X, {Rational(-1), Rational(1)}), 2u);
  EXPECT_EQ(fiber_ramification(X, {Rational(1), Rational(0)}), 0u);
  auto parts = ramification_parts(X, discriminant(X).reduced);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].first, 2u);
  auto Y = S("z^3 + x*y*z + x^3 + y^3");
  auto py = ramification_parts(Y, discriminant(Y).reduced);
  ASSERT_EQ(py.size(), 1u);
  EXPECT_EQ(py[0].first, 1u);
  auto W = S("z^4 - (x^2 + y^3)^2");
  auto pw = ramification_parts(W, discriminant(W).reduced);
  ASSERT_EQ(pw.size(), 1u);
  EXPECT_EQ(pw[0].first, 3u);
}

TEST(CoveringData, FrozenExamples) {
  const Expected cases[] = {
      {"z^2 + x^2 + y^3", {{2, 1}}, 1},
      {"z^3 - (x^3 + y^4)", {{3, 2}}, 1},
      {"z^4 - (x^2 + y^3)^2", {{2, 3}}, 2},
      {"z^2 - (x^2 + y^3)^2", {{2, 1}}, 2},
  };
  for (const auto& e : cases) {
    auto cd = covering_data(S(e.f));
    ASSERT_TRUE(cd.complete) << e.f;
    ASSERT_EQ(cd.components.size(), 1u) << e.f;
    const auto& c = cd.components[0];
    EXPECT_EQ(c.tangent, parse_poly("x", XY)) << e.f;
    ASSERT_EQ(c.branches.size(), e.branches.size()) << e.f;
    for (std::size_t i = 0; i < e.branches.size(); ++i) {
      EXPECT_EQ(c.branches[i].mult, e.branches[i].first) << e.f;
      EXPECT_EQ(c.branches[i].q, e.branches[i].second) << e.f;
    }
    EXPECT_EQ(*c.r, e.r) << e.f;
    EXPECT_EQ(*c.section_sum, c.sum_q_mult) << e.f;
  }
}

TEST(CoveringData, ConjugateTangentsAreSeparateComponents) {
  auto cd = covering_data(S("z^3 + x*y*z + x^3 + y^3"));
  ASSERT_TRUE(cd.complete);
  ASSERT_EQ(cd.components.size(), 6u);
  for (const auto& c : cd.components) {
    EXPECT_EQ(c.block_degree, 6u);
    EXPECT_EQ(c.mult, 1u);
    EXPECT_EQ(c.sum_q_mult, 1u);
    EXPECT_EQ(*c.r, 2u);
  }
}

TEST(CoveringData, SmoothWhenDiscriminantMissesOrigin) {
  auto cd = covering_data(S("z + x^2 + y^3"));
  EXPECT_FALSE(cd.through_origin);
  EXPECT_TRUE(cd.components.empty());
}

TEST(CoveringProperty, StableUnderT0HalvingAndBasePoint) {
  const char* fs[] = {"z^2 + x^2 + y^3", "z^3 - (x^3 + y^4)", "z^4 - (x^2 + y^3)^2", "z^2 - x*y*(x + y)",
                      "z^3 + x*y*z + x^3 + y^3"};
  for (auto f : fs) {
    auto ref = covering_data(S(f));
    ASSERT_TRUE(ref.complete) << f;
    for (Rational t0 : {Rational(1, 32), Rational(1, 64), Rational(1, 128)}) {
      CoveringOptions o;
      o.t0 = t0;
      EXPECT_EQ(rs(covering_data(S(f), o)), rs(ref)) << f << " t0=" << to_string(t0);
    }
    for (std::size_t b = 1; b <= 3; ++b) {
      CoveringOptions o;
      o.base_choice = b;
      EXPECT_EQ(rs(covering_data(S(f), o)), rs(ref)) << f << " base " << b;
    }
  }
}

TEST(CoveringProperty, StableUnderPrecision) {
  const char* fs[] = {"z^3 - (x^3 + y^4)", "z^3 + x*y*z + x^3 + y^3"};
  for (auto f : fs) {
    auto ref = covering_data(S(f));
    for (unsigned prec : {53u, 128u, 512u}) {
      CoveringOptions o;
      o.precision = prec;
      EXPECT_EQ(rs(covering_data(S(f), o)), rs(ref)) << f << " precision " << prec;
    }
  }
}

TEST(CoveringProperty, RiemannHurwitz) {
  const char* fs[] = {"z^2 + x^2 + y^3",       "z^2 - x*y*(x + y)",         "z^3 - (x^3 + y^4)",
                      "z^3 + x^2*z + y^3",     "z^3 + x*y*z + x^3 + y^3",   "z^4 - (x^2 + y^3)^2",
                      "z^2 + x^3 + x*y^3",     "z^3 + (x*y)*z + x^3 + y^4", "z^4 + x^3*z + y^4"};
  for (auto f : fs) {
    auto cd = covering_data(S(f));
    ASSERT_TRUE(cd.complete) << f;
    expect_riemann_hurwitz(cd, f);
  }
}
