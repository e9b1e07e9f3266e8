#include <gtest/gtest.h>

#include "fastloop/analysis.hpp"
#include "fastloop/families.hpp"

using namespace fastloop;

namespace {

const VarList XY{"x", "y"};
const VarList XYZ{"x", "y", "z"};
MultiPoly P(const std::string& s) { return parse_poly(s, XY); }

ComponentData component(unsigned mult, unsigned sum, std::optional<unsigned> r, const std::string& tangent = "x") {
  ComponentData c;
  c.tangent = P(tangent);
  c.mult = mult;
  c.sum_q_mult = sum;
  c.section_sum = sum;
  c.r = r;
  return c;
}

CoveringData data(unsigned p, std::vector<ComponentData> comps) {
  CoveringData cd;
  cd.p = p;
  cd.components = std::move(comps);
  return cd;
}

GermInput germ(const std::string& eq, std::optional<bool> normal = {}) {
  GermInput g;
  g.name = "t";
  g.equation = eq;
  g.variables = XYZ;
  g.fiber = "z";
  g.normal = normal;
  return g;
}

}  // namespace

TEST(Inequality, Examples) {
  EXPECT_TRUE(inequality_holds(2, 1, 1));
  EXPECT_FALSE(inequality_holds(2, 1, 2));
  EXPECT_TRUE(inequality_holds(3, 2, 1));
  EXPECT_FALSE(inequality_holds(3, 1, 6));
  EXPECT_TRUE(inequality_holds(4, 2, 2));
  EXPECT_FALSE(inequality_holds(4, 2, 3));
}

TEST(Theorem, SyntheticCoveringData) {
  auto none = fast_loop_theorem(data(3, {component(2, 2, 1), component(1, 1, 2, "y")}));
  EXPECT_EQ(none.tag, VerdictTag::NoFastLoops);

  auto fast = fast_loop_theorem(data(3, {component(2, 2, 1), component(3, 6, 1, "y"), component(2, 4, 1, "x + y")}));
  ASSERT_EQ(fast.tag, VerdictTag::FastLoop);
  ASSERT_TRUE(fast.witness);
  EXPECT_EQ(fast.witness->component, 1u);
  EXPECT_EQ(fast.witness->tangent, "y");
  EXPECT_EQ(*fast.lower_bound, 4u);
  EXPECT_EQ(fast.reasons.size(), 2u);

  auto missing = fast_loop_theorem(data(3, {component(2, 2, std::nullopt)}));
  EXPECT_EQ(missing.tag, VerdictTag::Undetermined);
  auto missing_but_violated = fast_loop_theorem(data(2, {component(2, 2, std::nullopt), component(2, 2, 1, "y")}));
  EXPECT_EQ(missing_but_violated.tag, VerdictTag::FastLoop);

  auto mismatch = component(2, 3, 1);
  mismatch.section_sum = 2;
  EXPECT_EQ(fast_loop_theorem(data(2, {mismatch})).tag, VerdictTag::Undetermined);

  auto smooth_only = fast_loop_theorem(data(5, {component(1, 1, std::nullopt)}));
  EXPECT_EQ(smooth_only.tag, VerdictTag::NoFastLoops);

  auto point = data(2, {});
  point.through_origin = false;
  EXPECT_EQ(fast_loop_theorem(point).tag, VerdictTag::NoFastLoops);
  auto ordinary = data(4, {component(2, 9, 1)});
  ordinary.reduced_ordinary = true;
  EXPECT_EQ(fast_loop_theorem(ordinary).tag, VerdictTag::NoFastLoops);
}

TEST(Imc, Readings) {
  auto fl = Verdict::fast_loop("t", "r", 1);
  EXPECT_EQ(*with_imc(fl, true).imc, ImcTag::NotIMC);
  EXPECT_EQ(*with_imc(fl, false).imc, ImcTag::NotIMC);
  auto nf = Verdict::no_fast_loops("t", "r");
  EXPECT_EQ(*with_imc(nf, true).imc, ImcTag::IMC);
  auto weak = with_imc(nf, false);
  EXPECT_EQ(*weak.imc, ImcTag::Undetermined);
  EXPECT_EQ(weak.reasons.size(), 2u);
  EXPECT_EQ(*with_imc(Verdict::undetermined("t", "r"), true).imc, ImcTag::Undetermined);
}

TEST(Imc, SurfaceExamples) {
  EXPECT_EQ(*analyze(germ("z^2 + x^2*y + y^3", true)).verdict.imc, ImcTag::IMC);
  EXPECT_EQ(*analyze(germ("z^2 + x^2 + y^2", true)).verdict.imc, ImcTag::IMC);
  EXPECT_EQ(*analyze(germ("z^2 + x^3 + y^4", true)).verdict.imc, ImcTag::NotIMC);
  auto non_normal = analyze(germ("z^2 - x*y", false));
  EXPECT_EQ(non_normal.verdict.tag, VerdictTag::NoFastLoops);
  EXPECT_EQ(*non_normal.verdict.imc, ImcTag::Undetermined);
  EXPECT_FALSE(analyze(germ("z^2 - x*y")).verdict.imc);
}

TEST(Shortcuts, Mult2) {
  auto cusp = mult2_shortcut(P("x^2 + y^3"));
  EXPECT_EQ(cusp.tag, VerdictTag::FastLoop);
  EXPECT_EQ(*cusp.lower_bound, 1u);
  EXPECT_EQ(*mult2_shortcut(P("x^4 + y^6")).lower_bound, 3u);
  EXPECT_EQ(mult2_shortcut(P("x*y")).tag, VerdictTag::NoFastLoops);
  EXPECT_EQ(mult2_shortcut(P("x^2*y^2")).tag, VerdictTag::NoFastLoops);
}

TEST(Shortcuts, WeightedHomogeneous) {
  auto wh = [](const std::string& f) { return wh_shortcut(SurfaceGerm(parse_poly(f, XYZ), "z")); };
  auto p8 = wh("z^3 + x^3 + y^3 + x*y*z");
  ASSERT_TRUE(p8);
  EXPECT_EQ(p8->tag, VerdictTag::NoFastLoops);
  ASSERT_TRUE(wh("z^3 + x^4 + y^4"));
  EXPECT_EQ(wh("z^3 + x^4 + y^4")->tag, VerdictTag::NoFastLoops);
  EXPECT_FALSE(wh("z^2 + x^3 + y^7"));
  EXPECT_FALSE(wh("z^2 + x^2 + y^3 + x^5"));
}

TEST(Shortcuts, FamilyAndOrder) {
  MultiPoly zero(XY);
  auto a1_zero = family_z_p_a1_a0(3, zero, P("x^3 + y^4"));
  EXPECT_EQ(a1_zero.tag, VerdictTag::FastLoop);
  EXPECT_EQ(*a1_zero.lower_bound, 4u);
  EXPECT_EQ(family_z_p_a1_a0(3, P("x*y"), P("x^3 + y^3")).tag, VerdictTag::NoFastLoops);
  EXPECT_EQ(family_z_p_a1_a0(4, P("x^3"), P("y^4")).tag, VerdictTag::NoFastLoops);
  auto order = family_order_shortcut(3, P("x^3"), P("x^3 + y^4"));
  ASSERT_TRUE(order);
  EXPECT_EQ(order->tag, VerdictTag::FastLoop);
  EXPECT_FALSE(family_order_shortcut(3, P("x*y"), P("x^3 + y^4")));
}

TEST(Shortcuts, AgreeWithTheoremOnBinomialCorpus) {
  for (const auto& a0 : binomial_corpus()) {
    SurfaceGerm X(parse_poly("z^2 - (" + a0 + ")", XYZ), "z");
    auto cd = covering_data(X);
    auto thm = fast_loop_theorem(cd);
    auto m2 = mult2_shortcut(P(a0));
    // both bounds are valid; they need not coincide when X is reducible
    EXPECT_EQ(thm.tag, m2.tag) << a0;
  }
}

TEST(Shortcuts, FamilyAgreesWithTheorem) {
  for (const auto& e : z_p_a1_a0_corpus()) {
    MultiPoly a1 = e.a1 == "0" ? MultiPoly(XY) : P(e.a1), a0 = P(e.a0);
    std::string eq = "z^" + std::to_string(e.p) + " + (" + e.a1 + ")*z + " + e.a0;
    auto thm = fast_loop_theorem(covering_data(SurfaceGerm(parse_poly(eq, XYZ), "z")));
    auto fam = family_z_p_a1_a0(e.p, a1, a0);
    ASSERT_TRUE(fam.definite()) << eq;
    if (thm.definite()) {
      EXPECT_EQ(thm.tag, fam.tag) << eq;
    }
  }
}

TEST(HigherDimension, PointCheck) {
  VarList X3{"x1", "x2", "x3"};
  auto pc = higher_dim_point_check(parse_poly("x1^6 + x2^5 + x3^4", X3), {1, 0, 0}, 4, 3);
  EXPECT_EQ(pc.cone_multiplicity, 4u);
  EXPECT_EQ(pc.strict_multiplicity, 2u);
  EXPECT_EQ(pc.verdict.tag, VerdictTag::FastLoop);
  auto flat = higher_dim_point_check(parse_poly("x1^6 + x2^5 + x3^4", X3), {1, 0, 0}, 5, 1);
  EXPECT_EQ(flat.verdict.tag, VerdictTag::Undetermined);
  EXPECT_EQ(higher_dim_search(parse_poly("x1^4 + x2^4 + x3^4", X3), 4, 3).tag, VerdictTag::Undetermined);
}

TEST(HigherDimension, Brieskorn) {
  EXPECT_EQ(brieskorn_check(2, {6, 5, 4}).tag, VerdictTag::FastLoop);
  EXPECT_EQ(brieskorn_check(3, {5, 4, 3}).tag, VerdictTag::FastLoop);
  EXPECT_EQ(brieskorn_check(4, {8, 4, 4}).tag, VerdictTag::Undetermined);
  EXPECT_EQ(brieskorn_check(3, {4, 4, 4}).tag, VerdictTag::Undetermined);
  EXPECT_EQ(brieskorn_check(2, {5, 3}).tag, VerdictTag::FastLoop);
  EXPECT_EQ(brieskorn_check(2, {4, 4}).tag, VerdictTag::NoFastLoops);
}

TEST(Combine, ThrowsOnDisagreement) {
  std::vector<Verdict> ev{Verdict::no_fast_loops("a", "x"), Verdict::undetermined("b", "y"), Verdict::fast_loop("c", "z", 1)};
  EXPECT_THROW(detail::combine(ev), Disagreement);
  std::vector<Verdict> ok{Verdict::fast_loop("a", "x", 1), Verdict::fast_loop("b", "y", 3, Witness{0, "x", 2, 1, 4})};
  auto v = detail::combine(ok);
  EXPECT_EQ(*v.lower_bound, 3u);
  EXPECT_TRUE(v.witness);
  std::vector<Verdict> quiet{Verdict::undetermined("a", "x")};
  EXPECT_EQ(detail::combine(quiet).tag, VerdictTag::Undetermined);
}

TEST(AnalysisProperty, InvariantUnderRescalingAndUnits) {
  const char* fs[] = {"z^2 + x^2 + y^3", "z^3 + x*y*z + x^3 + y^3", "z^2 - x*y*(x + y)", "z^3 - (x^3 + y^4)"};
  for (auto f : fs) {
    auto base = analyze(germ(f)).verdict;
    MultiPoly F = parse_poly(f, XYZ);
    MultiPoly x = MultiPoly::variable(XYZ, 0), y = MultiPoly::variable(XYZ, 1), z = MultiPoly::variable(XYZ, 2);
    MultiPoly scaled = F.compose({x * Rational(2), y * Rational(-3, 2), z});
    MultiPoly times = F * Rational(-5, 3);
    for (const MultiPoly& G : {scaled, times}) {
      auto v = analyze(germ(G.str())).verdict;
      EXPECT_EQ(v.tag, base.tag) << f << " vs " << G.str();
      EXPECT_EQ(v.lower_bound, base.lower_bound) << f;
    }
  }
}

TEST(AnalysisProperty, NonConvenientIsRejected) {
  auto rep = analyze(germ("z^2 - x"));
  EXPECT_FALSE(rep.convenient);
  EXPECT_EQ(rep.verdict.tag, VerdictTag::Undetermined);
  EXPECT_THROW(analyze(germ("z^2 + w")), ParseError);
  GermInput curve;
  curve.equation = "z^2 - x^3";
  curve.variables = {"x", "z"};
  curve.fiber = "z";
  EXPECT_THROW(analyze(curve), InvalidGerm);
}
