#include <gtest/gtest.h>

#include <random>

#include "fastloop/factor.hpp"
#include "fastloop/gcd.hpp"
#include "fastloop/parse.hpp"
#include "fastloop/resultant.hpp"
#include "fastloop/weights.hpp"
#include "oracles.hpp"

using namespace fastloop;

namespace {

const VarList XY{"x", "y"};
const VarList XYZ{"x", "y", "z"};

MultiPoly P(const std::string& s, const VarList& v = XY) { return parse_poly(s, v); }

MultiPoly random_poly(std::mt19937_64& rng, const VarList& vars, unsigned max_deg, int terms, int min_deg = 0) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  MultiPoly f(vars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(vars.size(), 0);
    unsigned total = 0;
    for (auto& x : e) {
      x = deg(rng) / static_cast<unsigned>(vars.size());
      total += x;
    }
    if (static_cast<int>(total) < min_deg) e[0] += static_cast<unsigned>(min_deg) - total;
    f.add_term(e, coef(rng));
  }
  return f;
}

}  // namespace

TEST(Parse, MonomialCounts) {
  // z^2 + x^3 + x*y^2
  EXPECT_EQ(P("z^2 + x*(x^2+y^2)", XYZ).size(), 3u);
  EXPECT_TRUE(P("0").is_zero());
  MultiPoly f = P("x^2*y + y^4");
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.homogeneous_part(3).size(), 1u);
  EXPECT_EQ(f.homogeneous_part(4).size(), 1u);
}

TEST(Parse, RationalLiteralsAndUnaryMinus) {
  EXPECT_EQ(P("1/2*x - -y"), P("x*1/2 + y"));
  EXPECT_THROW(P("x/2"), ParseError);
  EXPECT_EQ(P("(x+y)^3"), P("x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
  EXPECT_EQ(P("-(x - 2/3)").constant_term(), Rational(2, 3));
}

TEST(Parse, RejectsJuxtapositionAndUnknownNames) {
  EXPECT_THROW(P("2x"), ParseError);
  EXPECT_THROW(P("x y"), ParseError);
  EXPECT_THROW(P("x + w"), ParseError);
  EXPECT_THROW(P("x^"), ParseError);
  EXPECT_THROW(P("(x + y"), ParseError);
  EXPECT_THROW(P("x/0"), std::exception);
}

TEST(Parse, ErrorCarriesPosition) {
  try {
    P("x + 2y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(Parse, PrintParseRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    MultiPoly f = random_poly(rng, XYZ, 9, 6);
    EXPECT_EQ(parse_poly(f.str(), XYZ), f) << f.str();
  }
  for (std::string s : {"x^2*y + y^4", "-3/7*x^5 + y", "0", "1"}) EXPECT_EQ(P(s).str(), P(P(s).str()).str());
}

TEST(Order, Examples) {
  EXPECT_EQ(P("x^2*y + y^4").order().value(), 3u);
  EXPECT_EQ(P("1 + x").order().value(), 0u);
  EXPECT_TRUE(P("0").order().is_infinite());
}

TEST(LowestForm, Examples) {
  EXPECT_EQ(P("x^2*y + y^4").lowest_form(), P("x^2*y"));
  EXPECT_EQ(P("x^5 - y^5 + x^6").lowest_form(), P("x^5 - y^5"));
  EXPECT_EQ(P("x^3 + x*y^2").lowest_form(), P("x^3 + x*y^2"));
  EXPECT_THROW(P("0").lowest_form(), std::invalid_argument);
}

TEST(OrderProperty, MultiplicativeOnProducts) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    MultiPoly f = random_poly(rng, XY, 8, 4, 1), g = random_poly(rng, XY, 8, 4, 1);
    if (f.is_zero() || g.is_zero()) continue;
    EXPECT_EQ((f * g).order().value(), f.order().value() + g.order().value());
    EXPECT_EQ((f * g).lowest_form(), f.lowest_form() * g.lowest_form());
  }
}

TEST(Resultant, Examples) {
  MultiPoly c = P("x^3 - 2*x*y + 5", XYZ);
  MultiPoly f = P("z^2", XYZ) + c;
  EXPECT_EQ(resultant_in(f, f.derivative(2), 2), c * Rational(4));
  MultiPoly g = P("z^2 + x*(x^2+y^2)", XYZ);
  EXPECT_EQ(resultant_in(g, g.derivative(2), "z"), P("4*x*(x^2+y^2)", XYZ));
  MultiPoly r = resultant_in(P("z - x", XYZ), P("z - y", XYZ), 2);
  EXPECT_TRUE(r == P("x - y", XYZ) || r == P("y - x", XYZ));
}

TEST(ResultantProperty, AntisymmetricAndCommutesWithSpecialization) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int i = 0; i < 25; ++i) {
    MultiPoly f = random_poly(rng, XYZ, 9, 5) + P("z^3", XYZ), g = random_poly(rng, XYZ, 6, 4) + P("2*z^2", XYZ);
    MultiPoly rfg = resultant_in(f, g, 2), rgf = resultant_in(g, f, 2);
    EXPECT_TRUE(rfg == rgf || rfg == -rgf);
    std::vector<Rational> pt{val(rng), val(rng), 0};
    auto fs = oracle::specialize(f, 2, pt), gs = oracle::specialize(g, 2, pt);
    if (fs.back() == 0 || gs.back() == 0) continue;
    EXPECT_EQ(rfg.eval(pt), oracle::sylvester_resultant(fs, gs));
  }
}

TEST(Gcd, RecoversCommonFactor) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    MultiPoly a = random_poly(rng, XYZ, 6, 3) + P("x*z + 1", XYZ);
    MultiPoly b = random_poly(rng, XYZ, 5, 3) + P("y^2", XYZ);
    MultiPoly c = random_poly(rng, XYZ, 5, 3) + P("z^3", XYZ);
    MultiPoly g = poly_gcd(a * b, a * c);
    EXPECT_TRUE(divides(primitive_normalized(a), g));
    EXPECT_TRUE(divides(g, a * b));
    EXPECT_TRUE(divides(g, a * c));
  }
}

TEST(SquarefreePart, Examples) {
  EXPECT_EQ(squarefree_part(P("(x^2 + y^3)^2")), primitive_normalized(P("x^2 + y^3")));
  EXPECT_EQ(squarefree_part(P("x^2*y")), P("x*y"));
  EXPECT_EQ(squarefree_part(P("x^3 - y^2 + x*y")), primitive_normalized(P("x^3 - y^2 + x*y")));
}

TEST(SquarefreeProperty, PowersCollapse) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 15; ++i) {
    MultiPoly f = random_poly(rng, XY, 5, 3, 1);
    if (f.is_constant()) continue;
    for (unsigned n = 1; n <= 3; ++n) EXPECT_EQ(squarefree_part(f.pow(n)), squarefree_part(f));
  }
}

TEST(FactorBinaryForm, Examples) {
  auto f = factor_binary_form(P("x^3 + y^3"));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].form, P("x + y"));
  EXPECT_EQ(f.factors[1].form, P("x^2 - x*y + y^2"));
  auto g = factor_binary_form(P("x^2*y"));
  ASSERT_EQ(g.factors.size(), 2u);
  EXPECT_EQ(g.factors[0].form, P("x"));
  EXPECT_EQ(g.factors[0].multiplicity, 2u);
  EXPECT_EQ(g.factors[1].form, P("y"));
  auto h = factor_binary_form(P("x^2 + y^2"));
  ASSERT_EQ(h.factors.size(), 1u);
  EXPECT_EQ(h.factors[0].multiplicity, 1u);
  EXPECT_TRUE(h.factors[0].certified_irreducible);
}

TEST(FactorBinaryFormProperty, Reassembles) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int i = 0; i < 30; ++i) {
    MultiPoly F = MultiPoly::constant(XY, 1);
    int pieces = 1 + i % 4;
    for (int k = 0; k < pieces; ++k) {
      MultiPoly lin = P("x") * Rational(c(rng)) + P("y") * Rational(c(rng) == 0 ? 1 : c(rng));
      MultiPoly quad = P("x^2") + P("x*y") * Rational(c(rng)) + P("y^2") * Rational(c(rng));
      F *= (k % 2 ? quad : lin);
    }
    if (F.is_zero() || !F.is_homogeneous()) continue;
    auto fac = factor_binary_form(F);
    MultiPoly prod = MultiPoly::constant(XY, fac.unit);
    for (const auto& fa : fac.factors) prod *= fa.form.pow(fa.multiplicity);
    EXPECT_EQ(prod, F) << F.str();
  }
}

TEST(FactorUnivariate, SwinnertonDyerStyleIrreducible) {
  // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
  auto f = factor_univariate(UPoly({1, 0, -10, 0, 1}));
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].poly.degree(), 4);
  auto g = factor_univariate(UPoly({-6, 11, -6, 1}));
  EXPECT_EQ(g.factors.size(), 3u);
}

TEST(DetectWeights, Examples) {
  auto p8 = detect_weights(P("x^3 + y^3 + z^3 + x*y*z", XYZ));
  ASSERT_TRUE(p8);
  EXPECT_EQ(p8->integral, (std::vector<Integer>{1, 1, 1}));
  auto w = detect_weights(P("z^2 + x^3 + y^7", XYZ));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->integral, (std::vector<Integer>{14, 6, 21}));
  EXPECT_EQ(w->normalized[0], Rational(1, 3));
  EXPECT_FALSE(detect_weights(P("x^2 + x^3")));
}
