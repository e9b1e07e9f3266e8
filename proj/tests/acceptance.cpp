// One PASS/FAIL line per acceptance criterion; exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "fastloop/families.hpp"
#include "fastloop/monodromy.hpp"
#include "fastloop/resultant.hpp"
#include "oracles.hpp"

using namespace fastloop;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

// every report from criteria 1-4, for the cross-cutting checks in 5 and 9
std::vector<AnalysisReport> g_reports;
std::size_t g_disagreements = 0;

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<ClassifyRow> run_family(const std::vector<GermInput>& members, Outcome& o) {
  auto rows = classify(members, CoveringOptions{});
  for (const auto& row : rows) {
    if (row.report) g_reports.push_back(*row.report);
    if (row.exit == 1) {
      ++g_disagreements;
      o.fail(row.germ.name + ": " + row.error);
    } else if (!row.report) {
      o.fail(row.germ.name + ": " + row.error);
    }
  }
  return rows;
}

GermInput surface(const std::string& name, const std::string& eq) {
  GermInput g;
  g.name = name;
  g.equation = eq;
  g.variables = {"x", "y", "z"};
  g.fiber = "z";
  return g;
}

Outcome ade() {
  Outcome o;
  auto t = std::chrono::steady_clock::now();
  auto rows = run_family(ade_family(8), o);
  const double secs = seconds_since(t);
  std::vector<std::string> nofast, imc;
  for (const auto& row : rows) {
    if (!row.report) continue;
    const auto& v = row.report->verdict;
    if (v.tag == VerdictTag::Undetermined) o.fail(row.germ.name + " undetermined");
    if (v.tag == VerdictTag::NoFastLoops) nofast.push_back(row.germ.name);
    if (v.imc == ImcTag::IMC) imc.push_back(row.germ.name);
  }
  const std::vector<std::string> expected{"A1", "D4"};
  if (nofast != expected) o.fail("NoFastLoops set differs");
  if (imc != expected) o.fail("IMC set differs");
  if (secs >= 30) o.fail("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << rows.size() << " germs, NoFastLoops/IMC = {";
  for (std::size_t i = 0; i < imc.size(); ++i) d << (i ? "," : "") << imc[i];
  d << "}, " << secs << " s";
  o.detail = d.str() + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome modality_two() {
  Outcome o;
  const std::vector<GermInput> germs{surface("X9 a=0", "z^2 + x^4 + y^4"), surface("X9 a=1", "z^2 + x^4 + y^4 + x^2*y^2"),
                                     surface("P8 a=1", "z^3 + x^3 + y^3 + x*y*z")};
  auto rows = run_family(germs, o);
  for (const auto& row : rows) {
    if (!row.report) continue;
    SurfaceGerm X(parse_poly(row.germ.equation, row.germ.variables), row.germ.fiber);
    auto wh = wh_shortcut(X);
    if (!wh || wh->tag != VerdictTag::NoFastLoops) o.fail(row.germ.name + ": wh_shortcut is not NoFastLoops");
    auto thm = fast_loop_theorem(*row.report->covering);
    if (thm.tag != VerdictTag::NoFastLoops) o.fail(row.germ.name + ": theorem says " + to_string(thm.tag));
    if (row.report->verdict.tag != VerdictTag::NoFastLoops) o.fail(row.germ.name + ": pipeline says " + to_string(row.report->verdict.tag));
  }
  if (o.pass) o.detail = "X9 (a=0,1) and P8 (a=1): NoFastLoops from wh_shortcut, theorem and pipeline";
  return o;
}

// a reduced plane germ of multiplicity m is an ordinary multiple point iff mu = (m - 1)^2
bool ordinary_oracle(const MultiPoly& a0) {
  MultiPoly g = squarefree_part(a0);
  const auto m = g.order().value();
  return oracle::milnor_number(g) == (m - 1) * (m - 1);
}

Outcome mult2_equivalence() {
  Outcome o;
  auto rows = run_family(binomial_family(), o);
  const auto& corpus = binomial_corpus();
  std::size_t agree = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].report) continue;
    MultiPoly a0 = parse_poly(corpus[i], {"x", "y"});
    const bool ordinary = ordinary_oracle(a0);
    const VerdictTag want = ordinary ? VerdictTag::NoFastLoops : VerdictTag::FastLoop;
    const VerdictTag m2 = mult2_shortcut(a0).tag, thm = fast_loop_theorem(*rows[i].report->covering).tag;
    if (ordinary != (i < 10)) o.fail(corpus[i] + ": oracle disagrees with the corpus label");
    if (m2 == want && thm == want) ++agree;
    else o.fail(corpus[i] + ": mult2=" + to_string(m2) + " theorem=" + to_string(thm) + " oracle=" + to_string(want));
  }
  o.detail = std::to_string(agree) + "/" + std::to_string(rows.size()) + " agree" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome brieskorn_grid() {
  Outcome o;
  auto members = brieskorn_family({2, 3}, 8, 2);
  auto rows = run_family(members, o);
  std::size_t strict = 0, narrow = 0;
  for (const auto& row : rows) {
    if (!row.report) continue;
    // names are p<p>_d<d1>,<d2>
    unsigned p, d1, d2;
    std::sscanf(row.germ.name.c_str(), "p%u_d%u,%u", &p, &d1, &d2);
    if (d2 >= d1) continue;
    ++strict;
    if (d1 < 2 * d2) ++narrow;
    if (row.report->verdict.tag != VerdictTag::FastLoop) o.fail(row.germ.name + " is " + to_string(row.report->verdict.tag));
  }
  o.detail = std::to_string(rows.size()) + " germs, " + std::to_string(strict) + " with d2 < d1 (" + std::to_string(narrow) +
             " with d1 < 2*d2), all FastLoop" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome riemann_hurwitz() {
  Outcome o;
  std::size_t components = 0;
  for (const auto& rep : g_reports) {
    if (!rep.covering) continue;
    for (const auto& c : rep.covering->components) {
      ++components;
      if (!c.r) {
        o.fail(rep.input.name + " " + c.tangent_label() + ": r missing");
        continue;
      }
      const long lhs = static_cast<long>(*c.r) + c.sum_q_mult - rep.p;
      if (lhs < 0 || *c.r < 1 || *c.r > rep.p) o.fail(rep.input.name + " " + c.tangent_label());
    }
  }
  o.detail = std::to_string(components) + " components over " + std::to_string(g_reports.size()) + " germs" +
             (o.detail.empty() ? ", zero violations" : "; " + o.detail);
  return o;
}

Outcome discriminant_properties() {
  Outcome o;
  std::string notes;
  bool homogeneous = true;
  for (unsigned p = 2; p <= 4; ++p) {
    VarList vars;
    for (unsigned j = 0; j < p; ++j) vars.push_back("a" + std::to_string(j));
    vars.push_back("z");
    const std::size_t zi = p;
    MultiPoly F = MultiPoly::variable(vars, zi).pow(p);
    for (unsigned j = 0; j < p; ++j) F += MultiPoly::variable(vars, j) * MultiPoly::variable(vars, zi).pow(j);
    MultiPoly D = resultant_in(F, F.derivative(zi), zi);
    for (const auto& [e, c] : D.terms()) {
      unsigned w = 0;
      for (unsigned j = 0; j < p; ++j) w += (p - j) * e[j];
      if (e[zi] != 0 || w != p * (p - 1)) {
        homogeneous = false;
        o.fail("p=" + std::to_string(p) + " not weighted-homogeneous of weight " + std::to_string(p * (p - 1)));
        break;
      }
    }
    MultiPoly R = D;
    for (unsigned j = 2; j < p; ++j) R = R.substitute(j, Rational(0));
    MultiPoly a0 = MultiPoly::variable(vars, 0), a1 = MultiPoly::variable(vars, 1);
    MultiPoly target = (a0 * make_rational(1, p - 1)).pow(p - 1) - (a1 * make_rational(1, p)).pow(p);
    MultiPoly flipped = (a0 * make_rational(1, p - 1)).pow(p - 1) + (a1 * make_rational(1, p)).pow(p);
    auto ratio = [](const MultiPoly& a, const MultiPoly& b) -> std::optional<Rational> {
      if (a.size() != b.size()) return std::nullopt;
      std::optional<Rational> k;
      for (const auto& [e, c] : a.terms()) {
        Rational d = b.coeff(e);
        if (d == 0) return std::nullopt;
        if (!k) k = c / d;
        else if (*k != c / d) return std::nullopt;
      }
      return k;
    };
    if (auto k = ratio(R, target)) {
      notes += " p=" + std::to_string(p) + ": " + to_string(*k) + " times the stated form;";
    } else {
      std::string why = "p=" + std::to_string(p) + ": restricted discriminant " + R.str() + " is not proportional to " + target.str();
      if (auto k = ratio(R, flipped)) why += " (it is " + to_string(*k) + " times " + flipped.str() + ": the sign of the a1 term is (-1)^(p-1))";
      o.fail(why);
    }
  }
  const std::string head = homogeneous ? "weighted-homogeneous for p=2,3,4;" : "";
  o.detail = head + notes + (o.pass ? "" : " " + o.detail);
  return o;
}

Outcome kappa_identity() {
  Outcome o;
  const char* corpus[] = {"x^2 + y^2",     "x^2 + y^3",        "x^2 + y^4",           "x^2 + y^6",   "x^2*y + y^3",
                          "x^2*y + y^4",   "x^3 + y^4",        "x^3 + x*y^3",         "x^3 + y^5",   "x^4 + y^4",
                          "x^4 + y^5",     "x^2*y^2 + x^5 + y^5", "y*(x^2 - y^3)",    "x*y*(x - y)*(x + y)", "(x^2 - y^3)^2 + x^5*y"};
  std::size_t ok = 0;
  for (const char* f : corpus) {
    MultiPoly g = parse_poly(f, {"x", "y"});
    const std::size_t mu = oracle::milnor_number(g);
    auto inv = milnor_kappa(PlaneCurveGerm(g));
    if (inv.milnor && *inv.milnor == mu && inv.kappa == mu + inv.multiplicity - 1) ++ok;
    else o.fail(std::string(f) + ": kappa=" + std::to_string(inv.kappa) + " mu_oracle=" + std::to_string(mu));
  }
  o.detail = std::to_string(ok) + "/15 germs" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome monodromy_engine() {
  Outcome o;
  const VarList YZ{"y", "z"};
  auto loop_type = [&](const std::string& g, std::size_t sheets) {
    auto fam = FiberFamily<Real256>::from_poly(parse_poly(g, YZ), 0, 1);
    auto res = spider_monodromy(fam, {Cplx<Real256>(0)}, Cplx<Real256>(0), Real256(1), Real256(0.75), sheets);
    auto t = res.loops.at(0).cycle_type();
    std::sort(t.begin(), t.end());
    return t;
  };
  for (unsigned m = 2; m <= 6; ++m)
    if (loop_type("z^" + std::to_string(m) + " - y", m) != std::vector<std::size_t>{m}) o.fail("z^" + std::to_string(m) + " - y");
  if (loop_type("z^4 - y^2", 4) != std::vector<std::size_t>{2, 2}) o.fail("z^4 - y^2");

  const char* germs[] = {"z^2 + x^2 + y^3", "z^3 - (x^3 + y^4)", "z^4 - (x^2 + y^3)^2", "z^3 + x*y*z + x^3 + y^3"};
  auto orbits = [](const CoveringData& cd) {
    std::vector<unsigned> r;
    for (const auto& c : cd.components) r.push_back(c.r.value_or(0));
    return r;
  };
  for (const char* g : germs) {
    SurfaceGerm X(parse_poly(g, {"x", "y", "z"}), "z");
    auto ref = covering_data(X);
    for (std::size_t b = 1; b <= 3; ++b) {
      CoveringOptions opt;
      opt.base_choice = b;
      if (orbits(covering_data(X, opt)) != orbits(ref)) o.fail(std::string(g) + ": base point " + std::to_string(b));
    }
    for (Rational t0 = *ref.t0 / 2; t0 >= *ref.t0 / 8; t0 /= 2) {
      CoveringOptions opt;
      opt.t0 = t0;
      if (orbits(covering_data(X, opt)) != orbits(ref)) o.fail(std::string(g) + ": t0 = " + to_string(t0));
    }
    auto again = covering_data(X);
    if (orbits(again) != orbits(ref) || again.t0 != ref.t0 || again.halvings != ref.halvings) o.fail(std::string(g) + ": rerun differs");
  }
  if (o.pass) o.detail = "m-cycles for m=2..6, (2,2) for z^4-y^2, orbits stable under 3 base points, 3 halvings and reruns";
  return o;
}

Outcome tangent_cone_consistency() {
  Outcome o;
  GermInput si = surface("super-isolated", "x^2*z - y^3 + x^4 + y^4 + z^4");
  si.fiber = "y";
  MultiPoly F = parse_poly(si.equation, si.variables);
  auto tc = tc_criterion(F);
  if (tc.tag != VerdictTag::FastLoop) o.fail("tc_criterion says " + to_string(tc.tag));
  try {
    auto rep = analyze(si);
    auto thm = fast_loop_theorem(*rep.covering);
    if (thm.tag != VerdictTag::FastLoop) o.fail("theorem says " + to_string(thm.tag));
    if (rep.verdict.tag != VerdictTag::FastLoop) o.fail("pipeline says " + to_string(rep.verdict.tag));
  } catch (const Disagreement& e) {
    ++g_disagreements;
    o.fail(e.what());
  }
  // cross-check every three-variable corpus germ with a complete theorem verdict
  std::size_t compared = 0, tc_definite = 0;
  for (const auto& rep : g_reports) {
    if (rep.input.variables.size() != 3 || !rep.covering) continue;
    auto thm = fast_loop_theorem(*rep.covering);
    auto t = tc_criterion(parse_poly(rep.input.equation, rep.input.variables));
    ++compared;
    if (!t.definite()) continue;
    ++tc_definite;
    if (thm.definite() && thm.tag != t.tag) o.fail(rep.input.name + ": theorem " + to_string(thm.tag) + " vs tangent cone " + to_string(t.tag));
  }
  if (g_disagreements) o.fail(std::to_string(g_disagreements) + " pipeline disagreements");
  o.detail = "super-isolated FastLoop from both engines; " + std::to_string(compared) + " corpus germs compared, " +
             std::to_string(tc_definite) + " with a definite tangent-cone verdict" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ade classification", ade},
      {"modality <= 2 spot checks", modality_two},
      {"multiplicity-2 oracle equivalence", mult2_equivalence},
      {"brieskorn grid", brieskorn_grid},
      {"riemann-hurwitz invariant", riemann_hurwitz},
      {"universal discriminant", discriminant_properties},
      {"kappa identity", kappa_identity},
      {"monodromy engine", monodromy_engine},
      {"tangent cone consistency", tangent_cone_consistency},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failures ? 1 : 0;
}
