#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastloop/covering.hpp"
#include "fastloop/criteria.hpp"
#include "fastloop/parse.hpp"
#include "fastloop/tangent_cone.hpp"
#include "fastloop/verdict.hpp"

namespace fastloop {

/// A germ as written in a spec file or on the command line.
struct GermInput {
  std::string name;
  std::string equation;
  VarList variables;
  std::string fiber;  ///< the covering is the projection forgetting this variable
  std::optional<bool> normal;
  std::string family;  ///< free-form tag, echoed in reports
};

/// Two definite verdicts that contradict each other. Always a bug, never a property of the input.
class Disagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct AnalysisReport {
  GermInput input;
  CoveringOptions config;
  bool convenient = false;
  std::string convenience_diagnostic;
  unsigned p = 0;
  std::optional<MultiPoly> discriminant, reduced;
  std::optional<CoveringData> covering;
  std::vector<Verdict> evidence;
  Verdict verdict;
  std::vector<std::string> diagnostics;
  std::vector<StageTiming> timings;
};

namespace detail {

class StageClock {
 public:
  StageClock(std::vector<StageTiming>& out, std::string stage) : out_(out), stage_(std::move(stage)) {}
  ~StageClock() {
    out_.push_back({stage_, std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count()});
  }

 private:
  std::vector<StageTiming>& out_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Weierstrass germs z^p + a1*z + a0 with ord(a0) >= p and ord(a1) >= p - 1.
inline bool in_family(const SurfaceGerm& X) {
  if (!X.is_weierstrass() || X.p() < 3 || X.base_dim() != 2) return false;
  for (unsigned j = 2; j < X.p(); ++j)
    if (!X.coefficient(j).is_zero()) return false;
  MultiPoly a1 = X.coefficient(1), a0 = X.coefficient(0);
  if (a0.is_zero() || a0.order().value() < X.p()) return false;
  return a1.is_zero() || a1.order().value() >= X.p() - 1;
}

inline Verdict combine(std::vector<Verdict>& evidence) {
  const Verdict* first = nullptr;
  for (const auto& v : evidence) {
    if (!v.definite()) continue;
    if (!first) {
      first = &v;
      continue;
    }
    if (v.tag != first->tag)
      throw Disagreement(first->source + " says " + to_string(first->tag) + " but " + v.source + " says " + to_string(v.tag));
  }
  if (!first) {
    Verdict u = Verdict::undetermined("analysis", "no criterion reached a definite verdict");
    for (const auto& v : evidence)
      for (const auto& r : v.reasons) u.reasons.push_back(v.source + ": " + r);
    return u;
  }
  Verdict out = *first;
  if (out.tag == VerdictTag::FastLoop) {
    // a witness component fixes the bound; otherwise take the best bound on offer
    auto with_witness = std::find_if(evidence.begin(), evidence.end(),
                                     [](const Verdict& v) { return v.tag == VerdictTag::FastLoop && v.witness; });
    if (with_witness != evidence.end()) {
      out.witness = with_witness->witness;
      out.lower_bound = with_witness->lower_bound;
    } else {
      for (const auto& v : evidence)
        if (v.tag == VerdictTag::FastLoop && v.lower_bound && (!out.lower_bound || *v.lower_bound > *out.lower_bound))
          out.lower_bound = v.lower_bound;
    }
  }
  return out;
}

}  // namespace detail

/// Runs every applicable criterion. Exact shortcuts come first, then the covering theorem, then the
/// tangent-cone sufficiency test. Throws ParseError / InvalidGerm for bad input and Disagreement when two
/// definite verdicts conflict.
inline AnalysisReport analyze(const GermInput& in, const CoveringOptions& opt = {}) {
  AnalysisReport rep;
  rep.input = in;
  rep.config = opt;
  const MultiPoly F = parse_poly(in.equation, in.variables);
  SurfaceGerm X(F, in.fiber);
  rep.p = X.p();
  if (X.base_dim() < 2) throw InvalidGerm("the base must have dimension at least 2");
  {
    detail::StageClock clock(rep.timings, "convenience");
    auto conv = check_convenient(X);
    rep.convenient = conv.convenient;
    rep.convenience_diagnostic = conv.diagnostic;
  }
  if (!rep.convenient) {
    rep.verdict = Verdict::undetermined("analysis", "covering is not convenient: " + rep.convenience_diagnostic);
    rep.diagnostics.push_back(rep.verdict.reasons.front());
    return rep;
  }
  Discriminant disc;
  {
    detail::StageClock clock(rep.timings, "discriminant");
    disc = discriminant(X);
  }
  rep.discriminant = disc.full;
  rep.reduced = disc.reduced;
  const bool through_origin = !disc.reduced.is_constant() && disc.reduced.constant_term() == 0;
  auto& ev = rep.evidence;

  if (X.base_dim() > 2) {
    detail::StageClock clock(rep.timings, "higher_dim");
    if (!through_origin) {
      ev.push_back(Verdict::no_fast_loops("discriminant_point", "the discriminant misses the origin; X is smooth"));
    } else {
      unsigned q = rep.p;
      for (const auto& [j, part] : ramification_parts(X, disc.reduced)) q = std::min(q, j);
      ev.push_back(higher_dim_search(disc.reduced, rep.p, q));
    }
    rep.verdict = detail::combine(ev);
    if (in.normal) rep.verdict = with_imc(rep.verdict, *in.normal);
    return rep;
  }

  {
    detail::StageClock clock(rep.timings, "shortcuts");
    if (!through_origin)
      ev.push_back(Verdict::no_fast_loops("discriminant_point", "the discriminant is one point"));
    else if (is_ordinary_multiple_point(disc.reduced))
      ev.push_back(Verdict::no_fast_loops("ordinary", "the reduced discriminant is an ordinary multiple point"));
    if (auto w = wh_shortcut(X)) ev.push_back(*w);
    if (X.is_weierstrass() && rep.p == 2 && X.coefficient(1).is_zero()) ev.push_back(mult2_shortcut(-X.coefficient(0)));
    if (detail::in_family(X))
      if (auto o = family_order_shortcut(rep.p, X.coefficient(1), X.coefficient(0))) ev.push_back(*o);
  }
  {
    detail::StageClock clock(rep.timings, "covering");
    rep.covering = covering_data(X, opt);
    for (const auto& d : rep.covering->diagnostics) rep.diagnostics.push_back(d);
    ev.push_back(fast_loop_theorem(*rep.covering));
  }
  if (detail::in_family(X)) {
    detail::StageClock clock(rep.timings, "family");
    ev.push_back(family_z_p_a1_a0(rep.p, X.coefficient(1), X.coefficient(0), opt, &*rep.covering));
  }
  if (F.nvars() == 3) {
    detail::StageClock clock(rep.timings, "tangent_cone");
    Verdict tc = tc_criterion(F, opt.seed);
    if (tc.definite()) ev.push_back(tc);
    else rep.diagnostics.push_back("tangent_cone: " + tc.reasons.front());
  }
  rep.verdict = detail::combine(ev);
  if (in.normal) rep.verdict = with_imc(rep.verdict, *in.normal);
  return rep;
}

}  // namespace fastloop
