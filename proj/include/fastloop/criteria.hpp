#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastloop/covering.hpp"
#include "fastloop/verdict.hpp"
#include "fastloop/weights.hpp"

namespace fastloop {

/// p > r - 1 + sum q*mult, the condition that rules out fast loops over one tangential component.
inline bool inequality_holds(unsigned p, unsigned r, unsigned sum_q_mult) { return p + 1 > r + sum_q_mult; }

/// Fast loops from the covering data of a surface germ over a two-dimensional base.
inline Verdict fast_loop_theorem(const CoveringData& cd) {
  const std::string source = "theorem";
  if (cd.p <= 1) return Verdict::no_fast_loops(source, "covering of degree 1");
  if (!cd.through_origin) return Verdict::no_fast_loops(source, "the discriminant is one point");
  if (cd.reduced_ordinary) return Verdict::no_fast_loops(source, "the reduced discriminant is an ordinary multiple point");
  std::optional<Witness> best;
  unsigned best_bound = 0;
  std::vector<std::string> violations;
  bool missing = false;
  for (std::size_t k = 0; k < cd.components.size(); ++k) {
    const auto& c = cd.components[k];
    if (c.smooth()) continue;
    if (!c.r || c.section_sum != c.sum_q_mult) {
      missing = true;
      continue;
    }
    if (inequality_holds(cd.p, *c.r, c.sum_q_mult)) continue;
    unsigned bound = *c.r + c.sum_q_mult - cd.p;
    violations.push_back("component " + std::to_string(k) + " (" + c.tangent_label() + "): p = " + std::to_string(cd.p) +
                         " <= r - 1 + sum q*mult = " + std::to_string(*c.r - 1 + c.sum_q_mult));
    if (!best || bound > best_bound) {
      best = Witness{k, c.tangent_label(), c.mult, *c.r, c.sum_q_mult};
      best_bound = bound;
    }
  }
  if (best) {
    Verdict v = Verdict::fast_loop(source, violations.front(), best_bound, best);
    v.reasons.insert(v.reasons.end(), violations.begin() + 1, violations.end());
    return v;
  }
  if (missing) return Verdict::undetermined(source, "covering data incomplete for a non-smooth component");
  return Verdict::no_fast_loops(source, "every non-smooth tangential component satisfies p > r - 1 + sum q*mult");
}

/// Adds the IMC reading for a user-supplied normality flag.
inline Verdict with_imc(Verdict v, bool normal) {
  if (v.tag == VerdictTag::FastLoop)
    v.imc = ImcTag::NotIMC;
  else if (v.tag == VerdictTag::NoFastLoops && normal)
    v.imc = ImcTag::IMC;
  else
    v.imc = ImcTag::Undetermined;
  if (!normal && v.tag == VerdictTag::NoFastLoops) v.reasons.push_back("non-normal germs may fail to be IMC without fast loops");
  return v;
}

inline Verdict imc_verdict(const CoveringData& cd, bool normal) { return with_imc(fast_loop_theorem(cd), normal); }

namespace detail {

// Largest multiplicity of a tangent line of the reduced curve V(f).
inline unsigned worst_tangent_multiplicity(const MultiPoly& f) {
  unsigned m = 0;
  for (const auto& fa : factor_binary_form(squarefree_part(f).lowest_form()).factors) m = std::max(m, fa.multiplicity);
  return m;
}

inline void require_plane(const MultiPoly& f, const char* what) {
  if (f.nvars() != 2) throw std::invalid_argument(std::string(what) + " must be a polynomial in two variables");
}

// First name of the form z, w, z1, z2, ... not used by `vars`.
inline std::string fresh_name(const VarList& vars) {
  std::vector<std::string> tries{"z", "w", "u", "v"};
  for (int i = 1; i < 100; ++i) tries.push_back("z" + std::to_string(i));
  for (const auto& t : tries)
    if (std::find(vars.begin(), vars.end(), t) == vars.end()) return t;
  throw std::logic_error("no fresh variable name");
}

}  // namespace detail

/// X = V(z^2 - a0): no fast loops iff V(a0) is set-theoretically an ordinary multiple point.
inline Verdict mult2_shortcut(const MultiPoly& a0) {
  const std::string source = "mult2_shortcut";
  detail::require_plane(a0, "a0");
  if (a0.is_zero() || a0.order().value() < 2) throw std::invalid_argument("mult2_shortcut needs ord(a0) >= 2");
  if (is_ordinary_multiple_point(a0)) return Verdict::no_fast_loops(source, "V(a0) is an ordinary multiple point");
  unsigned m = detail::worst_tangent_multiplicity(a0);
  return Verdict::fast_loop(source, "V(a0) has a tangent line of multiplicity " + std::to_string(m), m - 1);
}

/// Weighted homogeneous germs whose two base weights are equal and minimal have no fast loops.
inline std::optional<Verdict> wh_shortcut(const SurfaceGerm& X) {
  if (X.base_dim() != 2) return std::nullopt;
  auto w = detect_weights(X.poly());
  if (!w) return std::nullopt;
  const auto& b = X.base_indices();
  const Rational wb = w->normalized[b[0]];
  if (w->normalized[b[1]] != wb) return std::nullopt;
  for (const auto& wi : w->normalized)
    if (wi < wb) return std::nullopt;
  if (!check_convenient(X).convenient) return std::nullopt;
  std::string ws;
  for (const auto& wi : w->integral) ws += (ws.empty() ? "" : ",") + wi.get_str();
  return Verdict::no_fast_loops("wh_shortcut", "weighted homogeneous with weights (" + ws + ") and equal minimal base weights");
}

/// The z^p + a1*z + a0 family (p >= 3). With a1 = 0 the answer is the ordinary test on a0; otherwise
/// every line l_k of l.t.(Delta_red) with multiplicity >= 2 must satisfy m_k <= p and r_k <= p - m_k, where
/// m_k is its multiplicity in l.t.(Delta). Covering data is computed only when r_k is needed.
inline Verdict family_z_p_a1_a0(unsigned p, const MultiPoly& a1, const MultiPoly& a0, const CoveringOptions& opt = {},
                                const CoveringData* known = nullptr) {
  const std::string source = "family_z_p_a1_a0";
  detail::require_plane(a0, "a0");
  if (a1.vars() != a0.vars()) throw std::invalid_argument("a1 and a0 must share their variables");
  if (p < 3) throw std::invalid_argument("the z^p + a1*z + a0 family needs p >= 3");
  if (a0.is_zero() || a0.order().value() < p) throw std::invalid_argument("the family needs ord(a0) >= p");
  if (!a1.is_zero() && a1.order().value() < p - 1) throw std::invalid_argument("the family needs ord(a1) >= p - 1");
  if (a1.is_zero()) {
    if (is_ordinary_multiple_point(a0))
      return Verdict::no_fast_loops(source, "a1 = 0 and V(a0) is an ordinary multiple point");
    unsigned m = detail::worst_tangent_multiplicity(a0);
    return Verdict::fast_loop(source, "a1 = 0 and V(a0) has a tangent line of multiplicity " + std::to_string(m),
                              (p - 1) * m - p + 1);
  }
  VarList vars = a0.vars();
  vars.push_back(detail::fresh_name(vars));
  const MultiPoly z = MultiPoly::variable(vars, 2);
  const MultiPoly F = z.pow(p) + a1.in_ring(vars) * z + a0.in_ring(vars);
  SurfaceGerm X(F, vars[2]);
  std::optional<CoveringData> computed;
  const CoveringData* cd = known;
  const Discriminant disc = known ? Discriminant{known->discriminant, known->reduced} : discriminant(X);
  if (disc.reduced.is_constant() || disc.reduced.constant_term() != 0)
    return Verdict::no_fast_loops(source, "the discriminant is one point");
  const auto full = factor_binary_form(disc.full.lowest_form());
  const auto red = factor_binary_form(disc.reduced.lowest_form());
  std::optional<Verdict> fast;
  bool missing = false;
  for (const auto& line : red.factors) {
    if (line.multiplicity < 2) continue;
    const MultiPoly lk = primitive_normalized(line.form);
    unsigned mk = 0;
    for (const auto& fa : full.factors)
      if (primitive_normalized(fa.form) == lk) mk = fa.multiplicity;
    if (mk > p) {
      Verdict v = Verdict::fast_loop(source, "line " + lk.str() + ": m_k = " + std::to_string(mk) + " > p", 1 + mk - p);
      if (!fast || *v.lower_bound > *fast->lower_bound) fast = v;
      continue;
    }
    if (!cd) {
      computed = covering_data(X, opt);
      cd = &*computed;
    }
    std::optional<unsigned> rk;
    for (const auto& c : cd->components) {
      if (primitive_normalized(c.tangent) != lk) continue;
      if (c.sum_q_mult != mk) return Verdict::undetermined(source, "sum q*mult differs from m_k over " + lk.str());
      if (!c.r) {
        missing = true;
        rk.reset();
        break;
      }
      rk = std::max(rk.value_or(0), *c.r);
    }
    if (!rk) {
      missing = true;
      continue;
    }
    if (*rk > p - mk) {
      Verdict v = Verdict::fast_loop(source,
                                     "line " + lk.str() + ": r_k = " + std::to_string(*rk) + " > p - m_k = " + std::to_string(p - mk),
                                     *rk + mk - p);
      if (!fast || *v.lower_bound > *fast->lower_bound) fast = v;
    }
  }
  if (fast) return *fast;
  if (missing) return Verdict::undetermined(source, "component counts r_k unavailable");
  return Verdict::no_fast_loops(source, "every multiple line of l.t.(Delta_red) satisfies m_k <= p and r_k <= p - m_k");
}

/// When ord(a1)/(p-1) > ord(a0)/p the family verdict is the ordinary test on a0; nullopt otherwise.
inline std::optional<Verdict> family_order_shortcut(unsigned p, const MultiPoly& a1, const MultiPoly& a0) {
  if (a0.is_zero() || a1.is_zero()) return std::nullopt;
  const Rational lhs = make_rational(static_cast<long>(a1.order().value()), p - 1),
                 rhs = make_rational(static_cast<long>(a0.order().value()), p);
  if (!(lhs > rhs)) return std::nullopt;
  const std::string source = "family_order_shortcut";
  if (is_ordinary_multiple_point(a0)) return Verdict::no_fast_loops(source, "l.t.(Delta) = l.t.(a0^(p-1)) and V(a0) is ordinary");
  return Verdict::fast_loop(source, "l.t.(Delta) = l.t.(a0^(p-1)) and V(a0) is not ordinary", 1);
}

struct PointCheck {
  unsigned cone_multiplicity = 0;    ///< mult of the projectivized tangent cone of Delta at o_k
  unsigned strict_multiplicity = 0;  ///< mult of the strict transform of Delta at o_k
  Verdict verdict;
};

/// Higher-dimensional check at a rational direction o_k of the projectivized tangent cone of Delta:
/// fast loop when mult(PT_Delta, o_k) >= p/q and mult(PT_Delta, o_k) > mult(strict transform, o_k).
inline PointCheck higher_dim_point_check(const MultiPoly& delta, std::vector<Rational> direction, unsigned p, unsigned q) {
  const std::size_t n = delta.nvars();
  if (direction.size() != n) throw std::invalid_argument("direction has the wrong dimension");
  if (q == 0) throw std::invalid_argument("ramification bound q must be positive");
  const MultiPoly L = delta.lowest_form();
  if (L.eval(direction) != 0) throw std::invalid_argument("direction is not on the projectivized tangent cone");
  std::size_t c = n;
  for (std::size_t i = 0; i < n; ++i)
    if (direction[i] != 0) {
      c = i;
      break;
    }
  if (c == n) throw std::invalid_argument("the zero vector is not a direction");
  const Rational s = direction[c];
  for (auto& a : direction) a /= s;
  const VarList& V = delta.vars();
  std::vector<MultiPoly> chart, blowup;
  const MultiPoly xc = MultiPoly::variable(V, c);
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly xi = MultiPoly::variable(V, i) + MultiPoly::constant(V, direction[i]);
    chart.push_back(i == c ? MultiPoly::constant(V, 1) : xi);
    blowup.push_back(i == c ? xc : xi * xc);
  }
  PointCheck out;
  out.cone_multiplicity = static_cast<unsigned>(L.compose(chart).order().value());
  const MultiPoly total = delta.compose(blowup);
  unsigned k = total.min_degree_in(c);
  MultiPoly strict(V);
  for (const auto& [e, a] : total.terms()) {
    Exponent f = e;
    f[c] -= k;
    strict.add_term(f, a);
  }
  out.strict_multiplicity = static_cast<unsigned>(strict.order().value());
  const std::string source = "higher_dim";
  std::string data = "mult(PT_Delta, o_k) = " + std::to_string(out.cone_multiplicity) +
                     ", mult(strict transform, o_k) = " + std::to_string(out.strict_multiplicity) + ", p/q = " +
                     to_string(make_rational(p, q));
  if (out.cone_multiplicity * q >= p && out.cone_multiplicity > out.strict_multiplicity)
    out.verdict = Verdict::fast_loop(source, data, 1);
  else
    out.verdict = Verdict::undetermined(source, "no opinion: " + data);
  return out;
}

/// Runs the point check over the directions with coordinates in {-1, 0, 1} where the projectivized
/// tangent cone of Delta is singular.
inline Verdict higher_dim_search(const MultiPoly& delta, unsigned p, unsigned q) {
  const std::size_t n = delta.nvars();
  const MultiPoly L = delta.lowest_form();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  // directions with entries in {-1, 0, 1}, first nonzero entry 1, fewest nonzero entries first
  std::vector<std::vector<Rational>> candidates;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Rational> v(n, Rational(0));
    std::size_t rest = code;
    bool leading_positive = true, seen = false;
    for (std::size_t i = 0; i < n; ++i) {
      int digit = static_cast<int>(rest % 3) - 1;
      rest /= 3;
      v[i] = digit;
      if (!seen && digit != 0) {
        seen = true;
        leading_positive = digit > 0;
      }
    }
    if (seen && leading_positive) candidates.push_back(std::move(v));
  }
  auto support = [](const std::vector<Rational>& v) { return std::count_if(v.begin(), v.end(), [](const Rational& a) { return a != 0; }); };
  std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) { return support(a) < support(b); });
  for (const auto& v : candidates) {
    if (L.eval(v) != 0) continue;
    auto check = higher_dim_point_check(delta, v, p, q);
    if (check.cone_multiplicity < 2) continue;
    if (check.verdict.tag == VerdictTag::FastLoop) {
      std::string pt;
      for (const auto& a : v) pt += (pt.empty() ? "[" : ":") + to_string(a);
      check.verdict.reasons.front() = "o_k = " + pt + "]: " + check.verdict.reasons.front();
      return check.verdict;
    }
  }
  return Verdict::undetermined("higher_dim", "no tested direction of PT_Delta satisfies both inequalities");
}

/// Brieskorn germ x_{n+1}^p - sum x_i^{d_i} with d_1 >= ... >= d_n >= p. For n = 2 the surface pipeline
/// decides; for n >= 3 the point check runs at o_k = [1:0:...:0] with q = p - 1.
inline Verdict brieskorn_check(unsigned p, const std::vector<unsigned>& d, const CoveringOptions& opt = {}) {
  if (d.size() < 2) throw std::invalid_argument("brieskorn_check needs n >= 2 exponents");
  if (p < 2) throw std::invalid_argument("brieskorn_check needs p >= 2");
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i] < d[i + 1]) throw std::invalid_argument("exponents must satisfy d_1 >= ... >= d_n");
  if (d.back() < p) throw std::invalid_argument("exponents must satisfy d_n >= p");
  const std::size_t n = d.size();
  VarList vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  MultiPoly f(vars);
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = d[i];
    f.add_term(e, 1);
  }
  if (n == 2) {
    VarList all = vars;
    all.push_back("z");
    const MultiPoly F = MultiPoly::variable(all, 2).pow(p) - f.in_ring(all);
    Verdict v = fast_loop_theorem(covering_data(SurfaceGerm(F, "z"), opt));
    v.source = "brieskorn";
    return v;
  }
  std::vector<Rational> ok(n, Rational(0));
  ok[0] = 1;
  if (f.lowest_form().eval(ok) != 0)
    return Verdict::undetermined("brieskorn", "no opinion: [1:0:...:0] is not on PT_Delta (d_1 = d_n)");
  Verdict v = higher_dim_point_check(f, ok, p, p - 1).verdict;
  v.source = "brieskorn";
  return v;
}

}  // namespace fastloop
