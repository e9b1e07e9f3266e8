#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastloop/curve.hpp"
#include "fastloop/linalg.hpp"
#include "fastloop/resultant.hpp"
#include "fastloop/verdict.hpp"

namespace fastloop {

/// Point of the projective plane with rational coordinates, scaled so that the last nonzero
/// coordinate is 1.
struct ProjectivePoint {
  std::array<Rational, 3> c;

  static ProjectivePoint normalized(std::array<Rational, 3> v) {
    std::size_t k = 3;
    for (std::size_t i = 3; i-- > 0;)
      if (v[i] != 0) {
        k = i;
        break;
      }
    if (k == 3) throw std::invalid_argument("the zero vector is not a projective point");
    Rational s = v[k];
    for (auto& a : v) a /= s;
    return {v};
  }
  std::size_t chart() const {
    for (std::size_t i = 3; i-- > 0;)
      if (c[i] != 0) return i;
    return 0;
  }
  std::vector<Rational> coords() const { return {c[0], c[1], c[2]}; }
  std::string str() const { return "[" + to_string(c[0]) + ":" + to_string(c[1]) + ":" + to_string(c[2]) + "]"; }
  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.c == b.c; }
};

/// Line a*X + b*Y + c*Z = 0 of the projective plane.
struct ProjectiveLine {
  std::array<Rational, 3> c;

  static std::optional<ProjectiveLine> through(const ProjectivePoint& p, const std::array<Rational, 3>& q) {
    std::array<Rational, 3> l{p.c[1] * q[2] - p.c[2] * q[1], p.c[2] * q[0] - p.c[0] * q[2], p.c[0] * q[1] - p.c[1] * q[0]};
    if (l[0] == 0 && l[1] == 0 && l[2] == 0) return std::nullopt;
    return ProjectiveLine{ProjectivePoint::normalized(l).c};
  }
  bool contains(const ProjectivePoint& p) const { return c[0] * p.c[0] + c[1] * p.c[1] + c[2] * p.c[2] == 0; }
  std::string str(const VarList& vars) const {
    MultiPoly l(vars);
    for (std::size_t i = 0; i < 3; ++i) {
      Exponent e(3, 0);
      e[i] = 1;
      l.add_term(e, c[i]);
    }
    return l.str();
  }
};

/// The projectivized tangent cone V(lowest form) in the projective plane.
struct ProjectivePlaneCurve {
  MultiPoly form;
  unsigned degree = 0;
  bool squarefree = false;
  MultiPoly reduced;
  unsigned reduced_degree = 0;
};

inline ProjectivePlaneCurve proj_tangent_cone(const MultiPoly& F) {
  if (F.nvars() != 3) throw std::invalid_argument("the projectivized tangent cone needs three variables");
  if (F.is_zero()) throw std::invalid_argument("the zero polynomial has no tangent cone");
  if (F.constant_term() != 0) throw std::invalid_argument("the germ does not pass through the origin");
  ProjectivePlaneCurve C;
  C.form = F.lowest_form();
  C.degree = static_cast<unsigned>(C.form.total_degree());
  C.reduced = primitive_normalized(squarefree_part(C.form));
  C.reduced_degree = static_cast<unsigned>(C.reduced.total_degree());
  C.squarefree = C.reduced_degree == C.degree;
  return C;
}

namespace detail {

// Dehomogenized germ of G at P, moved to the origin of the affine chart of P.
inline MultiPoly affine_germ_at(const MultiPoly& G, const ProjectivePoint& P) {
  const std::size_t k = P.chart();
  VarList local;
  for (std::size_t i = 0; i < 3; ++i)
    if (i != k) local.push_back(G.vars()[i]);
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i == k)
      images.push_back(MultiPoly::constant(local, 1));
    else
      images.push_back(MultiPoly::variable(local, G.vars()[i]) + MultiPoly::constant(local, P.c[i]));
  }
  return G.compose(images);
}

struct RationalRootSplit {
  std::vector<Rational> roots;
  std::vector<UPoly> others;  // irreducible factors of degree >= 2
};

inline RationalRootSplit split_rational_roots(const UPoly& u) {
  RationalRootSplit s;
  if (u.degree() <= 0) return s;
  for (const auto& fa : factor_univariate(u).factors) {
    if (fa.poly.degree() == 1)
      s.roots.push_back(-fa.poly[0] / fa.poly[1]);
    else
      s.others.push_back(fa.poly);
  }
  std::sort(s.roots.begin(), s.roots.end());
  return s;
}

// Res_v(f, g), allowing one argument of degree 0 in v.
inline MultiPoly resultant_or_power(const MultiPoly& f, const MultiPoly& g, std::size_t v) {
  if (g.degree_in(v) == 0) return g.pow(f.degree_in(v));
  if (f.degree_in(v) == 0) return f.pow(g.degree_in(v));
  return resultant_in(f, g, v);
}

inline UPoly restrict_univariate(const MultiPoly& f, std::size_t fixed, const Rational& value, std::size_t free) {
  return UPoly::from_multi(f.substitute(fixed, value), free);
}

}  // namespace detail

/// Multiplicity of the plane curve V(G) at P (0 when P is off the curve).
inline unsigned multiplicity_at(const MultiPoly& G, const ProjectivePoint& P) {
  return static_cast<unsigned>(detail::affine_germ_at(G, P).order().value());
}

struct SingularPointRecord {
  ProjectivePoint point;
  unsigned multiplicity = 0;          ///< of the full tangent cone
  unsigned reduced_multiplicity = 0;  ///< of its reduced curve
  bool reduced_at_point = false;      ///< no multiple component passes through the point
  std::optional<std::uint64_t> milnor;
};

struct SingularPointSearch {
  std::vector<SingularPointRecord> points;
  bool complete = true;             ///< no singular point with irrational coordinates can exist
  bool nonrational_points = false;  ///< singular points with irrational coordinates certainly exist
  std::vector<std::string> notes;
};

/// Singular points of the reduced tangent cone with rational coordinates. The affine chart Z = 1 is
/// searched through x-coordinates, the roots of Res_y(g, g_y); the line Z = 0 through the gcd of the
/// restricted partials.
inline SingularPointSearch rational_singular_points(const ProjectivePlaneCurve& C) {
  SingularPointSearch out;
  const MultiPoly& G = C.reduced;
  if (G.is_constant()) return out;
  const VarList& V = G.vars();
  std::vector<ProjectivePoint> found;

  const VarList affine{V[0], V[1]};
  const MultiPoly g = G.substitute(2, Rational(1)).in_ring(affine);
  if (!g.is_constant() && g.degree_in(1) > 0) {
    const MultiPoly gx = g.derivative(0), gy = g.derivative(1);
    MultiPoly res = detail::resultant_or_power(g, gy, 1);
    if (res.is_zero()) {
      out.complete = false;
      out.notes.push_back("Res_y(g, g_y) vanishes identically");
    } else {
      auto xs = detail::split_rational_roots(UPoly::from_multi(res, 0));
      for (const Rational& x0 : xs.roots) {
        UPoly u = gcd(gcd(detail::restrict_univariate(g, 0, x0, 1), detail::restrict_univariate(gx, 0, x0, 1)),
                      detail::restrict_univariate(gy, 0, x0, 1));
        auto ys = detail::split_rational_roots(u);
        for (const Rational& y0 : ys.roots) found.push_back(ProjectivePoint::normalized({x0, y0, Rational(1)}));
        if (!ys.others.empty()) {
          out.complete = false;
          out.nonrational_points = true;
          out.notes.push_back("singular points with irrational y over x = " + to_string(x0));
        }
      }
      for (const UPoly& phi : xs.others) {
        // A singular point over a root of phi is a common root of g and g_x + l*g_y for every l.
        bool absent = false;
        for (const Rational& l : {Rational(1), Rational(-2), Rational(3), Rational(1, 2), Rational(-1, 3)}) {
          MultiPoly r = detail::resultant_or_power(g, gx + gy * l, 1);
          if (r.is_zero()) continue;
          if (!(UPoly::from_multi(r, 0) % phi).is_zero()) {
            absent = true;
            break;
          }
        }
        if (!absent) {
          out.complete = false;
          out.notes.push_back("possible singular points over the roots of " + phi.str(V[0]));
        }
      }
    }
  }

  // the line Z = 0
  std::vector<MultiPoly> partials{G.derivative(0), G.derivative(1), G.derivative(2)};
  UPoly u;
  for (const auto& d : partials) u = gcd(u, UPoly::from_multi(d.substitute(2, Rational(0)).substitute(1, Rational(1)), 0));
  if (u.is_zero()) throw std::logic_error("reduced tangent cone is singular along the line at infinity");
  auto xs = detail::split_rational_roots(u);
  for (const Rational& x0 : xs.roots) found.push_back(ProjectivePoint::normalized({x0, Rational(1), Rational(0)}));
  if (!xs.others.empty()) {
    out.complete = false;
    out.nonrational_points = true;
    out.notes.push_back("singular points with irrational coordinates on the line " + V[2] + " = 0");
  }
  if (std::all_of(partials.begin(), partials.end(), [](const MultiPoly& d) { return d.eval({1, 0, 0}) == 0; }))
    found.push_back(ProjectivePoint::normalized({Rational(1), Rational(0), Rational(0)}));

  const MultiPoly excess = divide_exact(C.form, G);
  for (const auto& P : found) {
    SingularPointRecord rec;
    rec.point = P;
    rec.multiplicity = multiplicity_at(C.form, P);
    rec.reduced_multiplicity = multiplicity_at(G, P);
    rec.reduced_at_point = excess.eval(P.coords()) != 0;
    if (rec.reduced_at_point) rec.milnor = milnor_kappa(PlaneCurveGerm(detail::affine_germ_at(G, P))).milnor;
    out.points.push_back(std::move(rec));
  }
  return out;
}

/// True when the line meets the curve transversally to the tangent cone of the curve germ at every
/// intersection point: each intersection number equals the multiplicity of the curve there. Conjugate
/// intersection points are accepted only when they are simple.
inline bool is_non_tangent(const ProjectivePlaneCurve& C, const ProjectiveLine& L) {
  auto basis = nullspace(RatMatrix{{L.c[0], L.c[1], L.c[2]}}, 3);
  if (basis.size() != 2) throw std::logic_error("line has no two-dimensional kernel");
  const VarList st{"s", "t"};
  MultiPoly s = MultiPoly::variable(st, 0), t = MultiPoly::variable(st, 1);
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < 3; ++i) images.push_back(s * basis[0][i] + t * basis[1][i]);
  MultiPoly h = C.form.compose(images);
  if (h.is_zero()) return false;
  for (const auto& fa : factor_binary_form(h).factors) {
    if (fa.form.total_degree() == 1) {
      Rational a = fa.form.coeff(Exponent{1, 0}), b = fa.form.coeff(Exponent{0, 1});
      std::array<Rational, 3> q;
      for (std::size_t i = 0; i < 3; ++i) q[i] = b * basis[0][i] - a * basis[1][i];
      if (multiplicity_at(C.form, ProjectivePoint::normalized(q)) != fa.multiplicity) return false;
    } else if (fa.multiplicity > 1) {
      return false;
    }
  }
  return true;
}

enum class Isolation { Isolated, NotIsolated, Unknown };

struct IsolationCheck {
  Isolation status = Isolation::Unknown;
  std::string note;
};

/// Certifies that V(F) has an isolated singular point at the origin. A singular curve would project
/// into V(Res_v(F, F_v)) and into V(Res_v(F, F_v + l*F_a + m*F_b)) for all l, m, where v is a
/// coordinate axis transverse to the tangent cone (after a generic linear change if needed).
inline IsolationCheck check_isolated(const MultiPoly& F0, std::uint64_t seed = 1) {
  IsolationCheck out;
  if (F0.nvars() != 3) throw std::invalid_argument("isolation check needs three variables");
  RationalSampler sampler(seed);
  const unsigned d = static_cast<unsigned>(F0.order().value());
  auto transverse_axis = [d](const MultiPoly& f) -> std::optional<std::size_t> {
    const MultiPoly lf = f.lowest_form();
    for (std::size_t v = 3; v-- > 0;) {
      Exponent e(3, 0);
      e[v] = d;
      if (lf.coeff(e) != 0) return v;
    }
    return std::nullopt;
  };
  MultiPoly F = F0;
  std::optional<std::size_t> fiber = transverse_axis(F);
  // isolation is invariant under the linear change x -> x + a*z, y -> y + b*z; small shears keep the
  // resultants small
  static const int shears[][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}};
  for (int attempt = 0; attempt < 12 && !fiber; ++attempt) {
    const auto& V = F0.vars();
    MultiPoly z = MultiPoly::variable(V, 2);
    Rational a = attempt < 8 ? Rational(shears[attempt][0]) : sampler.next();
    Rational b = attempt < 8 ? Rational(shears[attempt][1]) : sampler.next();
    F = F0.compose({MultiPoly::variable(V, 0) + z * a, MultiPoly::variable(V, 1) + z * b, z});
    fiber = transverse_axis(F);
  }
  if (!fiber) {
    out.note = "no projection transverse to the tangent cone was found";
    return out;
  }
  const std::size_t v = *fiber;
  VarList base;
  std::vector<std::size_t> bidx;
  for (std::size_t i = 0; i < 3; ++i)
    if (i != v) {
      base.push_back(F.vars()[i]);
      bidx.push_back(i);
    }
  const MultiPoly Fv = F.derivative(v);
  std::vector<MultiPoly> eliminants{resultant_in(F, Fv, v).in_ring(base)};
  if (eliminants.front().is_zero()) {
    out.status = Isolation::NotIsolated;
    out.note = "F has a repeated factor";
    return out;
  }
  MultiPoly g = eliminants.front();
  auto clears_origin = [](const MultiPoly& h) { return h.is_constant() || h.constant_term() != 0; };
  for (int attempt = 0; attempt < 6 && eliminants.size() < 3 && !clears_origin(g); ++attempt) {
    MultiPoly H = Fv + F.derivative(bidx[0]) * sampler.next(3) + F.derivative(bidx[1]) * sampler.next(3);
    MultiPoly r = resultant_in(F, H, v).in_ring(base);
    if (r.is_zero()) continue;
    g = poly_gcd(g, r);
    eliminants.push_back(std::move(r));
  }
  if (clears_origin(g)) {
    out.status = Isolation::Isolated;
    return out;
  }
  out.note = "possible curve of singular points over " + primitive_normalized(g).str();
  return out;
}

struct TangentConeAnalysis {
  ProjectivePlaneCurve curve;
  SingularPointSearch singular;
  IsolationCheck isolation;
  std::optional<ProjectiveLine> line;
  std::vector<std::size_t> line_points;  ///< indices into singular.points
  std::uint64_t milnor_sum = 0;
  unsigned required = 0;  ///< 1 + deg - deg_red
  Verdict verdict;
};

/// Fast loops from reduced singular points of the projectivized tangent cone lying on one non-tangent
/// line with sum of Milnor numbers >= 1 + deg - deg_red. Smooth cones give no opinion.
inline TangentConeAnalysis analyze_tangent_cone(const MultiPoly& F, std::uint64_t seed = 1, bool assume_isolated = false) {
  const std::string source = "tangent_cone";
  TangentConeAnalysis out;
  out.curve = proj_tangent_cone(F);
  const auto& C = out.curve;
  if (C.degree < 2) {
    out.verdict = Verdict::undetermined(source, "the germ is smooth");
    return out;
  }
  if (assume_isolated) {
    out.isolation.status = Isolation::Isolated;
    out.isolation.note = "asserted";
  } else {
    out.isolation = check_isolated(F, seed);
    if (out.isolation.status != Isolation::Isolated) {
      out.verdict = Verdict::undetermined(source, "isolated singularity not certified: " + out.isolation.note);
      return out;
    }
  }
  out.singular = rational_singular_points(C);
  out.required = 1 + C.degree - C.reduced_degree;
  const auto& pts = out.singular.points;

  std::vector<ProjectiveLine> candidates;
  RationalSampler sampler(seed);
  for (const auto& rec : pts) {
    if (!rec.reduced_at_point) continue;
    for (int draw = 0; draw < 3; ++draw) {
      auto L = ProjectiveLine::through(rec.point, {sampler.next(), sampler.next(), sampler.next()});
      if (L) candidates.push_back(*L);
    }
  }
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      if (pts[a].reduced_at_point && pts[b].reduced_at_point)
        candidates.push_back(*ProjectiveLine::through(pts[a].point, pts[b].point.c));

  for (const auto& L : candidates) {
    std::vector<std::size_t> on;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i].reduced_at_point && L.contains(pts[i].point)) {
        on.push_back(i);
        sum += pts[i].milnor.value_or(0);
      }
    if (sum < out.required || !is_non_tangent(C, L)) continue;
    out.line = L;
    out.line_points = on;
    out.milnor_sum = sum;
    std::string where;
    for (auto i : on) where += (where.empty() ? "" : ", ") + pts[i].point.str();
    out.verdict = Verdict::fast_loop(source,
                                     "non-tangent line " + L.str(C.form.vars()) + " through reduced singular points " + where +
                                         " with sum of Milnor numbers " + std::to_string(sum) +
                                         " >= " + std::to_string(out.required),
                                     1);
    return out;
  }
  if (C.squarefree && out.singular.nonrational_points) {
    out.verdict = Verdict::fast_loop(
        source, "reduced tangent cone with singular points of irrational coordinates; a generic line through one is non-tangent", 1);
    return out;
  }
  if (C.squarefree && pts.empty() && out.singular.complete) {
    out.verdict = Verdict::undetermined(source, "the projectivized tangent cone is smooth; no obstruction");
    return out;
  }
  std::string why = C.squarefree ? "no verified non-tangent line through a singular point"
                                 : "no non-tangent line carries reduced singular points with sum of Milnor numbers >= " +
                                       std::to_string(out.required);
  if (!out.singular.complete) why += " (singular point search incomplete)";
  out.verdict = Verdict::undetermined(source, why);
  return out;
}

inline Verdict tc_criterion(const MultiPoly& F, std::uint64_t seed = 1) { return analyze_tangent_cone(F, seed).verdict; }

}  // namespace fastloop
