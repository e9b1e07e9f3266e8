#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastloop/curve.hpp"
#include "fastloop/monodromy.hpp"
#include "fastloop/puiseux.hpp"
#include "fastloop/resultant.hpp"

namespace fastloop {

class InvalidGerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hypersurface X = V(F) with the projection forgetting the fiber variable z. F restricted to the
/// fiber axis is z^p times a unit; the Weierstrass case is F monic of degree p in z.
class SurfaceGerm {
 public:
  SurfaceGerm(MultiPoly F, const std::string& fiber) : F_(std::move(F)) {
    auto zi = F_.find_var(fiber);
    if (!zi) throw InvalidGerm("fiber variable '" + fiber + "' is not declared");
    z_ = *zi;
    for (std::size_t i = 0; i < F_.nvars(); ++i)
      if (i != z_) base_.push_back(i);
    if (base_.empty()) throw InvalidGerm("no base variables");
    if (F_.is_zero() || F_.constant_term() != 0) throw InvalidGerm("the germ does not pass through the origin");
    MultiPoly axis = F_;
    for (auto b : base_) axis = axis.substitute(b, Rational(0));
    if (axis.is_zero()) throw InvalidGerm("the fiber axis lies on X; the projection is not finite");
    p_ = axis.min_degree_in(z_);
    const unsigned D = F_.degree_in(z_);
    if (axis.degree_in(z_) != D)
      throw InvalidGerm("leading coefficient in " + fiber + " vanishes at the origin; the projection is not finite");
    // normalize a constant leading coefficient to 1
    MultiPoly lc = F_.leading_coefficient_in(z_);
    if (lc.is_constant()) F_ = F_ * (1 / lc.constant_term());
    weierstrass_ = lc.is_constant() && D == p_;
  }

  const MultiPoly& poly() const { return F_; }
  std::size_t fiber_index() const { return z_; }
  const std::string& fiber_name() const { return F_.vars()[z_]; }
  const std::vector<std::size_t>& base_indices() const { return base_; }
  VarList base_vars() const {
    VarList v;
    for (auto b : base_) v.push_back(F_.vars()[b]);
    return v;
  }
  std::size_t base_dim() const { return base_.size(); }
  unsigned p() const { return p_; }
  unsigned fiber_degree() const { return F_.degree_in(z_); }
  bool is_weierstrass() const { return weierstrass_; }
  /// Coefficient of z^j as a polynomial in the base variables.
  MultiPoly coefficient(unsigned j) const { return F_.coefficient_of(z_, j).in_ring(base_vars()); }

 private:
  MultiPoly F_;
  std::size_t z_ = 0;
  std::vector<std::size_t> base_;
  unsigned p_ = 0;
  bool weierstrass_ = false;
};

struct ConvenienceReport {
  bool convenient = true;
  std::string diagnostic;  ///< names the first violating coefficient
};

namespace detail {

inline std::string subscript(unsigned j) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string d = std::to_string(j), out;
  for (char c : d) out += digits[c - '0'];
  return out;
}

}  // namespace detail

/// ord(a_j) >= p - j for every j < p, i.e. z^p occurs in the lowest form of F.
inline ConvenienceReport check_convenient(const SurfaceGerm& X) {
  ConvenienceReport rep;
  const unsigned p = X.p();
  for (unsigned j = 0; j < p; ++j) {
    MultiPoly a = X.coefficient(j);
    if (a.is_zero()) continue;
    std::uint64_t ord = a.order().value();
    if (ord < p - j) {
      rep.convenient = false;
      rep.diagnostic = "ord(a" + detail::subscript(j) + ")=" + std::to_string(ord) + " < " + std::to_string(p - j);
      return rep;
    }
  }
  return rep;
}

struct Discriminant {
  MultiPoly full;     ///< Res_z(F, dF/dz) in the base ring, up to a rational constant
  MultiPoly reduced;  ///< square-free part
};

inline Discriminant discriminant(const SurfaceGerm& X) {
  const MultiPoly& F = X.poly();
  if (X.fiber_degree() < 2) {
    MultiPoly one = MultiPoly::constant(X.base_vars(), 1);
    return {one, one};
  }
  MultiPoly res = resultant_in(F, F.derivative(X.fiber_index()), X.fiber_index()).in_ring(X.base_vars());
  if (res.is_zero()) throw InvalidGerm("discriminant vanishes identically: F has a repeated factor in the fiber variable");
  res = primitive_normalized(res);
  return {res, squarefree_part(res)};
}

/// Parts of the reduced discriminant by ramification: part j collects the branches over which the
/// fiber has exactly p - j distinct points (j >= 1). Parts that are units near the origin are dropped.
inline std::vector<std::pair<unsigned, MultiPoly>> ramification_parts(const SurfaceGerm& X, const MultiPoly& reduced) {
  std::vector<std::pair<unsigned, MultiPoly>> out;
  const MultiPoly& F = X.poly();
  const auto z = X.fiber_index();
  auto psc = principal_subresultants(F, F.derivative(z), z);
  MultiPoly h = reduced;
  for (unsigned j = 1; !h.is_constant(); ++j) {
    MultiPoly next = j < psc.size() ? poly_gcd(h, psc[j].in_ring(X.base_vars())) : MultiPoly::constant(h.vars(), 1);
    MultiPoly part = divide_exact(h, next);
    if (!part.is_constant() && part.constant_term() == 0) out.emplace_back(j, primitive_normalized(part));
    h = next;
  }
  return out;
}

/// q = p - #(distinct fiber points) at an exact base point.
inline unsigned fiber_ramification(const SurfaceGerm& X, const std::vector<Rational>& point) {
  MultiPoly g = X.poly();
  const auto& b = X.base_indices();
  if (point.size() != b.size()) throw std::invalid_argument("fiber_ramification: wrong point dimension");
  for (std::size_t i = 0; i < b.size(); ++i) g = g.substitute(b[i], point[i]);
  UPoly u = UPoly::from_multi(g, X.fiber_index());
  return static_cast<unsigned>(gcd(u, u.derivative()).degree());
}

/// q = p - #(distinct small fiber points) at a numeric base point; nullopt on ambiguous clusters.
/// Roots closer than rel_tol * sheet_scale count as one point.
template <class R>
std::optional<unsigned> fiber_ramification(const FiberFamily<R>& fam, const Cplx<R>& y, unsigned p, const R& rel_tol,
                                           const R& sheet_scale) {
  auto roots = poly_roots(fam.at(y).first);
  std::sort(roots.begin(), roots.end(), [](const Cplx<R>& a, const Cplx<R>& b) { return norm(a) < norm(b); });
  roots.resize(p);
  R scale = sheet_scale;
  for (const auto& z : roots) scale = std::max(scale, abs(z));
  auto cl = cluster_roots(roots, rel_tol * scale);
  if (cl.ambiguous) return std::nullopt;
  return p - static_cast<unsigned>(cl.centers.size());
}

struct BranchData {
  unsigned mult = 1;
  unsigned q = 0;
  std::string leading;  ///< first Puiseux term, for reports
};

struct ComponentData {
  MultiPoly tangent;  ///< Q-irreducible factor of the lowest form of the reduced discriminant
  unsigned block_degree = 1;
  unsigned conjugate_index = 0;
  double slope_re = 0, slope_im = 0;  ///< tangent slope in the working frame
  unsigned mult = 0;
  std::vector<BranchData> branches;
  unsigned sum_q_mult = 0;
  std::optional<unsigned> section_sum;  ///< sum over section points of (p - #fiber)
  std::optional<unsigned> r;
  bool boundary_consistent = false;
  std::vector<std::string> diagnostics;

  bool smooth() const { return mult == 1; }
  std::string tangent_label() const {
    std::string s = tangent.str();
    if (block_degree > 1) s += " [" + std::to_string(conjugate_index + 1) + "/" + std::to_string(block_degree) + "]";
    return s;
  }
};

struct CoveringOptions {
  unsigned precision = 256;
  std::optional<double> tolerance;  ///< relative tolerance, default 2^-(precision/2)
  std::optional<Rational> t0;
  std::uint64_t seed = 1;
  unsigned max_halvings = 8;
  std::size_t base_choice = 0;  ///< monodromy base-point rank, for invariance checks
};

struct CoveringData {
  unsigned p = 0;
  MultiPoly discriminant;
  MultiPoly reduced;
  LinearFrame frame;
  bool through_origin = true;  ///< false when the discriminant misses the origin
  bool reduced_ordinary = false;
  std::vector<ComponentData> components;
  std::optional<Rational> t0;  ///< section parameter at which the data stabilized
  unsigned halvings = 0;
  bool complete = false;  ///< every component has r and a matching section sum
  std::vector<std::string> diagnostics;
};

namespace detail {

template <class R>
std::string leading_term_text(const PuiseuxBranch<R>& br) {
  if (br.terms.empty()) return "0";
  return "(" + format_cplx(br.terms.front().coefficient, 8) + ")*t^" + to_string(br.terms.front().exponent);
}

// Section data of one component at one value of t0.
struct SectionResult {
  bool ok = false;
  std::vector<unsigned> qs;  // numeric q per section point, sorted
  unsigned section_sum = 0;
  unsigned r = 0;
  bool boundary_consistent = false;
  std::string failure;
  bool operator==(const SectionResult& o) const {
    return ok == o.ok && qs == o.qs && section_sum == o.section_sum && r == o.r;
  }
};

template <class R>
SectionResult section_at(const MultiPoly& F_frame, std::size_t xi, std::size_t yi, std::size_t zi, unsigned p,
                         const std::vector<std::pair<unsigned, MultiPoly>>& parts, const Cplx<R>& slope, const R& rho,
                         unsigned expected, const Rational& t0, const R& rel_tol, const CoveringOptions& opt) {
  SectionResult out;
  const R t = real_from<R>(t0);
  const Cplx<R> center = slope * t;
  const R disk = rho * t;
  std::vector<Cplx<R>> inside;
  std::vector<unsigned> inside_q;
  R outside_min = disk * 2;
  for (const auto& [j, E] : parts) {
    UPoly u = UPoly::from_multi(E.substitute(0, t0), 1);
    if (u.degree() <= 0) continue;
    for (const auto& y : poly_roots_rational<R>(u.coeffs())) {
      R d = abs(y - center);
      if (d < disk) {
        inside.push_back(y);
        inside_q.push_back(j);
      } else {
        outside_min = std::min(outside_min, d);
      }
    }
  }
  if (inside.size() != expected) {
    out.failure = "found " + std::to_string(inside.size()) + " section points, expected " + std::to_string(expected);
    return out;
  }
  R inner(0);
  for (const auto& y : inside) inner = std::max(inner, abs(y - center));
  if (inside.size() > 1 && detail::min_pairwise(inside) < disk * pow2<R>(-static_cast<int>(RealTraits<R>::bits / 4))) {
    out.failure = "section points are not separated";
    return out;
  }
  const R outer = std::min(outside_min, disk);
  const R base_radius = (inner + outer) / 2;
  MultiPoly g = F_frame.substitute(xi, t0);
  auto fam = FiberFamily<R>::from_poly(g, yi, zi);
  for (std::size_t k = 0; k < inside.size(); ++k) {
    auto q = fiber_ramification(fam, inside[k], p, rel_tol, t);
    if (!q) {
      out.failure = "ambiguous fiber clusters at a section point";
      return out;
    }
    if (*q != inside_q[k]) {
      out.failure = "numeric ramification " + std::to_string(*q) + " differs from the exact value " + std::to_string(inside_q[k]);
      return out;
    }
    out.qs.push_back(*q);
    out.section_sum += *q;
  }
  std::sort(out.qs.begin(), out.qs.end());
  try {
    SpiderOptions so;
    so.base_choice = opt.base_choice;
    MonodromyResult mr = spider_monodromy(fam, inside, center, outer, base_radius, p, so);
    out.r = static_cast<unsigned>(mr.orbits);
    out.boundary_consistent = mr.boundary_consistent;
    if (!mr.diagnostics.empty()) {
      out.failure = mr.diagnostics.front();
      return out;
    }
  } catch (const TrackingError& e) {
    out.failure = e.what();
    return out;
  } catch (const RootFindingError& e) {
    out.failure = e.what();
    return out;
  }
  out.ok = true;
  return out;
}

inline Rational initial_t0(double min_separation) {
  Rational t(1, 16);
  while (min_separation < 1 && t > Rational(1, 1 << 20)) {
    t /= 2;
    min_separation *= 2;
  }
  return t;
}

template <class R>
CoveringData covering_data_impl(const SurfaceGerm& X, const CoveringOptions& opt) {
  if (X.base_dim() != 2) throw std::invalid_argument("covering_data needs a two-dimensional base");
  CoveringData cd;
  cd.p = X.p();
  Discriminant disc = discriminant(X);
  cd.discriminant = disc.full;
  cd.reduced = disc.reduced;
  if (cd.reduced.is_constant() || cd.reduced.constant_term() != 0) {
    cd.through_origin = false;
    cd.complete = true;
    return cd;
  }
  cd.reduced_ordinary = is_ordinary_multiple_point(cd.reduced);
  const R rel_tol_base = opt.tolerance ? R(*opt.tolerance) : pow2<R>(-static_cast<int>(RealTraits<R>::bits / 2));
  using std::pow;
  const R fiber_tol = pow(rel_tol_base, R(1) / R(std::max(1u, cd.p)));

  cd.frame = regular_frame(cd.reduced);
  const MultiPoly red = cd.frame.apply(cd.reduced);
  const auto& bidx = X.base_indices();
  const MultiPoly F = cd.frame.apply(X.poly(), bidx[0], bidx[1]);
  auto parts = ramification_parts(X, cd.reduced);
  for (auto& [j, E] : parts) E = cd.frame.apply(E);

  // tangent lines of the reduced discriminant
  BinaryFactorization lines = factor_binary_form(red.lowest_form());
  std::vector<Cplx<R>> slopes;
  const LinearFrame back = cd.frame.inverse();
  for (const auto& fac : lines.factors) {
    UPoly hw = UPoly::from_multi(fac.form.substitute(0, Rational(1)), 1);
    auto roots = detail::sorted_roots<R>(hw);
    MultiPoly orig = primitive_normalized(back.apply(fac.form));
    for (std::size_t k = 0; k < roots.size(); ++k) {
      ComponentData c;
      c.tangent = orig;
      c.block_degree = static_cast<unsigned>(roots.size());
      c.conjugate_index = static_cast<unsigned>(k);
      c.slope_re = to_double(roots[k].re);
      c.slope_im = to_double(roots[k].im);
      c.mult = fac.multiplicity;
      cd.components.push_back(std::move(c));
      slopes.push_back(roots[k]);
    }
  }
  // branches of each ramification part, attached to the nearest tangent line
  for (const auto& [j, E] : parts) {
    for (const auto& br : newton_puiseux<R>(PlaneCurveGerm(E), 0, LinearFrame::identity())) {
      auto& comp = cd.components[detail::nearest_index(slopes, br.tangent_slope)];
      comp.branches.push_back({br.multiplicity, j, leading_term_text(br)});
      comp.sum_q_mult += j * br.multiplicity;
    }
  }
  for (auto& c : cd.components) {
    unsigned s = 0;
    for (const auto& b : c.branches) s += b.mult;
    if (s != c.mult) throw PuiseuxError("branch multiplicities do not match the tangent-line multiplicity");
  }

  // numeric section data with the halving protocol
  R min_sep(2);
  for (std::size_t a = 0; a < slopes.size(); ++a)
    for (std::size_t b = a + 1; b < slopes.size(); ++b) min_sep = std::min(min_sep, abs(slopes[a] - slopes[b]));
  const R rho = slopes.size() > 1 ? min_sep / 2 : R(1);
  Rational t0 = opt.t0 ? *opt.t0 : initial_t0(to_double(min_sep));
  if (t0 <= 0) throw std::invalid_argument("t0 must be positive");
  const std::size_t xi = bidx[0], yi = bidx[1], zi = X.fiber_index();
  std::vector<SectionResult> prev;
  for (unsigned h = 0; h <= opt.max_halvings; ++h) {
    std::vector<SectionResult> now;
    for (std::size_t k = 0; k < cd.components.size(); ++k)
      now.push_back(section_at<R>(F, xi, yi, zi, cd.p, parts, slopes[k], rho, cd.components[k].mult, t0, fiber_tol, opt));
    bool all_ok = std::all_of(now.begin(), now.end(), [](const SectionResult& s) { return s.ok; });
    if (all_ok && !prev.empty() && prev == now) {
      cd.t0 = t0 * 2;
      cd.halvings = h - 1;
      for (std::size_t k = 0; k < now.size(); ++k) {
        auto& c = cd.components[k];
        c.r = now[k].r;
        c.section_sum = now[k].section_sum;
        c.boundary_consistent = now[k].boundary_consistent && prev[k].boundary_consistent;
        if (c.section_sum != c.sum_q_mult) c.diagnostics.push_back("section sum differs from the branch sum");
      }
      cd.complete = std::all_of(cd.components.begin(), cd.components.end(),
                                [](const ComponentData& c) { return c.r && c.section_sum == c.sum_q_mult; });
      return cd;
    }
    for (std::size_t k = 0; k < now.size(); ++k)
      if (!now[k].ok)
        cd.diagnostics.push_back("t0=" + to_string(t0) + ", component " + std::to_string(k) + ": " + now[k].failure);
    prev = all_ok ? now : std::vector<SectionResult>{};
    t0 /= 2;
  }
  cd.diagnostics.push_back("section data did not stabilize within " + std::to_string(opt.max_halvings) + " halvings");
  return cd;
}

}  // namespace detail

/// Covering data of a surface germ over a two-dimensional base, at the configured precision.
inline CoveringData covering_data(const SurfaceGerm& X, const CoveringOptions& opt = {}) {
  switch (effective_precision(opt.precision)) {
    case 53:
      return detail::covering_data_impl<double>(X, opt);
    case 128:
      return detail::covering_data_impl<Real128>(X, opt);
    case 256:
      return detail::covering_data_impl<Real256>(X, opt);
    default:
      return detail::covering_data_impl<Real512>(X, opt);
  }
}

}  // namespace fastloop
