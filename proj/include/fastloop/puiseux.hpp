#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastloop/curve.hpp"
#include "fastloop/factor.hpp"
#include "fastloop/roots.hpp"

namespace fastloop {

/// Algebraic number given as a root of a rational polynomial; `root_index` counts roots sorted by
/// real part, then imaginary part.
struct AlgebraicNumber {
  UPoly defining;
  std::size_t root_index = 0;
};

template <class R>
struct PuiseuxTerm {
  Rational exponent;
  Cplx<R> coefficient;
};

/// One complex branch w = sum c_k u^{exponent_k} in the coordinates (u, w) of `frame`
/// (f_frame(u, w) = f(a*u + b*w, c*u + d*w)). The second frame variable is regular, so the branch
/// multiplicity equals the ramification index.
template <class R>
struct PuiseuxBranch {
  LinearFrame frame;
  unsigned ramification = 1;
  std::vector<PuiseuxTerm<R>> terms;       ///< increasing exponents, nonzero coefficients
  std::optional<AlgebraicNumber> leading;  ///< exact data of the first coefficient when known
  unsigned multiplicity = 1;
  Cplx<R> tangent_slope;  ///< tangent line w = slope * u
  unsigned depth = 0;     ///< truncation depth in u
};

class PuiseuxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Roots of a rational polynomial at precision R, in the canonical order used by AlgebraicNumber.
template <class R>
std::vector<Cplx<R>> sorted_roots(const UPoly& p) {
  auto z = poly_roots_rational<R>(p.coeffs());
  std::sort(z.begin(), z.end(), [](const Cplx<R>& a, const Cplx<R>& b) {
    double ar = to_double(a.re), br = to_double(b.re);
    if (std::abs(ar - br) > 1e-9 * (1 + std::abs(ar))) return ar < br;
    return to_double(a.im) < to_double(b.im);
  });
  return z;
}

// Bivariate data sum_j Y^j cols[j](X) with magnitude bounds used for zero tests.
template <class R>
struct BiSeries {
  std::vector<CPoly<R>> cols;
  std::vector<std::vector<R>> mag;
};

template <class R>
struct PuiseuxContext {
  unsigned depth = 0;
  R theta;
  bool exhausted = false;
  std::size_t term_budget = 400000;
};

template <class R>
bool negligible(const Cplx<R>& c, const R& m, const R& theta) {
  return abs(c) <= theta * m;
}

// Lowest X-order of column j that is not numerically zero, or -1 if the column vanishes.
template <class R>
long column_order(const BiSeries<R>& g, std::size_t j, const R& theta) {
  const auto& col = g.cols[j];
  for (std::size_t i = 0; i < col.size(); ++i)
    if (!negligible(col[i], g.mag[j][i], theta)) return static_cast<long>(i);
  return -1;
}

// G1(X1, Y1) = X1^{-v} G(X1^b, X1^a (c + Y1)).
template <class R>
BiSeries<R> substitute_edge(const BiSeries<R>& g, unsigned a, unsigned b, unsigned v, const Cplx<R>& c,
                            std::size_t& budget) {
  const std::size_t J = g.cols.size();
  std::vector<Cplx<R>> cpow(J);
  std::vector<R> cabs(J);
  cpow[0] = Cplx<R>(R(1));
  for (std::size_t k = 1; k < J; ++k) cpow[k] = cpow[k - 1] * c;
  for (std::size_t k = 0; k < J; ++k) cabs[k] = abs(cpow[k]);
  std::size_t maxdeg = 0;
  for (std::size_t j = 0; j < J; ++j)
    if (!g.cols[j].empty() && b * (g.cols[j].size() - 1) + a * j >= v)
      maxdeg = std::max<std::size_t>(maxdeg, b * (g.cols[j].size() - 1) + a * j - v);
  BiSeries<R> out;
  out.cols.assign(J, CPoly<R>(maxdeg + 1));
  out.mag.assign(J, std::vector<R>(maxdeg + 1, R(0)));
  if (J * (maxdeg + 1) > budget) throw PuiseuxError("Puiseux expansion exceeds the term budget");
  budget -= J * (maxdeg + 1);
  // binomial coefficients row by row
  std::vector<std::vector<R>> binom(J);
  for (std::size_t j = 0; j < J; ++j) {
    binom[j].assign(j + 1, R(1));
    for (std::size_t k = 1; k < j; ++k) binom[j][k] = binom[j - 1][k - 1] + binom[j - 1][k];
  }
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t i = 0; i < g.cols[j].size(); ++i) {
      const Cplx<R>& gij = g.cols[j][i];
      const R& mij = g.mag[j][i];
      if (mij == 0) continue;
      // entries below the edge are rounding noise that the polygon already treated as zero
      if (b * i + a * j < v) continue;
      std::size_t deg = b * i + a * j - v;
      for (std::size_t k = 0; k <= j; ++k) {
        out.cols[k][deg] += gij * cpow[j - k] * binom[j][k];
        out.mag[k][deg] += mij * cabs[j - k] * binom[j][k];
      }
    }
  }
  while (out.cols.size() > 1 && std::all_of(out.mag.back().begin(), out.mag.back().end(), [](const R& m) { return m == 0; })) {
    out.cols.pop_back();
    out.mag.pop_back();
  }
  return out;
}

template <class R>
CPoly<R> series_mul(const CPoly<R>& a, const CPoly<R>& b, std::size_t n) {
  CPoly<R> c(n);
  for (std::size_t i = 0; i < std::min(a.size(), n); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

template <class R>
CPoly<R> series_div(const CPoly<R>& a, const CPoly<R>& b, std::size_t n) {
  CPoly<R> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    Cplx<R> s = k < a.size() ? a[k] : Cplx<R>();
    for (std::size_t j = 1; j <= k && j < b.size(); ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return q;
}

// The unique root Y(X) with Y(0) = 0 of G when dG/dY(0,0) != 0, to X-order n-1.
template <class R>
CPoly<R> simple_root_series(const BiSeries<R>& g, std::size_t n) {
  CPoly<R> y(n);
  if (n <= 1) return y;
  unsigned iters = 2;
  for (std::size_t k = 1; k < n; k *= 2) ++iters;
  for (unsigned it = 0; it < iters; ++it) {
    CPoly<R> val(n), der(n);
    for (std::size_t j = g.cols.size(); j-- > 0;) {
      der = series_mul(der, y, n);
      for (std::size_t i = 0; i < n; ++i) der[i] += val[i];
      val = series_mul(val, y, n);
      for (std::size_t i = 0; i < std::min(n, g.cols[j].size()); ++i) val[i] += g.cols[j][i];
    }
    CPoly<R> delta = series_div(val, der, n);
    for (std::size_t i = 0; i < n; ++i) y[i] -= delta[i];
  }
  return y;
}

template <class R>
struct PuiseuxNode {
  BiSeries<R> g;
  unsigned r = 0;
  unsigned ram = 1;
  Rational offset = 0;
  std::vector<PuiseuxTerm<R>> prefix;
  std::optional<AlgebraicNumber> leading;
};

template <class R>
void emit_branch(const PuiseuxNode<R>& node, std::vector<PuiseuxBranch<R>>& out) {
  PuiseuxBranch<R> br;
  br.ramification = node.ram;
  br.multiplicity = node.ram;
  br.terms = node.prefix;
  br.leading = node.leading;
  out.push_back(std::move(br));
}

template <class R>
void expand_node(PuiseuxNode<R> node, PuiseuxContext<R>& ctx, const MultiPoly* exact,
                 std::vector<PuiseuxBranch<R>>& out) {
  const R& theta = ctx.theta;
  // Y divides G: the branch Y = 0
  if (column_order(node.g, 0, theta) < 0) {
    if (node.g.cols.size() > 1 && column_order(node.g, 1, theta) < 0)
      throw PuiseuxError("repeated branch: curve is not square-free");
    emit_branch(node, out);
    node.g.cols.erase(node.g.cols.begin());
    node.g.mag.erase(node.g.mag.begin());
    if (--node.r == 0) return;
    if (exact) {
      MultiPoly rest = divide_exact(*exact, MultiPoly::variable(exact->vars(), 1));
      expand_node(std::move(node), ctx, &rest, out);
      return;
    }
  }
  if (node.r == 1) {
    if (column_order(node.g, 1, theta) != 0) throw PuiseuxError("inconsistent simple root in Puiseux node");
    Rational remaining = Rational(ctx.depth) - node.offset;
    Rational kq = remaining * node.ram;
    long K = 0;
    if (kq > 0) {
      Integer cl = kq.get_num() / kq.get_den();
      if (cl * kq.get_den() != kq.get_num()) cl += 1;
      K = cl.get_si();
    }
    CPoly<R> y = simple_root_series(node.g, static_cast<std::size_t>(K + 1));
    R scale(1);
    for (const auto& c : y) scale = std::max(scale, abs(c));
    PuiseuxNode<R> leaf = node;
    for (long k = 1; k <= K; ++k) {
      if (abs(y[static_cast<std::size_t>(k)]) <= theta * scale) continue;
      Rational ex = node.offset + Rational(k, node.ram);
      ex.canonicalize();
      leaf.prefix.push_back({ex, y[static_cast<std::size_t>(k)]});
    }
    emit_branch(leaf, out);
    return;
  }
  // lower Newton polygon over columns 0..r
  std::vector<std::pair<long, long>> pts;  // (j, i)
  for (unsigned j = 0; j <= node.r && j < node.g.cols.size(); ++j) {
    long i = column_order(node.g, j, theta);
    if (i >= 0) pts.emplace_back(j, i);
  }
  if (pts.empty() || pts.front().first != 0 || pts.back().first != static_cast<long>(node.r) || pts.back().second != 0)
    throw PuiseuxError("degenerate Newton polygon");
  std::vector<std::pair<long, long>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      auto [j1, i1] = hull[hull.size() - 2];
      auto [j2, i2] = hull.back();
      // drop middle point if it lies on or above the segment to p
      if ((i2 - i1) * (p.first - j1) >= (p.second - i1) * (j2 - j1))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    auto [j1, i1] = hull[h];
    auto [j2, i2] = hull[h + 1];
    long num = i1 - i2, den = j2 - j1;
    long gg = std::gcd(num, den);
    unsigned a = static_cast<unsigned>(num / gg), b = static_cast<unsigned>(den / gg);
    unsigned v = static_cast<unsigned>(b * i1 + a * j1);
    Rational child_offset = node.offset + Rational(static_cast<long>(a), static_cast<long>(b) * node.ram);
    child_offset.canonicalize();
    if (child_offset > ctx.depth) {
      ctx.exhausted = true;
      return;
    }
    const std::size_t qdeg = static_cast<std::size_t>(den / b);
    CPoly<R> q(qdeg + 1);
    for (std::size_t k = 0; k <= qdeg; ++k) q[k] = node.g.cols[j1 + k * b][i1 - k * a];

    struct Choice {
      Cplx<R> c;
      unsigned mult;
      std::optional<AlgebraicNumber> exact;
    };
    std::vector<Choice> choices;
    if (exact) {
      // exact edge polynomial: factor over Q and take every root of each factor
      std::vector<Rational> qc(qdeg + 1);
      for (std::size_t k = 0; k <= qdeg; ++k)
        qc[k] = exact->coeff(Exponent{static_cast<unsigned>(i1 - static_cast<long>(k * a)),
                                      static_cast<unsigned>(j1 + static_cast<long>(k * b))});
      UFactorization fz = factor_univariate(UPoly(qc));
      for (const auto& fac : fz.factors) {
        std::vector<Rational> lifted(static_cast<std::size_t>(fac.poly.degree()) * b + 1, Rational(0));
        for (int k = 0; k <= fac.poly.degree(); ++k) lifted[static_cast<std::size_t>(k) * b] = fac.poly[k];
        UPoly cpoly(lifted);
        auto uroots = sorted_roots<R>(fac.poly);
        auto croots = sorted_roots<R>(cpoly);
        for (const auto& u : uroots) {
          // one b-th root of u, identified inside the roots of fac(X^b)
          Cplx<R> c0 = nth_root(u, b, 0);
          std::size_t best = 0;
          R bestd = abs(croots[0] - c0);
          for (std::size_t s = 1; s < croots.size(); ++s) {
            R d = abs(croots[s] - c0);
            if (d < bestd) {
              bestd = d;
              best = s;
            }
          }
          choices.push_back({croots[best], fac.multiplicity, AlgebraicNumber{cpoly, best}});
        }
      }
    } else {
      auto z = poly_roots(q);
      R scale(0);
      for (const auto& zi : z) scale = std::max(scale, abs(zi));
      R tol = pow2<R>(-static_cast<int>(RealTraits<R>::bits / (2 * qdeg))) * std::max(R(1), scale);
      auto cl = cluster_roots(z, tol);
      if (cl.ambiguous) throw PuiseuxError("ambiguous root clusters in a Puiseux edge polynomial");
      for (std::size_t s = 0; s < cl.centers.size(); ++s)
        choices.push_back({nth_root(cl.centers[s], b, 0), static_cast<unsigned>(cl.members[s].size()), std::nullopt});
    }
    for (const auto& ch : choices) {
      PuiseuxNode<R> child;
      child.g = substitute_edge(node.g, a, b, v, ch.c, ctx.term_budget);
      child.r = ch.mult;
      child.ram = node.ram * b;
      child.offset = child_offset;
      child.prefix = node.prefix;
      child.prefix.push_back({child_offset, ch.c});
      child.leading = exact ? ch.exact : node.leading;
      for (unsigned j = 0; j < child.r && j < child.g.cols.size(); ++j)
        if (!child.g.cols[j].empty() && !negligible(child.g.cols[j][0], child.g.mag[j][0], theta))
          throw PuiseuxError("root multiplicity in a Puiseux edge polynomial is inconsistent");
      expand_node(std::move(child), ctx, nullptr, out);
      if (ctx.exhausted) return;
    }
  }
}

template <class R>
BiSeries<R> to_biseries(const MultiPoly& f) {
  BiSeries<R> g;
  const std::size_t J = f.degree_in(1) + 1, I = f.degree_in(0) + 1;
  g.cols.assign(J, CPoly<R>(I));
  g.mag.assign(J, std::vector<R>(I, R(0)));
  for (const auto& [e, c] : f.terms()) {
    g.cols[e[1]][e[0]] = cplx_from<R>(c);
    g.mag[e[1]][e[0]] = abs(g.cols[e[1]][e[0]]);
  }
  return g;
}

}  // namespace detail

/// Branches of a square-free plane curve germ, truncated at exponent `depth` in the first frame
/// variable (0 selects 2*mult). The depth doubles while branches are not yet separated, up to 64.
template <class R>
std::vector<PuiseuxBranch<R>> newton_puiseux(const PlaneCurveGerm& germ, unsigned depth = 0,
                                             std::optional<LinearFrame> frame = std::nullopt) {
  LinearFrame fr = frame ? *frame : regular_frame(germ.poly());
  MultiPoly f = fr.apply(germ.poly());
  if (!is_second_variable_regular(f)) throw std::invalid_argument("newton_puiseux: frame is not regular");
  const unsigned mult = germ.multiplicity();
  unsigned d = depth ? depth : 2 * mult;
  constexpr unsigned kDepthCap = 64;
  for (;;) {
    detail::PuiseuxContext<R> ctx;
    ctx.depth = d;
    ctx.theta = pow2<R>(-static_cast<int>(RealTraits<R>::bits / 2));
    detail::PuiseuxNode<R> root;
    root.g = detail::to_biseries<R>(f);
    root.r = mult;
    std::vector<PuiseuxBranch<R>> out;
    detail::expand_node(std::move(root), ctx, &f, out);
    if (!ctx.exhausted) {
      unsigned total = 0;
      for (auto& br : out) {
        br.frame = fr;
        br.depth = d;
        if (!br.terms.empty() && br.terms.front().exponent == 1) br.tangent_slope = br.terms.front().coefficient;
        total += br.multiplicity;
      }
      if (total != mult) throw PuiseuxError("branch multiplicities do not add up to the multiplicity");
      return out;
    }
    if (d >= kDepthCap) throw PuiseuxError("branches not separated at the maximal depth " + std::to_string(kDepthCap));
    d = std::min(2 * d, kDepthCap);
  }
}

/// Order in the branch parameter t (u = t^e) of f_frame(t^e, w(t)), where w is the truncated
/// expansion. Numerically zero coefficients are skipped; `limit` bounds the computed order.
template <class R>
unsigned residual_order(const MultiPoly& f, const PuiseuxBranch<R>& br, unsigned limit) {
  MultiPoly g = br.frame.apply(f);
  const unsigned e = br.ramification;
  const std::size_t n = limit + 1;
  CPoly<R> w(n);
  for (const auto& t : br.terms) {
    Rational k = t.exponent * e;
    if (k.get_den() != 1) throw std::logic_error("Puiseux exponent with a denominator not dividing e");
    std::size_t idx = k.get_num().get_ui();
    if (idx < n) w[idx] = t.coefficient;
  }
  // magnitudes of w for the zero test
  CPoly<R> wabs(n);
  for (std::size_t i = 0; i < n; ++i) wabs[i] = Cplx<R>(abs(w[i]));
  const std::size_t J = g.degree_in(1) + 1;
  std::vector<CPoly<R>> wp(J, CPoly<R>(n)), wpa(J, CPoly<R>(n));
  wp[0][0] = wpa[0][0] = Cplx<R>(R(1));
  for (std::size_t j = 1; j < J; ++j) {
    wp[j] = detail::series_mul(wp[j - 1], w, n);
    wpa[j] = detail::series_mul(wpa[j - 1], wabs, n);
  }
  CPoly<R> val(n);
  std::vector<R> mag(n, R(0));
  for (const auto& [ex, c] : g.terms()) {
    std::size_t shift = static_cast<std::size_t>(ex[0]) * e;
    Cplx<R> cc = cplx_from<R>(c);
    R ca = abs(cc);
    for (std::size_t i = 0; i + shift < n; ++i) {
      val[i + shift] += cc * wp[ex[1]][i];
      mag[i + shift] += ca * wpa[ex[1]][i].re;
    }
  }
  const R theta = pow2<R>(-static_cast<int>(RealTraits<R>::bits / 2));
  for (std::size_t i = 0; i < n; ++i)
    if (abs(val[i]) > theta * std::max(mag[i], R(1))) return static_cast<unsigned>(i);
  return limit + 1;
}

/// Tangential component of the reduced germ: one complex tangent line with its branches.
template <class R>
struct TangentialComponent {
  MultiPoly tangent;                 ///< Q-irreducible factor of the lowest form, original coordinates
  unsigned block_degree = 1;         ///< degree of that factor (number of conjugate lines)
  unsigned conjugate_index = 0;      ///< which root of the factor, in canonical root order
  LinearFrame frame;                 ///< coordinates of the slope and the branches
  Cplx<R> slope;                     ///< the line w = slope * u in frame coordinates
  unsigned multiplicity = 0;         ///< mult(component)
  std::vector<PuiseuxBranch<R>> branches;
};

namespace detail {

template <class R>
std::size_t nearest_index(const std::vector<Cplx<R>>& pts, const Cplx<R>& z) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (abs(pts[i] - z) < abs(pts[best] - z)) best = i;
  return best;
}

}  // namespace detail

/// Components of the reduced germ grouped by complex tangent line, in a frame where the second
/// variable is regular; conjugate lines of one Q-irreducible factor become separate components.
template <class R>
std::vector<TangentialComponent<R>> tangential_decomposition(const PlaneCurveGerm& germ,
                                                             std::optional<LinearFrame> frame = std::nullopt) {
  PlaneCurveGerm red = germ.reduced();
  LinearFrame fr = frame ? *frame : regular_frame(red.poly());
  MultiPoly g = fr.apply(red.poly());
  BinaryFactorization lines = factor_binary_form(g.lowest_form());
  std::vector<TangentialComponent<R>> comps;
  std::vector<Cplx<R>> slopes;
  const LinearFrame back = fr.inverse();
  for (const auto& fac : lines.factors) {
    // h(1, w) has full degree because the second variable is regular
    UPoly hw = UPoly::from_multi(fac.form.substitute(0, Rational(1)), 1);
    auto roots = detail::sorted_roots<R>(hw);
    MultiPoly orig = primitive_normalized(back.apply(fac.form));
    for (std::size_t k = 0; k < roots.size(); ++k) {
      TangentialComponent<R> c;
      c.tangent = orig;
      c.block_degree = static_cast<unsigned>(roots.size());
      c.conjugate_index = static_cast<unsigned>(k);
      c.frame = fr;
      c.slope = roots[k];
      c.multiplicity = fac.multiplicity;
      comps.push_back(std::move(c));
      slopes.push_back(roots[k]);
    }
  }
  for (auto& br : newton_puiseux<R>(red, 0, fr)) comps[detail::nearest_index(slopes, br.tangent_slope)].branches.push_back(br);
  for (const auto& c : comps) {
    unsigned s = 0;
    for (const auto& br : c.branches) s += br.multiplicity;
    if (s != c.multiplicity) throw PuiseuxError("branches do not match the tangent-line multiplicity");
  }
  return comps;
}

}  // namespace fastloop
