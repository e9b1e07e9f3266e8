#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastloop/poly.hpp"
#include "fastloop/roots.hpp"

namespace fastloop {

/// Permutation of {0..n-1}: sheet i at the start of a loop ends as sheet image(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> image) : img_(std::move(image)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
      if (v >= img_.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
      seen[v] = true;
    }
  }
  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
  }
  /// Permutation from 1-based disjoint cycles, e.g. {{1,2},{3,4}}.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    for (const auto& c : cycles)
      for (std::size_t k = 0; k < c.size(); ++k) v[c[k] - 1] = c[(k + 1) % c.size()] - 1;
    return Permutation(std::move(v));
  }

  std::size_t size() const { return img_.size(); }
  std::size_t operator()(std::size_t i) const { return img_.at(i); }
  const std::vector<std::size_t>& image() const { return img_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }
  /// (this o first): apply `first`, then this.
  Permutation after(const Permutation& first) const {
    if (first.size() != size()) throw std::invalid_argument("Permutation: size mismatch");
    std::vector<std::size_t> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = img_[first.img_[i]];
    return Permutation(std::move(v));
  }
  Permutation inverse() const {
    std::vector<std::size_t> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[img_[i]] = i;
    return Permutation(std::move(v));
  }
  /// Cycle lengths in decreasing order (fixed points included).
  std::vector<std::size_t> cycle_type() const {
    std::vector<std::size_t> out;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
  }
  /// 1-based cycle notation, fixed points omitted; "()" for the identity.
  std::string str() const {
    std::string s;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      s += "(";
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        if (j != i) s += " ";
        s += std::to_string(j + 1);
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> img_;
};

/// Number of orbits of the subgroup generated by `perms` acting on {0..p-1}.
inline std::size_t orbit_count(const std::vector<Permutation>& perms, std::size_t p) {
  std::vector<std::size_t> parent(p);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::size_t orbits = p;
  for (const auto& g : perms) {
    if (g.size() != p) throw std::invalid_argument("orbit_count: permutation of the wrong size");
    for (std::size_t i = 0; i < p; ++i) {
      std::size_t a = find(i), b = find(g(i));
      if (a != b) {
        parent[a] = b;
        --orbits;
      }
    }
  }
  return orbits;
}

/// Polynomial in (y, z) with complex coefficients: coeffs[k] is the coefficient of z^k, a
/// polynomial in y.
template <class R>
struct FiberFamily {
  std::vector<CPoly<R>> coeffs;

  static FiberFamily from_poly(const MultiPoly& g, std::size_t yvar, std::size_t zvar) {
    FiberFamily fam;
    fam.coeffs.assign(g.degree_in(zvar) + 1, CPoly<R>(g.degree_in(yvar) + 1));
    for (const auto& [e, c] : g.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != yvar && i != zvar && e[i]) throw std::invalid_argument("FiberFamily: extra variables");
      fam.coeffs[e[zvar]][e[yvar]] += cplx_from<R>(c);
    }
    return fam;
  }
  std::size_t degree() const { return coeffs.size() - 1; }
  /// Fiber polynomial at y and its y-derivative, both as polynomials in z.
  std::pair<CPoly<R>, CPoly<R>> at(const Cplx<R>& y) const {
    CPoly<R> p(coeffs.size()), dp(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) std::tie(p[k], dp[k]) = horner2(coeffs[k], y);
    return {p, dp};
  }
};

/// Closed or open polyline in the y-plane.
template <class R>
using Path = std::vector<Cplx<R>>;

/// Vertices of the regular polygon inscribed in the circle |y - center| = radius, starting at
/// `start` (on the circle) and running counterclockwise back to it.
template <class R>
Path<R> circle_polygon(const Cplx<R>& center, const Cplx<R>& start, int sides = 24) {
  Path<R> out{start};
  Cplx<R> rot = Cplx<R>::polar(R(1), 2 * pi<R>() / R(sides));
  Cplx<R> w = start - center;
  for (int k = 1; k < sides; ++k) {
    w = w * rot;
    out.push_back(center + w);
  }
  out.push_back(start);
  return out;
}

struct TrackStats {
  std::size_t steps = 0;
  std::size_t rejections = 0;
  double min_separation = 1e300;
};

class TrackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrackerOptions {
  int max_step_halvings = 40;
  double collision_factor = 4;  ///< accepted steps keep min root distance above this times the motion
};

namespace detail {

// Smallest squared distance between two entries (1 for fewer than two).
template <class R>
R min_pairwise_sq(const std::vector<Cplx<R>>& z) {
  R m(-1);
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      R d = norm(z[i] - z[j]);
      if (m < 0 || d < m) m = d;
    }
  return m < 0 ? R(1) : m;
}

template <class R>
R min_pairwise(const std::vector<Cplx<R>>& z) {
  using std::sqrt;
  return sqrt(min_pairwise_sq(z));
}

template <class R>
bool newton_refine(const CPoly<R>& p, Cplx<R>& z, const R& tol_sq) {
  for (int it = 0; it < 16; ++it) {
    auto [v, d] = horner2(p, z);
    R dn = norm(d);
    if (dn == 0) return false;
    Cplx<R> dz = v * conj(d) / dn;
    z -= dz;
    if (norm(dz) <= tol_sq * std::max(R(1), norm(z))) return true;
  }
  return false;
}

}  // namespace detail

/// Analytic continuation of all roots of z -> G(y, z) along a polyline by Euler prediction and
/// Newton correction with step halving on near-collisions.
template <class R>
std::vector<Cplx<R>> track_roots(const FiberFamily<R>& fam, const Path<R>& path, std::vector<Cplx<R>> z,
                                 TrackStats& stats, const TrackerOptions& opt = {}) {
  const R tol_sq = pow2<R>(-static_cast<int>(RealTraits<R>::bits * 3 / 2));
  const R factor_sq(opt.collision_factor * opt.collision_factor);
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const Cplx<R> ya = path[seg], dy = path[seg + 1] - path[seg];
    R s(0), h = R(1) / 2;
    int halvings = 0;
    R sep0 = detail::min_pairwise_sq(z);
    while (s < 1) {
      if (s + h > 1) h = R(1) - s;
      auto [p0, py0] = fam.at(ya + dy * s);
      CPoly<R> dp0(p0.size() > 1 ? p0.size() - 1 : 1);
      for (std::size_t k = 1; k < p0.size(); ++k) dp0[k - 1] = p0[k] * R(static_cast<long>(k));
      R s1 = s + h;
      auto p1 = fam.at(ya + dy * s1).first;
      std::vector<Cplx<R>> next(z.size());
      bool ok = true;
      R motion(0);
      for (std::size_t i = 0; i < z.size() && ok; ++i) {
        Cplx<R> gz = horner(dp0, z[i]);
        R gn = norm(gz);
        if (gn == 0) {
          ok = false;
          break;
        }
        Cplx<R> dzds = -(horner(py0, z[i]) * dy * conj(gz)) / gn;
        next[i] = z[i] + dzds * h;
        if (!detail::newton_refine(p1, next[i], tol_sq)) ok = false;
        motion = std::max(motion, norm(next[i] - z[i]));
      }
      R sep = ok ? detail::min_pairwise_sq(next) : R(0);
      if (ok && sep > factor_sq * motion && sep0 > factor_sq * motion) {
        z = std::move(next);
        s = s1;
        sep0 = sep;
        ++stats.steps;
        stats.min_separation = std::min(stats.min_separation, std::sqrt(to_double(sep)));
        halvings = 0;
        h = std::min(h * 2, R(1) / 2);
      } else {
        ++stats.rejections;
        h /= 2;
        if (++halvings > opt.max_step_halvings) throw TrackingError("root collision not resolved at minimal step");
      }
    }
  }
  return z;
}

/// Index map from the end roots of a closed loop back to the start roots.
template <class R>
Permutation match_roots(const std::vector<Cplx<R>>& start, const std::vector<Cplx<R>>& end) {
  const R sep = detail::min_pairwise(start);
  std::vector<std::size_t> img(start.size());
  std::vector<bool> used(start.size(), false);
  for (std::size_t i = 0; i < end.size(); ++i) {
    std::size_t best = 0;
    R bd(-1);
    for (std::size_t j = 0; j < start.size(); ++j) {
      R d = abs(end[i] - start[j]);
      if (bd < 0 || d < bd) {
        bd = d;
        best = j;
      }
    }
    if (used[best] || bd * 4 > sep) throw TrackingError("loop endpoints do not match the start fiber");
    used[best] = true;
    img[i] = best;
  }
  return Permutation(std::move(img));
}

/// A small counterclockwise loop around `center` reached from `base` by a straight segment.
template <class R>
struct LoopSpec {
  Cplx<R> center;
  R radius;
  Cplx<R> base;

  Path<R> path() const {
    Cplx<R> dir = base - center;
    R len = abs(dir);
    if (len <= radius) throw std::invalid_argument("LoopSpec: base point inside the loop");
    Cplx<R> touch = center + dir * (radius / len);
    Path<R> out{base};
    for (const auto& v : circle_polygon(center, touch)) out.push_back(v);
    out.push_back(base);
    return out;
  }
};

template <class R>
Permutation loop_permutation(const FiberFamily<R>& fam, const LoopSpec<R>& loop, const std::vector<Cplx<R>>& start,
                             TrackStats& stats, const TrackerOptions& opt = {}) {
  auto end = track_roots(fam, loop.path(), start, stats, opt);
  return match_roots(start, end);
}

struct MonodromyResult {
  std::vector<Permutation> loops;         ///< on the selected sheets, in spider order
  std::optional<Permutation> boundary;    ///< loop around the whole disk
  std::size_t orbits = 0;
  bool boundary_consistent = false;       ///< boundary equals the ordered product of the loops
  TrackStats stats;
  std::vector<std::string> diagnostics;
};

struct SpiderOptions {
  TrackerOptions tracker;
  std::size_t base_choice = 0;  ///< rank of the base-point candidate (0 = best separated)
  int candidates = 32;
};

/// Monodromy of the `sheets` smallest roots of z -> G(y, z) around the points `ramification`
/// inside the disk |y - center| < radius. The base point lies on the circle of radius
/// `base_radius`, which must separate the points from the disk boundary.
template <class R>
MonodromyResult spider_monodromy(const FiberFamily<R>& fam, const std::vector<Cplx<R>>& ramification,
                                 const Cplx<R>& center, const R& radius, const R& base_radius, std::size_t sheets,
                                 const SpiderOptions& opt = {}) {
  MonodromyResult res;
  if (!(base_radius < radius)) throw std::invalid_argument("spider_monodromy: base circle leaves the disk");
  const std::size_t n = ramification.size();
  const R twopi = 2 * pi<R>();
  // candidate base points ranked by the smallest angle between connecting segments
  std::vector<std::pair<R, Cplx<R>>> cands;
  for (int c = 0; c < opt.candidates; ++c) {
    R ang = twopi * R(c) / R(opt.candidates) + R(1) / 7;
    Cplx<R> b = center + Cplx<R>::polar(base_radius, ang);
    std::vector<R> dirs;
    for (const auto& s : ramification) dirs.push_back(arg(s - b));
    std::sort(dirs.begin(), dirs.end());
    R gap = twopi;
    for (std::size_t k = 0; k + 1 < dirs.size(); ++k) gap = std::min(gap, dirs[k + 1] - dirs[k]);
    cands.emplace_back(gap, b);
  }
  std::stable_sort(cands.begin(), cands.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  const Cplx<R> base = cands.at(std::min<std::size_t>(opt.base_choice, cands.size() - 1)).second;

  // loop radii: clear of other points, of other segments and of the base circle
  std::vector<R> radii(n);
  for (std::size_t j = 0; j < n; ++j) {
    R m = base_radius - abs(ramification[j] - center);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      m = std::min(m, abs(ramification[k] - ramification[j]));
      // distance from point j to segment base -> point k
      Cplx<R> d = ramification[k] - base, w = ramification[j] - base;
      R t = (w.re * d.re + w.im * d.im) / norm(d);
      t = std::clamp(t, R(0), R(1));
      m = std::min(m, abs(w - d * t));
    }
    radii[j] = m * R(2) / 5;
    if (!(radii[j] > 0)) throw TrackingError("ramification points are not separated");
  }
  // order loops by the direction of their segments, clockwise from the outward normal at the base
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const R inward = arg(center - base);
  auto rel = [&](std::size_t j) {
    R a = arg(ramification[j] - base) - inward;
    while (a > pi<R>()) a -= twopi;
    while (a <= -pi<R>()) a += twopi;
    return a;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return rel(l) < rel(r); });

  auto [p0, unused] = fam.at(base);
  (void)unused;
  std::vector<Cplx<R>> start = poly_roots(p0);
  std::sort(start.begin(), start.end(), [](const Cplx<R>& a, const Cplx<R>& b) { return abs(a) < abs(b); });
  const std::size_t D = start.size();
  if (sheets > D) throw TrackingError("fewer fiber roots than sheets");
  if (sheets < D && !(abs(start[sheets - 1]) * 4 < abs(start[sheets])))
    res.diagnostics.push_back("sheet roots are not well separated from the remaining roots");

  auto restrict_to_sheets = [&](const Permutation& full) {
    std::vector<std::size_t> img(sheets);
    for (std::size_t i = 0; i < sheets; ++i) {
      if (full(i) >= sheets) throw TrackingError("continuation mixes sheets with distant roots");
      img[i] = full(i);
    }
    return Permutation(std::move(img));
  };
  for (std::size_t j : order) {
    LoopSpec<R> loop{ramification[j], radii[j], base};
    res.loops.push_back(restrict_to_sheets(loop_permutation(fam, loop, start, res.stats, opt.tracker)));
  }
  res.orbits = orbit_count(res.loops, sheets);
  Path<R> big = circle_polygon(center, base);
  res.boundary = restrict_to_sheets(match_roots(start, track_roots(fam, big, start, res.stats, opt.tracker)));
  Permutation prod = Permutation::identity(sheets);
  for (const auto& g : res.loops) prod = g.after(prod);
  res.boundary_consistent = prod == *res.boundary;
  if (!res.boundary_consistent) res.diagnostics.push_back("boundary loop differs from the ordered product of the small loops");
  if (orbit_count({*res.boundary}, sheets) < res.orbits)
    res.diagnostics.push_back("boundary loop connects sheets that the small loops do not");
  return res;
}

}  // namespace fastloop
