#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fastloop/numeric.hpp"

namespace fastloop {

template <class R>
using CPoly = std::vector<Cplx<R>>;  ///< coefficients from low to high degree

class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class R>
Cplx<R> horner(const CPoly<R>& a, const Cplx<R>& z) {
  Cplx<R> s;
  for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * z + *it;
  return s;
}

/// Value and first derivative.
template <class R>
std::pair<Cplx<R>, Cplx<R>> horner2(const CPoly<R>& a, const Cplx<R>& z) {
  Cplx<R> p, d;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    d = d * z + p;
    p = p * z + *it;
  }
  return {p, d};
}

namespace detail {

// Initial approximations on circles whose radii come from the upper convex hull of
// (i, log|a_i|), so roots of very different magnitudes start near their own scale.
template <class R>
std::vector<Cplx<R>> initial_guesses(const CPoly<R>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<double> lg(a.size());
  const double neg_inf = -1e300;
  for (int i = 0; i <= n; ++i) {
    R m = abs(a[i]);
    lg[i] = m == 0 ? neg_inf : to_double(log(m));
  }
  std::vector<int> hull;
  for (int i = 0; i <= n; ++i) {
    if (lg[i] == neg_inf) continue;
    while (hull.size() >= 2) {
      int p = hull[hull.size() - 2], q = hull.back();
      // drop q if it lies on or below segment p -> i
      double cross = (q - p) * (lg[i] - lg[p]) - (i - p) * (lg[q] - lg[p]);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<Cplx<R>> z;
  const double tau = 6.283185307179586;
  int placed = 0;
  // roots equal to zero (a_0 = 0 ...) get tiny starting values
  for (int i = 0; i < hull.front(); ++i, ++placed) z.push_back(Cplx<R>::polar(R(1e-30), R(0.7 + i)));
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    int i = hull[h], j = hull[h + 1];
    double logr = (lg[i] - lg[j]) / (j - i);
    R r = exp(R(logr));
    for (int k = 0; k < j - i; ++k, ++placed) {
      double ang = tau * k / (j - i) + tau * h / n + 0.4;
      z.push_back(Cplx<R>::polar(r, R(ang)));
    }
  }
  return z;
}

}  // namespace detail

struct RootOptions {
  int max_iterations = 0;  ///< 0 selects a cap from the precision
};

/// All complex roots of a (counted with multiplicity) by Aberth-Ehrlich iteration.
template <class R>
std::vector<Cplx<R>> poly_roots(CPoly<R> a, RootOptions opt = {}) {
  while (!a.empty() && a.back() == Cplx<R>()) a.pop_back();
  if (a.empty()) throw RootFindingError("roots of the zero polynomial");
  if (a.size() == 1) return {};
  // normalize to monic and split off exact zero roots
  Cplx<R> lead = a.back();
  for (auto& c : a) c = c / lead;
  std::size_t zeros = 0;
  while (a[zeros] == Cplx<R>()) ++zeros;
  std::vector<Cplx<R>> zero_roots(zeros);
  a.erase(a.begin(), a.begin() + static_cast<long>(zeros));
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 0) return zero_roots;
  if (n == 1) {
    zero_roots.push_back(-a[0]);
    return zero_roots;
  }
  std::vector<Cplx<R>> z = detail::initial_guesses(a);
  const unsigned bits = RealTraits<R>::bits;
  const R eps = pow2<R>(-static_cast<int>(bits) + 4);
  const int cap = opt.max_iterations > 0 ? opt.max_iterations : static_cast<int>(std::max(200u, 6 * bits));
  std::vector<bool> done(n, false);
  bool converged = false;
  for (int it = 0; it < cap && !converged; ++it) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      auto [p, d] = horner2(a, z[i]);
      if (p == Cplx<R>()) {
        done[i] = true;
        continue;
      }
      Cplx<R> ratio = p / (d == Cplx<R>() ? Cplx<R>(eps) : d);
      Cplx<R> sum;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Cplx<R> diff = z[i] - z[j];
        if (diff == Cplx<R>()) diff = Cplx<R>(eps);
        sum += Cplx<R>(R(1)) / diff;
      }
      Cplx<R> denom = Cplx<R>(R(1)) - ratio * sum;
      Cplx<R> w = denom == Cplx<R>() ? ratio : ratio / denom;
      z[i] -= w;
      if (abs(w) <= eps * abs(z[i]))
        done[i] = true;
      else
        converged = false;
    }
  }
  z.insert(z.end(), zero_roots.begin(), zero_roots.end());
  if (converged) return z;
  // Multiple roots converge linearly and may stall above eps; accept on small backward error.
  const R tol = pow2<R>(-static_cast<int>(bits) / 2);
  a.insert(a.begin(), zeros, Cplx<R>());
  for (const auto& zi : z) {
    R mag(0), az = abs(zi), pw(1);
    for (const auto& c : a) {
      mag += abs(c) * pw;
      pw *= az;
    }
    if (!is_finite(zi) || abs(horner(a, zi)) > tol * mag)
      throw RootFindingError("root iteration did not converge");
  }
  return z;
}

template <class R>
std::vector<Cplx<R>> poly_roots_rational(const std::vector<Rational>& coeffs) {
  CPoly<R> a;
  for (const auto& c : coeffs) a.push_back(cplx_from<R>(c));
  return poly_roots(std::move(a));
}

/// Roots grouped into clusters by single linkage at distance `tol`.
template <class R>
struct RootClusters {
  std::vector<std::vector<std::size_t>> members;
  std::vector<Cplx<R>> centers;
  bool ambiguous = false;  ///< some pair lies between tol and 10*tol apart
};

template <class R>
RootClusters<R> cluster_roots(const std::vector<Cplx<R>>& z, const R& tol) {
  const std::size_t n = z.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  RootClusters<R> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      R d = abs(z[i] - z[j]);
      if (d <= tol) parent[find(i)] = find(j);
    }
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.members.size());
      out.members.emplace_back();
    }
    out.members[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  for (const auto& m : out.members) {
    Cplx<R> c;
    for (auto i : m) c += z[i];
    out.centers.push_back(c / R(static_cast<long>(m.size())));
  }
  for (std::size_t a = 0; a < out.centers.size(); ++a)
    for (std::size_t b = a + 1; b < out.centers.size(); ++b)
      for (auto i : out.members[a])
        for (auto j : out.members[b])
          if (abs(z[i] - z[j]) <= 10 * tol) out.ambiguous = true;
  return out;
}

}  // namespace fastloop
