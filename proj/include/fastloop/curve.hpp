#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastloop/factor.hpp"
#include "fastloop/gcd.hpp"

namespace fastloop {

/// Plane curve germ at the origin given by a polynomial in exactly two variables.
class PlaneCurveGerm {
 public:
  explicit PlaneCurveGerm(MultiPoly f) : f_(std::move(f)) {
    if (f_.nvars() != 2) throw std::invalid_argument("plane curve germ needs exactly two variables");
    if (f_.is_zero()) throw std::invalid_argument("plane curve germ: zero polynomial");
    if (f_.constant_term() != 0) throw std::invalid_argument("plane curve germ does not pass through the origin");
    order_ = static_cast<unsigned>(f_.order().value());
    lowest_ = f_.lowest_form();
  }

  const MultiPoly& poly() const { return f_; }
  const VarList& vars() const { return f_.vars(); }
  unsigned multiplicity() const { return order_; }
  const MultiPoly& lowest_form() const { return lowest_; }

  PlaneCurveGerm reduced() const { return PlaneCurveGerm(squarefree_part(f_)); }

 private:
  MultiPoly f_;
  unsigned order_ = 0;
  MultiPoly lowest_;
};

namespace detail {

inline bool vanishes_at_origin(const MultiPoly& f) { return f.constant_term() == 0; }

// Restriction to the first axis (second variable = 0) as a univariate polynomial.
inline UPoly on_first_axis(const MultiPoly& f) { return UPoly::from_multi(f.substitute(1, Rational(0)), 0); }

inline unsigned lowest_power(const UPoly& u) {
  unsigned k = 0;
  while (u[k] == 0) ++k;
  return k;
}

}  // namespace detail

/// Local intersection number at the origin (Fulton's algorithm); infinite iff f and g share a
/// component through the origin.
inline ExtNat intersection_multiplicity(const MultiPoly& f0, const MultiPoly& g0) {
  if (f0.nvars() != 2 || f0.vars() != g0.vars()) throw std::invalid_argument("intersection_multiplicity needs two plane curves");
  if (f0.is_zero() || g0.is_zero()) {
    MultiPoly other = f0.is_zero() ? g0 : f0;
    return other.constant_term() == 0 ? ExtNat::infinity() : ExtNat(0);
  }
  if (!detail::vanishes_at_origin(f0) || !detail::vanishes_at_origin(g0)) return 0;
  MultiPoly h = poly_gcd(f0, g0);
  if (!h.is_constant() && h.constant_term() == 0) return ExtNat::infinity();
  MultiPoly f = f0, g = g0;
  const MultiPoly y = MultiPoly::variable(f.vars(), 1);
  std::uint64_t acc = 0;
  for (;;) {
    if (!detail::vanishes_at_origin(f) || !detail::vanishes_at_origin(g)) return acc;
    UPoly fx = detail::on_first_axis(f), gx = detail::on_first_axis(g);
    if (fx.is_zero() && gx.is_zero()) throw std::logic_error("intersection_multiplicity: common component survived");
    if (gx.is_zero()) {
      std::swap(f, g);
      std::swap(fx, gx);
    }
    if (fx.is_zero()) {
      // f = y * f1: I(f, g) = I(y, g) + I(f1, g), and I(y, g) = ord_x g(x, 0)
      acc += detail::lowest_power(gx);
      f = divide_exact(f, y);
      continue;
    }
    if (fx.degree() > gx.degree()) {
      std::swap(f, g);
      std::swap(fx, gx);
    }
    Exponent sh{static_cast<unsigned>(gx.degree() - fx.degree()), 0};
    g = primitive_normalized(g * fx.lc() - f * MultiPoly::monomial(f.vars(), sh, gx.lc()));
  }
}

inline ExtNat intersection_multiplicity(const PlaneCurveGerm& f, const PlaneCurveGerm& g) {
  return intersection_multiplicity(f.poly(), g.poly());
}

/// f(x + lambda*y, y): shear in the first variable.
inline MultiPoly shear(const MultiPoly& f, const Rational& lambda) {
  const auto& v = f.vars();
  MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1);
  return f.compose({x + y * lambda, y});
}

/// Exchange of the two variables (names stay in place).
inline MultiPoly swap_variables(const MultiPoly& f) {
  const auto& v = f.vars();
  return f.compose({MultiPoly::variable(v, 1), MultiPoly::variable(v, 0)});
}

/// True iff the second coordinate axis is not tangent to f at the origin.
inline bool is_second_variable_regular(const MultiPoly& f) {
  MultiPoly lf = f.lowest_form();
  unsigned d = static_cast<unsigned>(lf.total_degree());
  return lf.coeff(Exponent{0, d}) != 0;
}

/// Linear change of two coordinates: the new polynomial is f(a*u + b*w, c*u + d*w), where u and w
/// replace the variables at positions `first` and `second`.
struct LinearFrame {
  Rational a = 1, b = 0, c = 0, d = 1;

  static LinearFrame identity() { return {}; }
  static LinearFrame swap() { return {0, 1, 1, 0}; }
  static LinearFrame shear(const Rational& lambda) { return {1, lambda, 0, 1}; }

  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  Rational det() const { return a * d - b * c; }
  LinearFrame inverse() const {
    Rational k = det();
    if (k == 0) throw std::domain_error("singular coordinate change");
    return {d / k, -b / k, -c / k, a / k};
  }
  /// Frame that applies `inner` first and then this one: f -> (f o this) o inner.
  LinearFrame then(const LinearFrame& inner) const {
    return {a * inner.a + b * inner.c, a * inner.b + b * inner.d, c * inner.a + d * inner.c, c * inner.b + d * inner.d};
  }
  MultiPoly apply(const MultiPoly& f, std::size_t first = 0, std::size_t second = 1) const {
    const auto& v = f.vars();
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < v.size(); ++i) images.push_back(MultiPoly::variable(v, i));
    MultiPoly u = MultiPoly::variable(v, first), w = MultiPoly::variable(v, second);
    images[first] = u * a + w * b;
    images[second] = u * c + w * d;
    return f.compose(images);
  }
  std::string str() const {
    return "[" + to_string(a) + " " + to_string(b) + "; " + to_string(c) + " " + to_string(d) + "]";
  }
};

/// A frame in which the second variable is regular for f (identity, swap, then small shears).
inline LinearFrame regular_frame(const MultiPoly& f) {
  if (is_second_variable_regular(f)) return LinearFrame::identity();
  if (is_second_variable_regular(LinearFrame::swap().apply(f))) return LinearFrame::swap();
  for (long h = 1; h < 64; ++h) {
    for (long sign : {1L, -1L}) {
      for (const Rational& lam : {Rational(sign * h), Rational(sign, h + 1)}) {
        LinearFrame fr = LinearFrame::shear(lam);
        if (is_second_variable_regular(fr.apply(f))) return fr;
      }
    }
  }
  throw std::runtime_error("no regular coordinate frame found");
}

struct CurveInvariants {
  unsigned multiplicity = 0;
  std::optional<std::uint64_t> milnor;  ///< present for reduced germs
  std::uint64_t kappa = 0;
  bool is_ordinary = false;
  std::vector<Rational> shears;  ///< the generic shears that were accepted
};

/// Deterministic small-height random rationals for generic coordinate choices.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}
  Rational next(long height = 7) {
    std::uniform_int_distribution<long> num(-height, height), den(1, height);
    for (;;) {
      Rational q(num(rng_), den(rng_));
      q.canonicalize();
      if (q != 0) return q;
    }
  }

 private:
  std::mt19937_64 rng_;
};

inline bool is_ordinary_multiple_point(const MultiPoly& f) {
  MultiPoly g = squarefree_part(f);
  if (g.is_constant()) return true;
  MultiPoly lf = g.lowest_form();
  return is_squarefree(lf) && static_cast<unsigned>(lf.total_degree()) == g.order().value();
}
inline bool is_ordinary_multiple_point(const PlaneCurveGerm& f) { return is_ordinary_multiple_point(f.poly()); }

/// kappa = i(f, df/dy) in generic coordinates; mu = kappa - mult + 1. Two independent random shears must
/// give the same finite kappa.
inline CurveInvariants milnor_kappa(const PlaneCurveGerm& germ, std::uint64_t seed = 1) {
  const MultiPoly& f = germ.poly();
  if (!is_squarefree(f)) throw std::invalid_argument("milnor_kappa needs a square-free germ");
  CurveInvariants out;
  out.multiplicity = germ.multiplicity();
  out.is_ordinary = is_ordinary_multiple_point(f);
  RationalSampler sampler(seed);
  std::optional<std::uint64_t> first;
  for (int attempt = 0; attempt < 24; ++attempt) {
    Rational lambda = sampler.next();
    MultiPoly g = shear(f, lambda);
    if (!is_second_variable_regular(g)) continue;
    ExtNat k = intersection_multiplicity(g, g.derivative(1));
    if (k.is_infinite()) continue;
    if (!first) {
      first = k.value();
      out.shears.push_back(lambda);
      continue;
    }
    if (k.value() != *first) throw std::runtime_error("milnor_kappa: generic shears disagree");
    out.shears.push_back(lambda);
    out.kappa = *first;
    out.milnor = out.kappa + 1 - out.multiplicity;
    return out;
  }
  throw std::runtime_error("milnor_kappa: no generic shear found");
}

/// Tangent lines of the reduced germ: Q-irreducible factors of its lowest form with multiplicities.
inline BinaryFactorization tangent_lines(const PlaneCurveGerm& germ) {
  return factor_binary_form(squarefree_part(germ.poly()).lowest_form());
}

}  // namespace fastloop
