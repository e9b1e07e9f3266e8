#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <type_traits>
#include <stdexcept>
#include <string>

#include "fastloop/rational.hpp"

namespace fastloop {

template <unsigned Bits>
using BinFloat =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
                                  boost::multiprecision::et_off>;

using Real128 = BinFloat<128>;
using Real256 = BinFloat<256>;
using Real512 = BinFloat<512>;

/// Precisions with a compiled numeric backend, in bits of mantissa.
inline constexpr unsigned kSupportedPrecisions[] = {53, 128, 256, 512};

/// Smallest supported precision that is at least `requested` (the largest one if none is).
inline unsigned effective_precision(unsigned requested) {
  for (unsigned b : kSupportedPrecisions)
    if (b >= requested) return b;
  return 512;
}

template <class R>
struct RealTraits;
template <>
struct RealTraits<double> {
  static constexpr unsigned bits = 53;
};
template <unsigned B>
struct RealTraits<BinFloat<B>> {
  static constexpr unsigned bits = B;
};

template <class R>
R real_from(const Integer& z) {
  if (z.fits_slong_p()) return R(z.get_si());
  if constexpr (std::is_same_v<R, double>)
    return z.get_d();
  else
    return R(z.get_str());
}

template <class R>
R real_from(const Rational& q) {
  if constexpr (std::is_same_v<R, double>) {
    return q.get_d();
  } else {
    return real_from<R>(Integer(q.get_num())) / real_from<R>(Integer(q.get_den()));
  }
}

template <class R>
R pi() {
  return boost::math::constants::pi<R>();
}

/// Binary power 2^k as an exact real.
template <class R>
R pow2(int k) {
  using std::ldexp;
  using boost::multiprecision::ldexp;
  return ldexp(R(1), k);
}

template <class R>
double to_double(const R& r) {
  return static_cast<double>(r);
}

/// Complex number over a real type; plain aggregate with value semantics.
template <class R>
struct Cplx {
  R re{0}, im{0};

  Cplx() = default;
  Cplx(R r) : re(std::move(r)) {}  // NOLINT: implicit real embedding is intended
  Cplx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
  Cplx(int r) : re(r) {}  // NOLINT

  static Cplx polar(const R& mod, const R& angle) {
    using std::cos;
    using std::sin;
    return {mod * cos(angle), mod * sin(angle)};
  }

  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cplx& operator*=(const Cplx& o) { return *this = *this * o; }
  Cplx& operator/=(const Cplx& o) { return *this = *this / o; }

  friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
  friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
  friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Cplx operator*(const Cplx& a, const R& k) { return {a.re * k, a.im * k}; }
  friend Cplx operator*(const R& k, const Cplx& a) { return {a.re * k, a.im * k}; }
  friend Cplx operator/(const Cplx& a, const R& k) { return {a.re / k, a.im / k}; }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    R d = b.re * b.re + b.im * b.im;
    if (d == 0) throw std::domain_error("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
};

template <class R>
R norm(const Cplx<R>& z) {
  return z.re * z.re + z.im * z.im;
}
template <class R>
R abs(const Cplx<R>& z) {
  using std::sqrt;
  return sqrt(norm(z));
}
template <class R>
R arg(const Cplx<R>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}
template <class R>
Cplx<R> conj(const Cplx<R>& z) {
  return {z.re, -z.im};
}
template <class R>
Cplx<R> ipow(Cplx<R> z, unsigned n) {
  Cplx<R> r(R(1));
  while (n) {
    if (n & 1u) r = r * z;
    n >>= 1u;
    if (n) z = z * z;
  }
  return r;
}
/// k-th of the n complex n-th roots of z (principal branch for k = 0).
template <class R>
Cplx<R> nth_root(const Cplx<R>& z, unsigned n, unsigned k = 0) {
  using std::pow;
  R m = abs(z);
  if (m == 0) return {};
  R mod = pow(m, R(1) / R(n));
  R ang = (arg(z) + 2 * pi<R>() * R(k)) / R(n);
  return Cplx<R>::polar(mod, ang);
}
template <class R>
bool is_finite(const Cplx<R>& z) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return isfinite(z.re) && isfinite(z.im);
}

template <class R>
Cplx<R> cplx_from(const Rational& q) {
  return Cplx<R>(real_from<R>(q));
}

/// Convenience converter for MultiPoly::evaluate and UPoly::evaluate.
template <class R>
struct RationalToCplx {
  Cplx<R> operator()(const Rational& q) const { return cplx_from<R>(q); }
};

template <class R>
std::string format_cplx(const Cplx<R>& z, int digits = 12) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, to_double(z.re), digits, to_double(z.im));
  return buf;
}

}  // namespace fastloop
