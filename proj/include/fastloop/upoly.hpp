#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastloop/poly.hpp"

namespace fastloop {

/// Dense univariate polynomial over Q, coefficients from low to high degree, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const Rational& a) { return UPoly(std::vector<Rational>{a}); }
  static UPoly x_power(unsigned k, const Rational& a = 1) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = a;
    return UPoly(std::move(c));
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lc() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    Rational inv = 1 / lc();
    for (auto& a : r.c_) a *= inv;
    return r;
  }

  /// Primitive integer scaling with positive leading coefficient.
  UPoly primitive() const {
    if (is_zero()) return *this;
    Integer l = 1, g = 0;
    for (const auto& a : c_) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_num_mpz_t());
    }
    Rational s(l, g);
    s.canonicalize();
    if (lc() < 0) s = -s;
    UPoly r = *this;
    for (auto& a : r.c_) a *= s;
    return r;
  }

  UPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return UPoly(std::move(d));
  }

  Rational eval(const Rational& x) const {
    Rational s = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
    return s;
  }
  template <class S, class Conv>
  S evaluate(const S& x, Conv conv) const {
    S s(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + conv(*it);
    return s;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const Rational& k, const UPoly& a) { return UPoly::constant(k) * a; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly pow(unsigned n) const {
    UPoly r = constant(1);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// Quotient and remainder.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<Rational> r = a.c_, q(a.c_.size() - b.c_.size() + 1, Rational(0));
    Rational inv = 1 / b.lc();
    for (std::size_t k = q.size(); k-- > 0;) {
      Rational t = r[k + b.c_.size() - 1] * inv;
      q[k] = t;
      if (t == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] -= t * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }

  /// Monic gcd; gcd(0,0) = 0.
  friend UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  MultiPoly to_multi(const VarList& vars, std::size_t v) const {
    MultiPoly p(vars);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      Exponent e(vars.size(), 0);
      e[v] = static_cast<unsigned>(i);
      p.add_term(e, c_[i]);
    }
    return p;
  }
  /// Reads a polynomial that involves only variable v.
  static UPoly from_multi(const MultiPoly& f, std::size_t v) {
    std::vector<Rational> c(f.degree_in(v) + 1, Rational(0));
    for (const auto& [e, a] : f.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != v && e[i]) throw std::invalid_argument("from_multi: polynomial involves other variables");
      c[e[v]] += a;
    }
    return UPoly(std::move(c));
  }

  std::string str(const std::string& var = "t") const { return to_multi({var}, 0).str(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Yun's square-free decomposition: f = lc * prod a_i^i with a_i monic, square-free, pairwise coprime.
/// Returns (a_i, i) for nonconstant a_i.
inline std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, unsigned>> out;
  if (f.degree() <= 0) return out;
  UPoly fm = f.monic();
  UPoly a = gcd(fm, fm.derivative());
  UPoly b = fm / a;
  UPoly c = fm.derivative() / a;
  UPoly d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    UPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
  }
  return out;
}

inline UPoly squarefree_part(const UPoly& f) {
  if (f.degree() <= 0) return UPoly::constant(1);
  return (f / gcd(f, f.derivative())).monic();
}

}  // namespace fastloop
