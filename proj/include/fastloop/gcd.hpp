#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fastloop/poly.hpp"

namespace fastloop {

/// Scales f to an integer polynomial with coprime coefficients and positive lex-leading coefficient.
inline MultiPoly primitive_normalized(const MultiPoly& f) {
  if (f.is_zero()) return f;
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& [e, c] : f.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (f.leading_term().second < 0) scale = -scale;
  return f * scale;
}

/// Scales f so its lex-leading coefficient is 1.
inline MultiPoly monic_normalized(const MultiPoly& f) {
  if (f.is_zero()) return f;
  return f * Rational(1 / f.leading_term().second);
}

/// Exact quotient f/g if g divides f in Q[vars], otherwise nullopt.
inline std::optional<MultiPoly> try_divide(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  if (f.vars() != g.vars()) {
    if (g.nvars() == 0) return f * Rational(1 / g.constant_term());
    throw std::invalid_argument("division across rings");
  }
  const auto& [ge, gc] = g.leading_term();
  MultiPoly q(f.vars()), r = f;
  Exponent t(f.nvars());
  while (!r.is_zero()) {
    const auto& [re, rc] = r.leading_term();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (re[i] < ge[i]) return std::nullopt;
      t[i] = re[i] - ge[i];
    }
    Rational c = rc / gc;
    q.add_term(t, c);
    for (const auto& [e, gcoef] : g.terms()) {
      Exponent s(e.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = e[i] + t[i];
      r.add_term(s, -c * gcoef);
    }
  }
  return q;
}

inline MultiPoly divide_exact(const MultiPoly& f, const MultiPoly& g) {
  auto q = try_divide(f, g);
  if (!q) throw std::logic_error("inexact polynomial division");
  return std::move(*q);
}

inline bool divides(const MultiPoly& g, const MultiPoly& f) { return f.is_zero() || try_divide(f, g).has_value(); }

/// Pseudo-remainder of a by b with respect to variable v.
inline MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  unsigned db = b.degree_in(v);
  MultiPoly lb = b.coefficient_of(v, db);
  MultiPoly r = a;
  while (!r.is_zero() && r.involves(v) && r.degree_in(v) >= db) {
    unsigned dr = r.degree_in(v);
    MultiPoly lr = r.coefficient_of(v, dr);
    Exponent sh(a.nvars(), 0);
    sh[v] = dr - db;
    r = lb * r - lr * MultiPoly::monomial(a.vars(), sh, 1) * b;
  }
  if (db == 0) return MultiPoly(a.vars());
  return r;
}

inline MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g);

namespace detail {

// Univariate restriction to variable v with the other variables set to small integers.
inline std::vector<Rational> specialize_to(const MultiPoly& f, std::size_t v, const std::vector<Rational>& point) {
  std::vector<Rational> c(f.degree_in(v) + 1, Rational(0));
  for (const auto& [e, a] : f.terms()) {
    Rational t = a;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != v)
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    c[e[v]] += t;
  }
  return c;
}

inline int univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  auto trim = [](std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    Rational inv = 1 / b.back();
    while (a.size() >= b.size()) {
      Rational t = a.back() * inv;
      std::size_t sh = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[sh + j] -= t * b[j];
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// True when a specialization of the other variables proves that a and b (primitive in v, both of
// positive degree in v) have no common factor of positive degree in v.
inline bool coprime_by_specialization(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  const unsigned da = a.degree_in(v), db = b.degree_in(v);
  static const long values[] = {2, -3, 5, 7, -11, 13, 17, -19};
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<Rational> point(a.nvars(), Rational(0));
    for (std::size_t i = 0; i < point.size(); ++i) point[i] = values[(i + 3 * attempt) % 8] + attempt;
    auto ua = specialize_to(a, v, point), ub = specialize_to(b, v, point);
    if (ua.back() == 0 || ub.back() == 0 || ua.size() != da + 1 || ub.size() != db + 1) continue;
    return univariate_gcd_degree(std::move(ua), std::move(ub)) == 0;
  }
  return false;
}

}  // namespace detail

/// gcd of the coefficients of f viewed as a polynomial in v.
inline MultiPoly content_in(const MultiPoly& f, std::size_t v) {
  MultiPoly c(f.vars());
  for (const auto& coef : f.coefficients_in(v)) {
    if (coef.is_zero()) continue;
    c = poly_gcd(c, coef);
    if (c.is_constant()) return MultiPoly::constant(f.vars(), 1);
  }
  return c;
}

inline MultiPoly primitive_part_in(const MultiPoly& f, std::size_t v) {
  if (f.is_zero()) return f;
  return primitive_normalized(divide_exact(f, content_in(f, v)));
}

/// Greatest common divisor over Q, normalized by primitive_normalized; gcd(0,0) = 0.
inline MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g) {
  if (f.vars() != g.vars()) throw std::invalid_argument("gcd across rings");
  if (f.is_zero()) return primitive_normalized(g);
  if (g.is_zero()) return primitive_normalized(f);
  MultiPoly one = MultiPoly::constant(f.vars(), 1);
  if (f.is_constant() || g.is_constant()) return one;
  std::size_t v = f.nvars();
  for (std::size_t i = f.nvars(); i-- > 0;) {
    if (f.involves(i) || g.involves(i)) {
      v = i;
      break;
    }
  }
  if (!f.involves(v)) return poly_gcd(f, content_in(g, v));
  if (!g.involves(v)) return poly_gcd(content_in(f, v), g);
  MultiPoly cf = content_in(f, v), cg = content_in(g, v);
  MultiPoly a = primitive_normalized(divide_exact(f, cf));
  MultiPoly b = primitive_normalized(divide_exact(g, cg));
  MultiPoly c = poly_gcd(cf, cg);
  if (detail::coprime_by_specialization(a, b, v)) return primitive_normalized(c);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  MultiPoly result = one;
  for (;;) {
    MultiPoly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) {
      result = b;
      break;
    }
    if (!r.involves(v)) break;
    a = std::move(b);
    b = primitive_part_in(r, v);
  }
  return primitive_normalized(c * primitive_part_in(result, v));
}

inline MultiPoly poly_gcd(const std::vector<MultiPoly>& fs) {
  if (fs.empty()) throw std::invalid_argument("gcd of empty list");
  MultiPoly g(fs.front().vars());
  for (const auto& f : fs) {
    g = poly_gcd(g, f);
    if (!g.is_zero() && g.is_constant()) break;
  }
  return g;
}

/// Product of the distinct irreducible factors of f, normalized.
inline MultiPoly squarefree_part(const MultiPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_part of the zero polynomial");
  if (f.is_constant()) return MultiPoly::constant(f.vars(), 1);
  MultiPoly g = f;
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    if (!f.involves(v)) continue;
    g = poly_gcd(g, f.derivative(v));
    if (g.is_constant()) break;
  }
  return primitive_normalized(divide_exact(f, g));
}

inline bool is_squarefree(const MultiPoly& f) {
  return squarefree_part(f) == primitive_normalized(f);
}

}  // namespace fastloop
