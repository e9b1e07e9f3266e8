#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fastloop/gcd.hpp"
#include "fastloop/upoly.hpp"

namespace fastloop {

namespace detail {

// ---------------------------------------------------------------- arithmetic in F_p[x]
namespace modp {

using Poly = std::vector<std::uint64_t>;

struct Field {
  std::uint64_t p;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a % p == 0) throw std::domain_error("inverse of zero mod p");
    return pow(a, p - 2);
  }
};

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(c);
  return c;
}
inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  trim(c);
  return c;
}
inline std::pair<Poly, Poly> divmod(const Field& F, Poly a, const Poly& b) {
  if (b.empty()) throw std::domain_error("division by zero in F_p[x]");
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  std::uint64_t inv = F.inv(b.back());
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t t = F.mul(a[k + b.size() - 1], inv);
    q[k] = t;
    if (!t) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = F.sub(a[k + j], F.mul(t, b[j]));
  }
  trim(a);
  trim(q);
  return {q, a};
}
inline Poly mod(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }
inline Poly monic(const Field& F, Poly a) {
  if (a.empty()) return a;
  std::uint64_t inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}
inline Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}
/// s*a + t*b = gcd (monic).
inline void ext_gcd(const Field& F, const Poly& a, const Poly& b, Poly& s, Poly& t, Poly& g) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(F, r0, r1);
    Poly s2 = sub(F, s0, mul(F, q, s1)), t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint64_t inv = F.inv(r0.back());
  for (auto& c : r0) c = F.mul(c, inv);
  for (auto& c : s0) c = F.mul(c, inv);
  for (auto& c : t0) c = F.mul(c, inv);
  s = s0;
  t = t0;
  g = r0;
}
inline Poly derivative(const Field& F, const Poly& a) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(F.mul(a[i], i % F.p));
  trim(d);
  return d;
}
/// base^e mod m with an arbitrary-size exponent.
inline Poly powmod(const Field& F, Poly base, const Integer& e, const Poly& m) {
  Poly r{1};
  r = mod(F, r, m);
  base = mod(F, base, m);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mod(F, mul(F, r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(F, mul(F, r, base), m);
  }
  return r;
}

/// Distinct-degree factorization of a monic square-free polynomial.
inline std::vector<std::pair<Poly, unsigned>> distinct_degree(const Field& F, Poly f) {
  std::vector<std::pair<Poly, unsigned>> out;
  Poly x{0, 1}, h = mod(F, x, f);
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(deg(f)); ++d) {
    h = powmod(F, h, Integer(F.p), f);
    Poly g = gcd(F, f, sub(F, h, x));
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      f = divmod(F, f, g).first;
      h = mod(F, h, f);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, static_cast<unsigned>(deg(f)));
  return out;
}

/// Cantor-Zassenhaus equal-degree splitting (odd p).
inline void equal_degree(const Field& F, const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (static_cast<unsigned>(deg(f)) == d) {
    out.push_back(monic(F, f));
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, d);
  e = (e - 1) / 2;
  for (;;) {
    Poly a(static_cast<std::size_t>(deg(f)), 0);
    for (auto& c : a) c = rng() % F.p;
    trim(a);
    if (deg(a) < 1) continue;
    Poly b = powmod(F, a, e, f);
    b = sub(F, b, Poly{1});
    Poly g = gcd(F, f, b);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, divmod(F, f, g).first, d, rng, out);
      return;
    }
  }
}

inline std::vector<Poly> factor_squarefree(const Field& F, const Poly& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Poly> out;
  for (auto& [g, d] : distinct_degree(F, monic(F, f))) equal_degree(F, g, d, rng, out);
  return out;
}

}  // namespace modp

// ---------------------------------------------------------------- integer polynomials mod m
using ZPoly = std::vector<Integer>;

inline void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline ZPoly zmod(ZPoly a, const Integer& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  ztrim(a);
  return a;
}
inline ZPoly zsymmetric(ZPoly a, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}
inline ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  ztrim(c);
  return c;
}
inline ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  ztrim(c);
  return c;
}
inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  ztrim(c);
  return c;
}
/// Division by a monic polynomial modulo m.
inline std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Integer& m) {
  a = zmod(a, m);
  if (a.size() < b.size()) return {{}, a};
  ZPoly q(a.size() - b.size() + 1, Integer(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer t = a[k + b.size() - 1] % m;
    q[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = (a[k + j] - t * b[j]) % m;
  }
  return {zmod(q, m), zmod(a, m)};
}
inline ZPoly from_modp(const modp::Poly& a) {
  ZPoly r;
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}
inline modp::Poly to_modp(const ZPoly& a, std::uint64_t p) {
  modp::Poly r;
  for (const auto& c : a) {
    Integer t = c % Integer(static_cast<unsigned long>(p));
    if (t < 0) t += static_cast<unsigned long>(p);
    r.push_back(t.get_ui());
  }
  modp::trim(r);
  return r;
}

// One quadratic Hensel step: f = g*h mod m, s*g + t*h = 1 mod m, h monic  ->  same relations mod m^2.
inline void hensel_step(const Integer& m, const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t) {
  Integer M = m * m;
  ZPoly e = zmod(zsub(f, zmul(g, h)), M);
  auto [q, r] = zdivmod_monic(zmul(s, e), h, M);
  ZPoly g2 = zmod(zadd(g, zadd(zmul(t, e), zmul(q, g))), M);
  ZPoly h2 = zmod(zadd(h, r), M);
  ZPoly b = zmod(zsub(zadd(zmul(s, g2), zmul(t, h2)), ZPoly{Integer(1)}), M);
  auto [c, d] = zdivmod_monic(zmul(s, b), h2, M);
  ZPoly s2 = zmod(zsub(s, d), M);
  ZPoly t2 = zmod(zsub(t, zadd(zmul(t, b), zmul(c, g2))), M);
  g = std::move(g2);
  h = std::move(h2);
  s = std::move(s2);
  t = std::move(t2);
}

inline bool zdivides_exact(const ZPoly& f, const ZPoly& g, ZPoly& quotient) {
  std::vector<Rational> fr(f.begin(), f.end()), gr(g.begin(), g.end());
  auto [q, r] = divmod(UPoly(fr), UPoly(gr));
  if (!r.is_zero()) return false;
  quotient.clear();
  for (const auto& c : q.coeffs()) {
    if (!is_integer(c)) return false;
    quotient.push_back(c.get_num());
  }
  return true;
}

inline ZPoly zprimitive(ZPoly a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

inline bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct ZFactors {
  std::vector<ZPoly> factors;
  bool certified = true;
};

/// Factors a primitive square-free integer polynomial of positive degree with positive leading coefficient.
inline ZFactors zassenhaus(const ZPoly& f0) {
  ZFactors result;
  const int n = static_cast<int>(f0.size()) - 1;
  if (n <= 1) {
    result.factors.push_back(f0);
    return result;
  }
  // Choose among a few admissible primes the one giving the fewest modular factors.
  std::uint64_t best_p = 0;
  std::vector<modp::Poly> best;
  int admissible = 0;
  for (std::uint64_t p = 3; admissible < 5 && p < 20000; p += 2) {
    if (!is_prime_small(p)) continue;
    modp::Field F{p};
    modp::Poly fp = to_modp(f0, p);
    if (modp::deg(fp) != n) continue;
    if (modp::deg(modp::gcd(F, fp, modp::derivative(F, fp))) != 0) continue;
    ++admissible;
    auto facs = modp::factor_squarefree(F, fp, 0x5eed + p);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw std::runtime_error("no admissible prime for factorization");
  if (best.size() == 1) {
    result.factors.push_back(f0);
    return result;
  }
  if (best.size() > 16) {
    result.factors.push_back(f0);
    result.certified = false;
    return result;
  }
  // Mignotte-style bound on factor coefficients.
  Integer maxc = 0;
  for (const auto& c : f0) maxc = std::max(maxc, Integer(abs(c)));
  Integer lc = f0.back();
  Integer bound = maxc * lc * (Integer(1) << static_cast<unsigned long>(n)) * (static_cast<unsigned long>(n) + 2);
  Integer P(static_cast<unsigned long>(best_p)), M = P;
  unsigned squarings = 0;
  while (M <= 2 * bound) {
    M *= M;
    ++squarings;
  }
  // Lift lc * prod u_i one factor at a time.
  modp::Field F{best_p};
  std::vector<ZPoly> lifted;
  ZPoly current = zmod(f0, M);
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    modp::Poly rest{static_cast<std::uint64_t>(Integer(lc % P).get_ui())};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = modp::mul(F, rest, best[j]);
    modp::Poly sp, tp, gp;
    modp::ext_gcd(F, rest, best[i], sp, tp, gp);
    ZPoly g = from_modp(rest), h = from_modp(best[i]), s = from_modp(sp), t = from_modp(tp);
    Integer m = P;
    for (unsigned k = 0; k < squarings; ++k) {
      hensel_step(m, zmod(current, m * m), g, h, s, t);
      m *= m;
    }
    lifted.push_back(h);
    current = g;
  }
  {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
    ZPoly last = current;
    for (auto& c : last) c = c * inv;
    lifted.push_back(zmod(last, M));
  }
  // Recombine subsets.
  ZPoly f = f0;
  std::size_t size = 1;
  while (2 * size <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      ZPoly cand{f.back()};
      for (auto i : idx) cand = zmod(zmul(cand, lifted[i]), M);
      cand = zprimitive(zsymmetric(cand, M));
      ZPoly q;
      if (cand.size() > 1 && zdivides_exact(f, cand, q)) {
        result.factors.push_back(cand);
        f = q;
        if (f.back() < 0)
          for (auto& c : f) c = -c;
        for (std::size_t k = idx.size(); k-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[k]));
        found = true;
        break;
      }
      // next combination
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == lifted.size() - size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (f.size() > 1) result.factors.push_back(zprimitive(f));
  return result;
}

}  // namespace detail

struct UFactor {
  UPoly poly;  ///< primitive integer polynomial, positive leading coefficient
  unsigned multiplicity;
  bool certified_irreducible;
};

struct UFactorization {
  Rational unit;
  std::vector<UFactor> factors;
};

/// Factorization over Q into irreducible integer-primitive factors; unit * prod factor^mult = f.
inline UFactorization factor_univariate(const UPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("factoring the zero polynomial");
  UFactorization out;
  for (auto& [a, mult] : squarefree_decomposition(f)) {
    UPoly prim = a.primitive();
    detail::ZPoly z;
    for (const auto& c : prim.coeffs()) z.push_back(c.get_num());
    auto zf = detail::zassenhaus(z);
    for (auto& g : zf.factors) {
      std::vector<Rational> c(g.begin(), g.end());
      out.factors.push_back({UPoly(std::move(c)), mult, zf.certified});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const UFactor& a, const UFactor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    return a.poly.coeffs() < b.poly.coeffs();
  });
  UPoly prod = UPoly::constant(1);
  for (const auto& fa : out.factors) prod = prod * fa.poly.pow(fa.multiplicity);
  out.unit = f.lc() / prod.lc();
  return out;
}

struct BinaryFactor {
  MultiPoly form;
  unsigned multiplicity;
  bool certified_irreducible;  ///< false marks a conjugate-class block whose splitting was not resolved
};

struct BinaryFactorization {
  Rational unit;
  std::vector<BinaryFactor> factors;
};

/// Factors a homogeneous form in two variables over Q. Factors are integer-primitive; a linear factor in
/// the first variable alone is reported as that variable.
inline BinaryFactorization factor_binary_form(const MultiPoly& F) {
  if (F.nvars() != 2) throw std::invalid_argument("binary form must have exactly two variables");
  if (F.is_zero()) throw std::invalid_argument("factoring the zero form");
  if (!F.is_homogeneous()) throw std::invalid_argument("binary form is not homogeneous");
  const unsigned d = static_cast<unsigned>(F.total_degree());
  // Dehomogenize at the second variable: g(t) = F(t, 1).
  std::vector<Rational> c(d + 1, Rational(0));
  for (const auto& [e, a] : F.terms()) c[e[0]] += a;
  UPoly g(std::move(c));
  BinaryFactorization out;
  const VarList& vars = F.vars();
  unsigned second_power = d - static_cast<unsigned>(g.degree());
  auto uf = factor_univariate(g);
  out.unit = uf.unit;
  for (const auto& fa : uf.factors) {
    MultiPoly form(vars);
    unsigned k = static_cast<unsigned>(fa.poly.degree());
    for (unsigned i = 0; i <= k; ++i) form.add_term(Exponent{i, k - i}, fa.poly[i]);
    out.factors.push_back({primitive_normalized(form), fa.multiplicity, fa.certified_irreducible});
  }
  if (second_power > 0) out.factors.push_back({MultiPoly::variable(vars, 1), second_power, true});
  // Fix the unit so that unit * prod = F exactly.
  MultiPoly prod = MultiPoly::constant(vars, 1);
  for (const auto& fa : out.factors) prod *= fa.form.pow(fa.multiplicity);
  out.unit = F.leading_term().second / prod.leading_term().second;
  return out;
}

}  // namespace fastloop
