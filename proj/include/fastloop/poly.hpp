#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fastloop/rational.hpp"

namespace fastloop {

using Exponent = std::vector<unsigned>;
using VarList = std::vector<std::string>;

inline unsigned exponent_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

/// Sparse multivariate polynomial over the rationals in an ordered list of
/// named variables. Zero coefficients are never stored. Terms are keyed by
/// exponent vector; the map order is lexicographic, so the last entry is the
/// lex-leading term.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(VarList vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(VarList vars, const Rational& c) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponent(p.nvars(), 0), c);
    return p;
  }
  static MultiPoly variable(VarList vars, std::string_view name) {
    MultiPoly p(std::move(vars));
    Exponent e(p.nvars(), 0);
    e[p.var_index(name)] = 1;
    p.add_term(e, Rational(1));
    return p;
  }
  static MultiPoly variable(VarList vars, std::size_t index) {
    MultiPoly p(std::move(vars));
    Exponent e(p.nvars(), 0);
    e.at(index) = 1;
    p.add_term(e, Rational(1));
    return p;
  }
  static MultiPoly monomial(VarList vars, Exponent e, const Rational& c) {
    MultiPoly p(std::move(vars));
    p.add_term(e, c);
    return p;
  }

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::optional<std::size_t> find_var(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }
  std::size_t var_index(std::string_view name) const {
    auto i = find_var(name);
    if (!i) throw std::invalid_argument("variable '" + std::string(name) + "' not in variable list");
    return *i;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exponent_degree(terms_.begin()->first) == 0);
  }
  Rational constant_term() const { return coeff(Exponent(nvars(), 0)); }

  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars()) throw std::invalid_argument("exponent length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(exponent_degree(e)));
    return d;
  }
  unsigned degree_in(std::size_t v) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(v));
    return d;
  }
  bool involves(std::size_t v) const {
    return std::any_of(terms_.begin(), terms_.end(), [v](const auto& t) { return t.first[v] > 0; });
  }
  /// Smallest power of variable v appearing in any term.
  unsigned min_degree_in(std::size_t v) const {
    if (terms_.empty()) return 0;
    unsigned d = ~0u;
    for (const auto& [e, c] : terms_) d = std::min(d, e.at(v));
    return d;
  }

  /// Taylor order at the origin; infinity for the zero polynomial.
  ExtNat order() const {
    if (terms_.empty()) return ExtNat::infinity();
    unsigned d = ~0u;
    for (const auto& [e, c] : terms_) d = std::min(d, exponent_degree(e));
    return ExtNat(d);
  }

  MultiPoly homogeneous_part(unsigned d) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_)
      if (exponent_degree(e) == d) r.terms_.emplace(e, c);
    return r;
  }

  /// Initial form: the homogeneous part of lowest degree.
  MultiPoly lowest_form() const {
    if (is_zero()) throw std::invalid_argument("lowest_form of the zero polynomial");
    return homogeneous_part(static_cast<unsigned>(order().value()));
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = exponent_degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return exponent_degree(t.first) == d; });
  }

  MultiPoly derivative(std::size_t v) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(v) == 0) continue;
      Exponent f = e;
      --f[v];
      r.add_term(f, c * e[v]);
    }
    return r;
  }
  MultiPoly derivative(std::string_view name) const { return derivative(var_index(name)); }

  /// Coefficients of powers of variable v; entry j multiplies v^j. Entries live in the same ring
  /// (they simply do not involve v).
  std::vector<MultiPoly> coefficients_in(std::size_t v) const {
    std::vector<MultiPoly> out(degree_in(v) + 1, MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[v] = 0;
      out[e[v]].terms_.emplace(std::move(f), c);
    }
    if (terms_.empty()) out.assign(1, MultiPoly(vars_));
    return out;
  }
  MultiPoly coefficient_of(std::size_t v, unsigned j) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[v] != j) continue;
      Exponent f = e;
      f[v] = 0;
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }
  /// Coefficient of the top power of v.
  MultiPoly leading_coefficient_in(std::size_t v) const { return coefficient_of(v, degree_in(v)); }

  /// Substitutes a polynomial (same ring) for variable v.
  MultiPoly substitute(std::size_t v, const MultiPoly& value) const {
    check_same_ring(value);
    MultiPoly r(vars_);
    std::vector<MultiPoly> powers{constant(vars_, 1)};
    for (const auto& [e, c] : terms_) {
      while (powers.size() <= e[v]) powers.push_back(powers.back() * value);
      Exponent f = e;
      f[v] = 0;
      r += monomial(vars_, f, c) * powers[e[v]];
    }
    return r;
  }
  MultiPoly substitute(std::size_t v, const Rational& value) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[v] = 0;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e[v]);
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e[v]);
      r.add_term(f, c * pw);
    }
    return r;
  }

  /// Ring map: variable i is sent to images[i]; all images must share one target ring.
  MultiPoly compose(const std::vector<MultiPoly>& images) const {
    if (images.size() != nvars()) throw std::invalid_argument("compose: wrong number of images");
    if (images.empty()) return *this;
    const VarList& target = images.front().vars();
    for (const auto& im : images)
      if (im.vars() != target) throw std::invalid_argument("compose: images live in different rings");
    std::vector<std::vector<MultiPoly>> powers(nvars(), {constant(target, 1)});
    MultiPoly r(target);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(target, c);
      for (std::size_t i = 0; i < nvars(); ++i) {
        while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
        if (e[i]) t *= powers[i][e[i]];
      }
      r += t;
    }
    return r;
  }

  /// Re-expresses the polynomial in another variable list (matched by name).
  MultiPoly in_ring(const VarList& target) const {
    if (target == vars_) return *this;
    std::vector<std::optional<std::size_t>> where(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
      for (std::size_t j = 0; j < target.size(); ++j)
        if (target[j] == vars_[i]) where[i] = j;
    }
    MultiPoly r(target);
    for (const auto& [e, c] : terms_) {
      Exponent f(target.size(), 0);
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (e[i] == 0) continue;
        if (!where[i]) throw std::invalid_argument("in_ring: variable '" + vars_[i] + "' missing from target ring");
        f[*where[i]] = e[i];
      }
      r.add_term(f, c);
    }
    return r;
  }

  Rational eval(const std::vector<Rational>& point) const {
    if (point.size() != nvars()) throw std::invalid_argument("eval: wrong point dimension");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < nvars(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
      s += t;
    }
    return s;
  }

  /// Evaluation in another scalar type; `conv` maps a Rational coefficient into S.
  template <class S, class Conv>
  S evaluate(const std::vector<S>& point, Conv conv) const {
    if (point.size() != nvars()) throw std::invalid_argument("evaluate: wrong point dimension");
    std::vector<std::vector<S>> pw(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
      pw[i].push_back(S(1));
      for (unsigned k = 1; k <= degree_in(i); ++k) pw[i].push_back(pw[i].back() * point[i]);
    }
    S s(0);
    for (const auto& [e, c] : terms_) {
      S t = conv(c);
      for (std::size_t i = 0; i < nvars(); ++i)
        if (e[i]) t = t * pw[i][e[i]];
      s = s + t;
    }
    return s;
  }

  /// Lex-leading term (largest exponent in map order).
  const std::pair<const Exponent, Rational>& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
    return *terms_.rbegin();
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return accumulate(o, false); }
  MultiPoly& operator-=(const MultiPoly& o) { return accumulate(o, true); }
  MultiPoly& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& k) { return a *= k; }
  friend MultiPoly operator*(const Rational& k, MultiPoly a) { return a *= k; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_) {
      if (a.nvars() == 0) return b * a.constant_term();
      if (b.nvars() == 0) return a * b.constant_term();
      throw std::invalid_argument("polynomials live in different rings");
    }
    MultiPoly r(a.vars_);
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned n) const {
    MultiPoly r = constant(vars_, 1), b = *this;
    while (n) {
      if (n & 1u) r *= b;
      n >>= 1u;
      if (n) b *= b;
    }
    return r;
  }

  /// Canonical text: terms by descending total degree, then descending lex.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::vector<const Terms::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
      unsigned da = exponent_degree(a->first), db = exponent_degree(b->first);
      if (da != db) return da > db;
      return a->first > b->first;
    });
    std::string out;
    bool first = true;
    for (const auto* t : order) {
      const auto& [e, c] = *t;
      Rational mag = abs(c);
      bool neg = c < 0;
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty())
        out += to_string(mag);
      else if (mag == 1)
        out += mono;
      else
        out += to_string(mag) + "*" + mono;
    }
    return out;
  }

 private:
  void check_same_ring(const MultiPoly& o) const {
    if (o.vars_ != vars_) throw std::invalid_argument("polynomials live in different rings");
  }
  // A constant in the empty ring mixes freely with any ring.
  MultiPoly& accumulate(const MultiPoly& o, bool negate) {
    if (o.vars_ != vars_) {
      if (o.nvars() == 0) {
        Rational c = o.constant_term();
        add_term(Exponent(nvars(), 0), negate ? Rational(-c) : c);
        return *this;
      }
      if (nvars() != 0) throw std::invalid_argument("polynomials live in different rings");
      *this = constant(o.vars_, constant_term());
    }
    for (const auto& [e, c] : o.terms_) add_term(e, negate ? Rational(-c) : c);
    return *this;
  }

  VarList vars_;
  Terms terms_;
};

}  // namespace fastloop
