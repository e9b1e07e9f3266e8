#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fastloop {

/// Exact rational backed by GMP; always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "a" or "a/b" (optional sign on a).
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal '" + text + "'");
  if (q.get_den() == 0) throw std::domain_error("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

/// "a/b" form, or "a" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Natural number extended by an infinity sentinel. Used for orders and
/// intersection numbers where the zero polynomial or a shared component
/// must never be mistaken for a finite value.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : value_(v) {}  // NOLINT: implicit from naturals is intended
  static constexpr ExtNat infinity() {
    ExtNat e;
    e.value_ = kInf;
    return e;
  }
  constexpr bool is_infinite() const { return value_ == kInf; }
  constexpr bool is_finite() const { return value_ != kInf; }
  std::uint64_t value() const {
    if (is_infinite()) throw std::logic_error("ExtNat: value of infinity");
    return value_;
  }
  friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtNat(a.value_ + b.value_);
  }
  ExtNat& operator+=(ExtNat o) { return *this = *this + o; }
  friend constexpr auto operator<=>(ExtNat a, ExtNat b) = default;
  std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = 0;
};

}  // namespace fastloop
