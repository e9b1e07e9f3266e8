#pragma once

#include <optional>
#include <vector>

#include "fastloop/linalg.hpp"
#include "fastloop/poly.hpp"

namespace fastloop {

namespace detail {

// Scales a positive rational vector to the smallest integer vector on its ray.
inline std::vector<Integer> minimal_integer_vector(const std::vector<Rational>& w) {
  Integer l = 1;
  for (const auto& a : w) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& a : w) {
    Integer v = a.get_num() * (l / a.get_den());
    out.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  for (auto& v : out) v /= g;
  return out;
}

}  // namespace detail

/// Rational weights making every monomial of f weighted-homogeneous of degree 1, plus the minimal
/// integer vector on the same ray.
struct WeightVector {
  std::vector<Rational> normalized;
  std::vector<Integer> integral;
};

/// Finds the unique positive weight vector for which f is weighted homogeneous. Extra linear
/// constraints (rows of `constraints`, each w . row = 0) may be imposed. Returns nullopt when no such
/// vector exists or when it is not unique up to scale.
inline std::optional<WeightVector> detect_weights(const MultiPoly& f, const RatMatrix& constraints = {}) {
  if (f.size() < 1 || f.nvars() == 0) return std::nullopt;
  const std::size_t n = f.nvars();
  const Exponent& first = f.terms().begin()->first;
  if (exponent_degree(first) == 0) return std::nullopt;
  RatMatrix rows = constraints;
  for (const auto& [e, c] : f.terms()) {
    std::vector<Rational> row(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = static_cast<long>(e[i]) - static_cast<long>(first[i]);
      nonzero = nonzero || row[i] != 0;
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  auto basis = nullspace(rows, n);
  if (basis.size() != 1) return std::nullopt;
  std::vector<Rational> w = basis.front();
  Rational deg = 0;
  for (std::size_t i = 0; i < n; ++i) deg += w[i] * static_cast<unsigned long>(first[i]);
  if (deg == 0) return std::nullopt;
  for (auto& a : w) a /= deg;
  for (const auto& a : w)
    if (a <= 0) return std::nullopt;
  return WeightVector{w, detail::minimal_integer_vector(w)};
}

}  // namespace fastloop
