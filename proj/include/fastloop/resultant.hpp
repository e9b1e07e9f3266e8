#pragma once

#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "fastloop/gcd.hpp"

namespace fastloop {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

/// Fraction-free (Bareiss) determinant; every division is exact.
inline MultiPoly bareiss_determinant(PolyMatrix m, const VarList& vars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(vars, 1);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  bool negate = false;
  MultiPoly prev = MultiPoly::constant(vars, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return MultiPoly(vars);
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = divide_exact(num, prev);
      }
      m[i][k] = MultiPoly(vars);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

namespace detail {

// Rows x^{n-j-1} f, ..., f, x^{m-j-1} g, ..., g restricted to the columns of degrees m+n-j-1 .. j.
inline PolyMatrix subresultant_matrix(const std::vector<MultiPoly>& fc, const std::vector<MultiPoly>& gc, unsigned j,
                                      const VarList& vars) {
  const unsigned m = static_cast<unsigned>(fc.size() - 1), n = static_cast<unsigned>(gc.size() - 1);
  const unsigned size = m + n - 2 * j;
  const unsigned top = m + n - j - 1;
  PolyMatrix mat(size, std::vector<MultiPoly>(size, MultiPoly(vars)));
  unsigned row = 0;
  auto place = [&](const std::vector<MultiPoly>& c, unsigned shift) {
    // column index col corresponds to degree top - col
    for (unsigned d = 0; d < c.size(); ++d) {
      unsigned deg = d + shift;
      if (deg > top || deg < j) continue;
      mat[row][top - deg] = c[d];
    }
    ++row;
  };
  for (unsigned s = n - j; s-- > 0;) place(fc, s);
  for (unsigned s = m - j; s-- > 0;) place(gc, s);
  return mat;
}

}  // namespace detail

/// Sylvester resultant with respect to variable v. The result still lives in the full ring but does not involve v.
inline MultiPoly resultant_in(const MultiPoly& f, const MultiPoly& g, std::size_t v) {
  if (f.vars() != g.vars()) throw std::invalid_argument("resultant across rings");
  if (v >= f.nvars()) throw std::invalid_argument("resultant variable out of range");
  if (f.degree_in(v) == 0 || g.degree_in(v) == 0) throw std::invalid_argument("resultant needs positive degree in the variable");
  auto m = detail::subresultant_matrix(f.coefficients_in(v), g.coefficients_in(v), 0, f.vars());
  return bareiss_determinant(std::move(m), f.vars());
}

inline MultiPoly resultant_in(const MultiPoly& f, const MultiPoly& g, std::string_view var) {
  auto v = f.find_var(var);
  if (!v) throw std::invalid_argument("variable '" + std::string(var) + "' not in variable list");
  return resultant_in(f, g, *v);
}

/// Principal subresultant coefficients psc_0 (= resultant), ..., psc_{min(deg f, deg g)-1} in variable v.
/// Over a point where the leading coefficients do not vanish, the degree of gcd(f, g) is the least j
/// with psc_j nonzero.
inline std::vector<MultiPoly> principal_subresultants(const MultiPoly& f, const MultiPoly& g, std::size_t v) {
  if (f.vars() != g.vars()) throw std::invalid_argument("subresultants across rings");
  unsigned m = f.degree_in(v), n = g.degree_in(v);
  if (m == 0 || n == 0) throw std::invalid_argument("subresultants need positive degree in the variable");
  auto fc = f.coefficients_in(v), gc = g.coefficients_in(v);
  std::vector<MultiPoly> out;
  for (unsigned j = 0; j < std::min(m, n); ++j)
    out.push_back(bareiss_determinant(detail::subresultant_matrix(fc, gc, j, f.vars()), f.vars()));
  return out;
}

/// Drops variables that do not occur; keeps the remaining order.
inline MultiPoly restrict_to(const MultiPoly& f, const VarList& target) { return f.in_ring(target); }

}  // namespace fastloop
