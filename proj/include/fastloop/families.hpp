#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fastloop/analysis.hpp"

namespace fastloop {

inline constexpr unsigned kMaxAdeIndex = 12;
inline constexpr unsigned kMaxBrieskornExponent = 10;
inline constexpr unsigned kMaxBrieskornDimension = 4;

namespace detail {

inline GermInput surface(std::string name, std::string equation, std::string family, std::optional<bool> normal = {}) {
  GermInput g;
  g.name = std::move(name);
  g.equation = std::move(equation);
  g.variables = {"x", "y", "z"};
  g.fiber = "z";
  g.family = std::move(family);
  g.normal = normal;
  return g;
}

}  // namespace detail

/// A_k, D_k (k <= kmax) and E6, E7, E8, all flagged normal.
inline std::vector<GermInput> ade_family(unsigned kmax = 8) {
  if (kmax < 1 || kmax > kMaxAdeIndex) throw std::invalid_argument("ade needs 1 <= kmax <= " + std::to_string(kMaxAdeIndex));
  std::vector<GermInput> out;
  for (unsigned k = 1; k <= kmax; ++k)
    out.push_back(detail::surface("A" + std::to_string(k), "z^2 + x^2 + y^" + std::to_string(k + 1), "ade", true));
  for (unsigned k = 4; k <= kmax; ++k)
    out.push_back(detail::surface("D" + std::to_string(k), "z^2 + x^2*y + y^" + std::to_string(k - 1), "ade", true));
  out.push_back(detail::surface("E6", "z^2 + x^3 + y^4", "ade", true));
  out.push_back(detail::surface("E7", "z^2 + x^3 + x*y^3", "ade", true));
  out.push_back(detail::surface("E8", "z^2 + x^3 + y^5", "ade", true));
  return out;
}

/// x_{n+1}^p - sum x_i^{d_i} over p in ps and p <= d_n <= ... <= d_1 <= dmax.
inline std::vector<GermInput> brieskorn_family(const std::vector<unsigned>& ps, unsigned dmax, unsigned n = 2) {
  if (dmax > kMaxBrieskornExponent) throw std::invalid_argument("brieskorn needs dmax <= " + std::to_string(kMaxBrieskornExponent));
  if (n < 2 || n > kMaxBrieskornDimension)
    throw std::invalid_argument("brieskorn needs 2 <= n <= " + std::to_string(kMaxBrieskornDimension));
  if (ps.empty()) throw std::invalid_argument("brieskorn needs at least one p");
  std::vector<GermInput> out;
  for (unsigned p : ps) {
    if (p < 2 || p > dmax) throw std::invalid_argument("brieskorn needs 2 <= p <= dmax");
    std::vector<unsigned> d(n, p);
    for (;;) {
      GermInput g;
      std::string name = "p" + std::to_string(p) + "_d";
      std::string eq = "z^" + std::to_string(p);
      for (unsigned i = 0; i < n; ++i) {
        g.variables.push_back("x" + std::to_string(i + 1));
        name += (i ? "," : "") + std::to_string(d[i]);
        eq += " - x" + std::to_string(i + 1) + "^" + std::to_string(d[i]);
      }
      g.variables.push_back("z");
      g.fiber = "z";
      g.name = name;
      g.equation = eq;
      g.family = "brieskorn";
      out.push_back(g);
      // next non-increasing tuple d_1 >= ... >= d_n >= p, listed by the last exponent first
      std::size_t i = n;
      while (i-- > 0) {
        unsigned cap = i == 0 ? dmax : d[i - 1];
        if (d[i] < cap) {
          ++d[i];
          for (std::size_t j = i + 1; j < n; ++j) d[j] = p;
          break;
        }
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

/// The a0 of the z^2 - a0 corpus: ten ordinary and ten non-ordinary plane curve germs of degree <= 8.
inline const std::vector<std::string>& binomial_corpus() {
  static const std::vector<std::string> corpus{
      "x^2 + y^2", "x*y", "x^3 + y^3", "x*y*(x + y)", "x^3 - x*y^2 + y^5",
      "x^4 + y^4", "x^4 - y^4 + x^5*y", "x^2*y^2", "x^3*y", "x*y*(x - y)*(x + y)*(x - 2*y)",
      "x^2 + y^3", "x^3 + y^4", "x^2*y + y^4", "x^3 + x*y^3", "x^2 + y^5",
      "x^4 + y^6", "x^2 - y^4", "y*(x^2 - y^3)", "(x^2 + y^3)^2", "x^2*y^2 + x^5 + y^5"};
  return corpus;
}

inline std::vector<GermInput> binomial_family() {
  std::vector<GermInput> out;
  const auto& c = binomial_corpus();
  for (std::size_t i = 0; i < c.size(); ++i)
    out.push_back(detail::surface("b" + std::to_string(i + 1), "z^2 - (" + c[i] + ")", "binomial"));
  return out;
}

struct FamilyEntry {
  unsigned p;
  std::string a1, a0;
};

/// Members of z^p + a1*z + a0 with ord(a0) >= p and ord(a1) >= p - 1.
inline const std::vector<FamilyEntry>& z_p_a1_a0_corpus() {
  static const std::vector<FamilyEntry> corpus{
      {3, "x*y", "x^3 + y^3"}, {3, "0", "x^3 + y^3"}, {3, "0", "x^3 + y^4"}, {3, "x^2", "y^3"},
      {3, "x*y", "x^3 + y^4"}, {3, "y^2", "x^3"},     {3, "x^3", "x^3 + y^3"}, {3, "x^3", "x^3 + y^4"},
      {4, "x^3", "y^4"},       {4, "0", "x^4 + y^4"}, {4, "0", "x^4 + y^5"},  {4, "x^2*y", "x^4 + y^4"}};
  return corpus;
}

inline std::vector<GermInput> z_p_a1_a0_family() {
  std::vector<GermInput> out;
  std::size_t i = 0;
  for (const auto& e : z_p_a1_a0_corpus()) {
    std::string eq = "z^" + std::to_string(e.p);
    if (e.a1 != "0") eq += " + (" + e.a1 + ")*z";
    eq += " + " + e.a0;
    out.push_back(detail::surface("f" + std::to_string(++i), eq, "z_p_a1_a0"));
  }
  return out;
}

/// Runs job(i) for i < count on `workers` threads.
inline void run_pool(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) job(i);
  };
  if (workers == 1) {
    loop();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(loop);
}

struct ClassifyRow {
  GermInput germ;
  std::optional<AnalysisReport> report;
  std::string error;  ///< set when the analysis threw
  int exit = 0;       ///< 0 definite, 2 Undetermined, 3 invalid, 1 internal error
};

/// Analyzes every member; rows come back in input order.
inline std::vector<ClassifyRow> classify(const std::vector<GermInput>& members, const CoveringOptions& opt, unsigned workers = 1) {
  std::vector<ClassifyRow> rows(members.size());
  run_pool(members.size(), workers, [&](std::size_t i) {
    ClassifyRow& row = rows[i];
    row.germ = members[i];
    try {
      row.report = analyze(members[i], opt);
      row.exit = !row.report->convenient ? 3 : row.report->verdict.definite() ? 0 : 2;
    } catch (const Disagreement& e) {
      row.error = e.what();
      row.exit = 1;
    } catch (const ParseError& e) {
      row.error = e.what();
      row.exit = 3;
    } catch (const std::invalid_argument& e) {
      row.error = e.what();
      row.exit = 3;
    } catch (const std::exception& e) {
      row.error = e.what();
      row.exit = 1;
    }
  });
  return rows;
}

}  // namespace fastloop
