#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fastloop/analysis.hpp"

namespace fastloop {

/// Error in a spec file, located by 1-based line and column.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Analysis settings that may come from a [config] section; command-line flags override them.
struct ConfigOverrides {
  std::optional<unsigned> precision;
  std::optional<std::string> tolerance;
  std::optional<std::string> t0;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> max_halvings;

  void merge_from(const ConfigOverrides& o) {
    if (o.precision) precision = o.precision;
    if (o.tolerance) tolerance = o.tolerance;
    if (o.t0) t0 = o.t0;
    if (o.seed) seed = o.seed;
    if (o.max_halvings) max_halvings = o.max_halvings;
  }
};

struct SpecFile {
  GermInput germ;
  ConfigOverrides config;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

inline bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

template <class Int>
Int parse_unsigned(const std::string& text, const char* what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument(std::string(what) + " must be a non-negative integer");
  std::uint64_t v = 0;
  for (char c : text) {
    if (v > (UINT64_MAX - 9) / 10) throw std::invalid_argument(std::string(what) + " is too large");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  if (v > std::numeric_limits<Int>::max()) throw std::invalid_argument(std::string(what) + " is too large");
  return static_cast<Int>(v);
}

}  // namespace detail

/// Exact value of a decimal ("1e-40", "0.001"), a rational ("1/1024") or a power "2^-k".
inline Rational parse_exact_number(const std::string& text) {
  const std::string s = detail::trim(text);
  if (s.rfind("2^-", 0) == 0) {
    unsigned k = detail::parse_unsigned<unsigned>(s.substr(3), "exponent");
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
    return Rational(Integer(1), den);
  }
  if (s.find('/') != std::string::npos) return parse_rational(s);
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    std::string ex = s.substr(e + 1);
    bool neg = !ex.empty() && ex[0] == '-';
    if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) ex = ex.substr(1);
    exp10 = static_cast<long>(detail::parse_unsigned<unsigned>(ex, "exponent")) * (neg ? -1 : 1);
  }
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  Rational q = parse_rational(mant);
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0)
    q /= Rational(p10);
  else
    q *= Rational(p10);
  q.canonicalize();
  return q;
}

/// Parses the [germ] / [config] key=value format described in docs/spec-format.md.
inline SpecFile parse_spec(const std::string& text, const std::string& source = "<spec>") {
  SpecFile out;
  std::string section;
  std::map<std::string, std::pair<std::string, std::pair<std::size_t, std::size_t>>> germ_keys;
  std::map<std::string, bool> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool saw_germ = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const std::size_t col0 = raw.find_first_not_of(" \t") + 1;
    if (line.front() == '[') {
      if (line.back() != ']') throw SpecError(source, lineno, col0, "unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "germ" && section != "config") throw SpecError(source, lineno, col0 + 1, "unknown section '" + section + "'");
      if (seen["[" + section + "]"]) throw SpecError(source, lineno, col0, "section [" + section + "] repeated");
      seen["[" + section + "]"] = true;
      saw_germ = saw_germ || section == "germ";
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw SpecError(source, lineno, col0, "expected key = value");
    if (section.empty()) throw SpecError(source, lineno, col0, "key outside of a section");
    const std::string key = detail::trim(raw.substr(0, eq));
    const std::string value = detail::trim(raw.substr(eq + 1));
    std::size_t vcol = raw.find_first_not_of(" \t", eq + 1);
    vcol = (vcol == std::string::npos ? raw.size() : vcol) + 1;
    const std::string id = section + "." + key;
    if (seen[id]) throw SpecError(source, lineno, col0, "duplicate key '" + key + "'");
    seen[id] = true;
    try {
      if (section == "germ") {
        static const char* known[] = {"name", "dimension", "variables", "equation", "cover", "fiber", "normal", "family"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
          throw SpecError(source, lineno, col0, "unknown key '" + key + "' in [germ]");
        germ_keys[key] = {value, {lineno, vcol}};
      } else {
        auto& c = out.config;
        if (key == "precision")
          c.precision = detail::parse_unsigned<unsigned>(value, "precision");
        else if (key == "tolerance")
          c.tolerance = value;
        else if (key == "t0")
          c.t0 = value;
        else if (key == "seed")
          c.seed = detail::parse_unsigned<std::uint64_t>(value, "seed");
        else if (key == "max_halvings")
          c.max_halvings = detail::parse_unsigned<unsigned>(value, "max_halvings");
        else
          throw SpecError(source, lineno, col0, "unknown key '" + key + "' in [config]");
      }
    } catch (const std::invalid_argument& e) {
      throw SpecError(source, lineno, vcol, e.what());
    }
  }
  if (!saw_germ) throw SpecError(source, lineno + 1, 1, "missing [germ] section");
  auto at = [&](const std::string& key) { return germ_keys.at(key).second; };
  auto need = [&](const std::string& key) -> const std::string& {
    if (!germ_keys.count(key)) throw SpecError(source, lineno + 1, 1, "missing key '" + key + "' in [germ]");
    return germ_keys.at(key).first;
  };
  GermInput& g = out.germ;
  g.variables = detail::split_list(need("variables"));
  for (const auto& v : g.variables)
    if (!detail::valid_identifier(v))
      throw SpecError(source, at("variables").first, at("variables").second, "bad variable name '" + v + "'");
  for (std::size_t i = 0; i < g.variables.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (g.variables[i] == g.variables[j])
        throw SpecError(source, at("variables").first, at("variables").second, "variable '" + g.variables[i] + "' repeated");
  if (germ_keys.count("dimension")) {
    auto [l, c] = at("dimension");
    unsigned n;
    try {
      n = detail::parse_unsigned<unsigned>(germ_keys["dimension"].first, "dimension");
    } catch (const std::invalid_argument& e) {
      throw SpecError(source, l, c, e.what());
    }
    if (n != g.variables.size()) throw SpecError(source, l, c, "dimension does not match the number of variables");
  }
  g.equation = need("equation");
  try {
    (void)parse_poly(g.equation, g.variables);
  } catch (const ParseError& e) {
    throw SpecError(source, at("equation").first, at("equation").second + e.position(), e.what());
  }
  const bool has_cover = germ_keys.count("cover"), has_fiber = germ_keys.count("fiber");
  if (has_cover == has_fiber) throw SpecError(source, lineno + 1, 1, "give exactly one of 'cover' and 'fiber' in [germ]");
  if (has_fiber) {
    g.fiber = germ_keys["fiber"].first;
    if (std::find(g.variables.begin(), g.variables.end(), g.fiber) == g.variables.end())
      throw SpecError(source, at("fiber").first, at("fiber").second, "fiber '" + g.fiber + "' is not a declared variable");
  } else {
    auto cover = detail::split_list(germ_keys["cover"].first);
    auto [l, c] = at("cover");
    for (const auto& v : cover)
      if (std::find(g.variables.begin(), g.variables.end(), v) == g.variables.end())
        throw SpecError(source, l, c, "cover variable '" + v + "' is not declared");
    std::vector<std::string> rest;
    for (const auto& v : g.variables)
      if (std::find(cover.begin(), cover.end(), v) == cover.end()) rest.push_back(v);
    if (rest.size() != 1 || cover.size() + 1 != g.variables.size())
      throw SpecError(source, l, c, "cover must list every variable but one, each once");
    g.fiber = rest.front();
  }
  if (germ_keys.count("normal")) {
    const auto& v = germ_keys["normal"].first;
    if (v != "true" && v != "false") throw SpecError(source, at("normal").first, at("normal").second, "normal must be true or false");
    g.normal = v == "true";
  }
  if (germ_keys.count("family")) {
    const auto& v = germ_keys["family"].first;
    static const char* fams[] = {"ade", "brieskorn", "binomial", "z_p_a1_a0"};
    if (std::find(std::begin(fams), std::end(fams), v) == std::end(fams))
      throw SpecError(source, at("family").first, at("family").second, "unknown family '" + v + "'");
    g.family = v;
  }
  if (germ_keys.count("name")) g.name = germ_keys["name"].first;
  return out;
}

inline SpecFile read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path);
}

/// Covering options from the merged configuration; throws std::invalid_argument on bad values.
inline CoveringOptions covering_options(const ConfigOverrides& c) {
  CoveringOptions opt;
  if (c.precision) {
    if (*c.precision < 53 || *c.precision > 512) throw std::invalid_argument("precision must lie in [53, 512]");
    opt.precision = *c.precision;
  }
  if (c.tolerance) {
    Rational tol = parse_exact_number(*c.tolerance);
    if (tol <= 0 || tol >= 1) throw std::invalid_argument("tolerance must lie in (0, 1)");
    opt.tolerance = tol.get_d();
  }
  if (c.t0 && *c.t0 != "auto") {
    Rational t = parse_exact_number(*c.t0);
    if (t <= 0 || t > 1) throw std::invalid_argument("t0 must lie in (0, 1] or be 'auto'");
    opt.t0 = t;
  }
  if (c.seed) opt.seed = *c.seed;
  if (c.max_halvings) {
    if (*c.max_halvings > 40) throw std::invalid_argument("max_halvings must be at most 40");
    opt.max_halvings = *c.max_halvings;
  }
  return opt;
}

inline double effective_tolerance(const CoveringOptions& opt) {
  return opt.tolerance ? *opt.tolerance : std::ldexp(1.0, -static_cast<int>(opt.precision / 2));
}

/// 0 definite, 2 Undetermined, 3 invalid or non-convenient input.
inline int exit_code(const AnalysisReport& rep) {
  if (!rep.convenient) return 3;
  return rep.verdict.definite() ? 0 : 2;
}

using Json = nlohmann::json;

inline Json verdict_diagnostics(const AnalysisReport& rep) {
  Json d = Json::array();
  d.push_back("verdict source: " + rep.verdict.source);
  for (const auto& r : rep.verdict.reasons) d.push_back(r);
  for (const auto& v : rep.evidence) {
    std::string line = "evidence " + v.source + ": " + to_string(v.tag);
    if (v.lower_bound) line += " (lower bound " + std::to_string(*v.lower_bound) + ")";
    d.push_back(line);
  }
  if (rep.covering && rep.covering->t0)
    d.push_back("covering stabilized at t0 = " + to_string(*rep.covering->t0) + " after " +
                std::to_string(rep.covering->halvings) + " halvings");
  for (const auto& s : rep.diagnostics) d.push_back(s);
  return d;
}

/// The report document with keys {input, convenient, p, discriminant, discriminant_reduced, components,
/// verdict, imc, lower_bound, diagnostics, config}. Contains no floating-point numbers, so its dump is canonical.
inline Json to_json(const AnalysisReport& rep) {
  Json j;
  const auto& in = rep.input;
  Json input;
  input["name"] = in.name;
  input["equation"] = in.equation;
  input["variables"] = in.variables;
  std::vector<std::string> cover;
  for (const auto& v : in.variables)
    if (v != in.fiber) cover.push_back(v);
  input["cover"] = cover;
  input["fiber"] = in.fiber;
  input["normal"] = in.normal ? Json(*in.normal) : Json(nullptr);
  input["family"] = in.family.empty() ? Json(nullptr) : Json(in.family);
  j["input"] = input;
  j["convenient"] = rep.convenient;
  j["p"] = rep.p;
  j["discriminant"] = rep.discriminant ? Json(rep.discriminant->str()) : Json(nullptr);
  j["discriminant_reduced"] = rep.reduced ? Json(rep.reduced->str()) : Json(nullptr);
  Json comps = Json::array();
  if (rep.covering) {
    for (const auto& c : rep.covering->components) {
      Json cj;
      cj["tangent"] = c.tangent_label();
      cj["mult"] = c.mult;
      Json br = Json::array();
      for (const auto& b : c.branches) br.push_back({{"mult", b.mult}, {"q", b.q}});
      cj["branches"] = br;
      cj["r"] = c.r ? Json(*c.r) : Json(nullptr);
      cj["sum_q_mult"] = c.sum_q_mult;
      cj["inequality_holds"] = c.r ? Json(inequality_holds(rep.p, *c.r, c.sum_q_mult)) : Json(nullptr);
      comps.push_back(cj);
    }
  }
  j["components"] = comps;
  j["verdict"] = rep.convenient ? to_string(rep.verdict.tag) : "Invalid";
  j["imc"] = rep.verdict.imc ? Json(to_string(*rep.verdict.imc)) : Json(nullptr);
  j["lower_bound"] = rep.verdict.lower_bound ? Json(*rep.verdict.lower_bound) : Json(nullptr);
  Json diag = verdict_diagnostics(rep);
  if (!rep.convenient) diag = Json::array({"not convenient: " + rep.convenience_diagnostic});
  j["diagnostics"] = diag;
  Json cfg;
  cfg["precision"] = rep.config.precision;
  Rational tol;
  mpq_set_d(tol.get_mpq_t(), effective_tolerance(rep.config));
  cfg["tolerance"] = to_string(tol);
  cfg["t0"] = rep.config.t0 ? to_string(*rep.config.t0) : std::string("auto");
  cfg["seed"] = rep.config.seed;
  cfg["max_halvings"] = rep.config.max_halvings;
  j["config"] = cfg;
  return j;
}

inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

/// Human-readable report.
inline std::string to_text(const AnalysisReport& rep) {
  std::ostringstream os;
  const auto& in = rep.input;
  os << "germ      " << (in.name.empty() ? "" : in.name + ": ") << in.equation << "\n";
  os << "covering  forget " << in.fiber << ", p = " << rep.p << "\n";
  if (!rep.convenient) {
    os << "invalid   not convenient: " << rep.convenience_diagnostic << "\n";
    return os.str();
  }
  if (rep.discriminant) os << "Delta     " << rep.discriminant->str() << "\n";
  if (rep.reduced) os << "Delta_red " << rep.reduced->str() << "\n";
  if (rep.covering) {
    for (std::size_t k = 0; k < rep.covering->components.size(); ++k) {
      const auto& c = rep.covering->components[k];
      os << "  component " << k << "  tangent " << c.tangent_label() << "  mult " << c.mult << "  branches";
      for (const auto& b : c.branches) os << " (mult " << b.mult << ", q " << b.q << ")";
      os << "  r " << (c.r ? std::to_string(*c.r) : "?") << "  sum q*mult " << c.sum_q_mult;
      if (c.r) os << (inequality_holds(rep.p, *c.r, c.sum_q_mult) ? "  p > r-1+sum" : "  p <= r-1+sum");
      os << "\n";
    }
  }
  for (const auto& v : rep.evidence) {
    os << "  " << v.source << ": " << to_string(v.tag);
    if (!v.reasons.empty()) os << " (" << v.reasons.front() << ")";
    os << "\n";
  }
  os << "verdict   " << to_string(rep.verdict.tag);
  if (rep.verdict.lower_bound) os << ", at least " << *rep.verdict.lower_bound << " fast loop(s)";
  os << "\n";
  if (rep.verdict.imc) os << "imc       " << to_string(*rep.verdict.imc) << "\n";
  for (const auto& d : rep.diagnostics) os << "note      " << d << "\n";
  os << "timing   ";
  for (const auto& t : rep.timings) os << " " << t.stage << "=" << static_cast<long>(t.seconds * 1000) << "ms";
  os << "\n";
  return os.str();
}

}  // namespace fastloop
