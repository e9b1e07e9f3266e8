#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "fastloop/families.hpp"
#include "fastloop/report.hpp"

namespace {

using namespace fastloop;

constexpr int kExitDefinite = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitInvalid = 3;

struct ConfigFlags {
  ConfigOverrides values;
  void attach(CLI::App& cmd) {
    cmd.add_option("--precision", values.precision, "working precision in bits (default 256)");
    cmd.add_option("--tolerance", values.tolerance, "relative tolerance, decimal, a/b or 2^-k (default 2^-(precision/2))");
    cmd.add_option("--t0", values.t0, "section parameter t0 as a rational, or auto");
    cmd.add_option("--seed", values.seed, "seed for random shears and lines");
    cmd.add_option("--max-halvings", values.max_halvings, "t0 halvings before giving up (default 8)");
  }
};

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

int run_analyze(const std::string& path, const ConfigFlags& flags, bool json) {
  SpecFile spec;
  CoveringOptions opt;
  try {
    spec = read_spec_file(path);
    ConfigOverrides cfg = spec.config;
    cfg.merge_from(flags.values);
    opt = covering_options(cfg);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  AnalysisReport rep;
  try {
    rep = analyze(spec.germ, opt);
  } catch (const Disagreement& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ParseError& e) {
    std::cerr << "error: " << path << ": equation: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return kExitInvalid;
  }
  if (json)
    std::cout << dump_canonical(to_json(rep));
  else
    std::cout << to_text(rep);
  if (!rep.convenient) std::cerr << "error: covering is not convenient: " << rep.convenience_diagnostic << "\n";
  return exit_code(rep);
}

std::vector<GermInput> family_members(const std::string& family, unsigned kmax, const std::vector<unsigned>& ps, unsigned dmax,
                                      unsigned n) {
  if (family == "ade") return ade_family(kmax);
  if (family == "brieskorn") return brieskorn_family(ps, dmax, n);
  if (family == "binomial") return binomial_family();
  if (family == "z_p_a1_a0") return z_p_a1_a0_family();
  throw std::invalid_argument("unknown family '" + family + "'");
}

int run_classify(const std::string& family, unsigned kmax, const std::vector<unsigned>& ps, unsigned dmax, unsigned n,
                 unsigned jobs, const ConfigFlags& flags, bool json) {
  std::vector<GermInput> members;
  CoveringOptions opt;
  try {
    members = family_members(family, kmax, ps, dmax, n);
    opt = covering_options(flags.values);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  const auto rows = classify(members, opt, jobs);
  int worst = kExitDefinite;
  for (const auto& row : rows) {
    if (row.exit == kExitInternal) worst = kExitInternal;
    else if (row.exit == kExitUndetermined && worst == kExitDefinite) worst = kExitUndetermined;
  }
  if (json) {
    Json doc;
    doc["family"] = family;
    Json list = Json::array();
    for (const auto& row : rows) {
      Json r;
      r["name"] = row.germ.name;
      r["equation"] = row.germ.equation;
      r["exit"] = row.exit;
      if (row.report)
        r["report"] = to_json(*row.report);
      else
        r["error"] = row.error;
      list.push_back(r);
    }
    doc["rows"] = list;
    std::cout << dump_canonical(doc);
    return worst;
  }
  std::size_t wname = 4, weq = 8;
  for (const auto& row : rows) {
    wname = std::max(wname, row.germ.name.size());
    weq = std::max(weq, row.germ.equation.size());
  }
  std::cout << pad("name", wname) << "  " << pad("equation", weq) << "  " << pad("verdict", 12) << "  " << pad("imc", 12)
            << "  lower_bound\n";
  for (const auto& row : rows) {
    std::cout << pad(row.germ.name, wname) << "  " << pad(row.germ.equation, weq) << "  ";
    if (!row.report) {
      std::cout << "error: " << row.error << "\n";
      continue;
    }
    const auto& v = row.report->verdict;
    std::cout << pad(row.report->convenient ? to_string(v.tag) : "Invalid", 12) << "  "
              << pad(v.imc ? to_string(*v.imc) : "-", 12) << "  " << (v.lower_bound ? std::to_string(*v.lower_bound) : "-")
              << "\n";
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast-loop and inner-metric-conic analysis of surface germs"};
  app.require_subcommand(1);

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze the germ described in a spec file");
  std::string spec_path;
  bool analyze_json = false;
  ConfigFlags analyze_flags;
  analyze_cmd->add_option("spec", spec_path, "spec file")->required();
  analyze_cmd->add_flag("--json", analyze_json, "emit the JSON report");
  analyze_flags.attach(*analyze_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "run a built-in family classifier");
  std::string family;
  bool classify_json = false;
  unsigned kmax = 8, dmax = 8, n = 2;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<unsigned> ps{2, 3};
  ConfigFlags classify_flags;
  classify_cmd->add_option("family", family, "ade, brieskorn, binomial or z_p_a1_a0")->required();
  classify_cmd->add_option("--kmax", kmax, "largest A_k / D_k index (ade)");
  classify_cmd->add_option("--p", ps, "covering degrees (brieskorn)")->delimiter(',');
  classify_cmd->add_option("--dmax", dmax, "largest exponent (brieskorn)");
  classify_cmd->add_option("--n", n, "number of base variables (brieskorn)");
  classify_cmd->add_option("--jobs", jobs, "worker threads");
  classify_cmd->add_flag("--json", classify_json, "emit JSON rows");
  classify_flags.attach(*classify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  try {
    if (*analyze_cmd) return run_analyze(spec_path, analyze_flags, analyze_json);
    return run_classify(family, kmax, ps, dmax, n, jobs, classify_flags, classify_json);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
