#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fastloop {

enum class VerdictTag { NoFastLoops, FastLoop, Undetermined };
enum class ImcTag { IMC, NotIMC, Undetermined };

inline std::string to_string(VerdictTag t) {
  switch (t) {
    case VerdictTag::NoFastLoops:
      return "NoFastLoops";
    case VerdictTag::FastLoop:
      return "FastLoop";
    default:
      return "Undetermined";
  }
}

inline std::string to_string(ImcTag t) {
  switch (t) {
    case ImcTag::IMC:
      return "IMC";
    case ImcTag::NotIMC:
      return "NotIMC";
    default:
      return "Undetermined";
  }
}

/// The tangential component that violates the inequality p > r - 1 + sum q*mult.
struct Witness {
  std::size_t component = 0;
  std::string tangent;
  unsigned mult = 0;
  unsigned r = 0;
  unsigned sum_q_mult = 0;
};

struct Verdict {
  VerdictTag tag = VerdictTag::Undetermined;
  std::string source;
  std::optional<Witness> witness;
  std::optional<unsigned> lower_bound;  ///< lower bound on the number of fast loops
  std::vector<std::string> reasons;
  std::optional<ImcTag> imc;

  bool definite() const { return tag != VerdictTag::Undetermined; }

  static Verdict no_fast_loops(std::string source, std::string reason) {
    Verdict v;
    v.tag = VerdictTag::NoFastLoops;
    v.source = std::move(source);
    v.reasons.push_back(std::move(reason));
    return v;
  }
  static Verdict fast_loop(std::string source, std::string reason, unsigned lower_bound,
                           std::optional<Witness> witness = std::nullopt) {
    Verdict v;
    v.tag = VerdictTag::FastLoop;
    v.source = std::move(source);
    v.reasons.push_back(std::move(reason));
    v.lower_bound = lower_bound;
    v.witness = std::move(witness);
    return v;
  }
  static Verdict undetermined(std::string source, std::string reason) {
    Verdict v;
    v.source = std::move(source);
    v.reasons.push_back(std::move(reason));
    return v;
  }
};

}  // namespace fastloop
