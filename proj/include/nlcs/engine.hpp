#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cad.hpp"
#include "decision.hpp"
#include "vs.hpp"

namespace nlcs {

/// auto: virtual substitution, whole problem to CAD when a degree exceeds two.
/// vs: virtual substitution drives the search; only stuck branches go to CAD.
enum class Engine { Auto, Cad, Vs };

inline const char* to_string(Engine e) {
  switch (e) {
    case Engine::Auto: return "auto";
    case Engine::Cad: return "cad";
    case Engine::Vs: return "vs";
  }
  return "?";
}

inline std::optional<Engine> parse_engine(std::string_view s) {
  if (s == "auto") return Engine::Auto;
  if (s == "cad") return Engine::Cad;
  if (s == "vs") return Engine::Vs;
  return std::nullopt;
}

struct EngineOptions {
  Engine engine = Engine::Auto;
  std::size_t budget = default_budget();
  bool partial = true;  ///< partial CAD pruning
};

inline Decision decide(const ConstraintSystem& sys, const EngineOptions& opt = {}) {
  CadOptions cad;
  cad.partial = opt.partial;
  cad.budget = opt.budget;
  if (opt.engine == Engine::Cad) return decide_cad(sys, cad);
  VsOptions vs;
  vs.budget = opt.budget;
  vs.cad = cad;
  vs.hybrid = opt.engine == Engine::Vs;
  return decide_vs(sys, vs);
}

}  // namespace nlcs
