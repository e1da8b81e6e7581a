#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "real_algebraic.hpp"

namespace nlcs {

enum class Status { Sat, Unsat, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

/// e_i(t): whether constraint i holds at test point t.
enum class Entry : std::uint8_t { Holds = 0, Violated = 1, NotApplicable = 2 };

struct TraceRow {
  std::size_t level = 0;             ///< number of assigned variables
  std::vector<RealAlgebraic> point;  ///< CAD sample coordinates; empty for symbolic points
  std::string label;                 ///< symbolic description (virtual substitution)
  std::vector<Entry> entries;        ///< indexed by original id - 1
  bool compensation = false;         ///< partial point standing in for a pruned stack
};

/// Test-point evaluations of an UNSAT run, plus local conflict sets found by
/// simplification (original ids) that must enter the final conflict.
struct Trace {
  std::size_t num_columns = 0;
  std::vector<TraceRow> rows;
  std::vector<std::vector<std::size_t>> local_conflicts;
};

struct Decision {
  Status status = Status::Unknown;
  std::optional<std::vector<RealAlgebraic>> witness;  ///< in the system's variable order
  Trace trace;
  std::string engine;
  std::size_t cells_or_branches = 0;
};

/// Default step budget: NLCS_BUDGET when set, otherwise 200000.
inline std::size_t default_budget() {
  if (const char* env = std::getenv("NLCS_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

inline std::string entries_string(const std::vector<Entry>& e) {
  std::string s;
  for (Entry x : e) s += x == Entry::Holds ? '0' : (x == Entry::Violated ? '1' : '-');
  return s;
}

}  // namespace nlcs
