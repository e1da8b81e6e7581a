#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "constraint.hpp"
#include "decision.hpp"
#include "engine.hpp"
#include "errors.hpp"

namespace nlcs {

/// Rows are test points, columns constraint ids 1..cols; entry 1 means the
/// constraint is violated at that point. Rows already hit by a mandatory
/// column are left out.
struct EvaluationMatrix {
  std::size_t cols = 0;
  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<std::size_t> mandatory;  ///< sorted ids forced into every conflict set
};

inline EvaluationMatrix build_matrix(const Trace& trace, std::size_t m) {
  EvaluationMatrix M;
  M.cols = std::max(m, trace.num_columns);
  std::set<std::size_t> mand;
  for (const auto& l : trace.local_conflicts) mand.insert(l.begin(), l.end());
  M.mandatory.assign(mand.begin(), mand.end());
  for (const auto& row : trace.rows) {
    std::vector<std::uint8_t> r(M.cols, 0);
    bool hit = false;
    for (std::size_t i = 0; i < row.entries.size(); ++i) {
      // Entries of constraints the point does not reach count as 0.
      r[i] = row.entries[i] == Entry::Violated ? 1 : 0;
      hit = hit || (r[i] && mand.count(i + 1));
    }
    if (!hit) M.rows.push_back(std::move(r));
  }
  return M;
}

inline EvaluationMatrix build_matrix(const Decision& d, std::size_t m) {
  if (d.status != Status::Unsat) throw NlcsError("evaluation matrix needs an UNSAT trace");
  return build_matrix(d.trace, m);
}

enum class CoverMethod { Exact, Greedy };

inline const char* to_string(CoverMethod c) { return c == CoverMethod::Exact ? "exact" : "greedy"; }

struct ConflictSet {
  std::vector<std::size_t> ids;  ///< sorted
  CoverMethod method = CoverMethod::Exact;
  bool verified = false;
  bool minimality_certified = true;  ///< cleared when a minimization probe was inconclusive
};

namespace detail {

/// Residual covering problem: for each row, the columns hitting it.
struct CoverProblem {
  std::size_t cols = 0;
  std::vector<std::vector<std::size_t>> rows;  // column indices, ascending
};

/// Rows not hit by a mandatory column. With `reduce`, duplicate rows and
/// rows containing another row go too; that changes no cover but would
/// alter the greedy counts.
inline CoverProblem residual(const EvaluationMatrix& M, bool reduce) {
  CoverProblem p;
  p.cols = M.cols;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> all;
  for (const auto& r : M.rows) {
    std::vector<std::size_t> cs;
    bool forced = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!r[i]) continue;
      cs.push_back(i);
      forced = forced || std::binary_search(M.mandatory.begin(), M.mandatory.end(), i + 1);
    }
    if (cs.empty()) throw NlcsError("trace/matrix inconsistency: a test point violates no constraint");
    if (!forced && (!reduce || seen.insert(cs).second)) all.push_back(std::move(cs));
  }
  if (!reduce) {
    p.rows = std::move(all);
    return p;
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& r : all) {
    bool dominated = std::any_of(p.rows.begin(), p.rows.end(), [&](const auto& s) {
      return std::includes(r.begin(), r.end(), s.begin(), s.end());
    });
    if (!dominated) p.rows.push_back(r);
  }
  return p;
}

class CoverSearch {
 public:
  explicit CoverSearch(const CoverProblem& p) : p_(p), hits_(p.rows.size(), 0), by_col_(p.cols) {
    for (std::size_t r = 0; r < p.rows.size(); ++r)
      for (std::size_t c : p.rows[r]) by_col_[c].push_back(r);
  }

  void take(std::size_t c) {
    for (std::size_t r : by_col_[c]) ++hits_[r];
  }
  void drop(std::size_t c) {
    for (std::size_t r : by_col_[c]) --hits_[r];
  }

  /// Can the uncovered rows be covered by at most `limit` columns >= min_col?
  bool feasible(std::size_t limit, std::size_t min_col) {
    std::size_t best_row = p_.rows.size(), best_options = 0, uncovered = 0;
    for (std::size_t r = 0; r < p_.rows.size(); ++r) {
      if (hits_[r]) continue;
      ++uncovered;
      std::size_t opts = 0;
      for (std::size_t c : p_.rows[r]) opts += c >= min_col ? 1 : 0;
      if (opts == 0) return false;
      if (best_row == p_.rows.size() || opts < best_options) best_row = r, best_options = opts;
    }
    if (uncovered == 0) return true;
    if (limit == 0) return false;
    std::size_t max_cov = 0;
    for (std::size_t c = min_col; c < p_.cols; ++c) {
      std::size_t cov = 0;
      for (std::size_t r : by_col_[c]) cov += hits_[r] ? 0 : 1;
      max_cov = std::max(max_cov, cov);
    }
    if ((uncovered + max_cov - 1) / max_cov > limit) return false;
    for (std::size_t c : p_.rows[best_row]) {
      if (c < min_col) continue;
      take(c);
      bool ok = feasible(limit - 1, min_col);
      drop(c);
      if (ok) return true;
    }
    return false;
  }

 private:
  const CoverProblem& p_;
  std::vector<std::size_t> hits_;
  std::vector<std::vector<std::size_t>> by_col_;
};

inline std::vector<std::size_t> greedy_columns(const CoverProblem& p) {
  std::vector<bool> covered(p.rows.size(), false);
  std::vector<std::size_t> chosen;
  std::size_t left = p.rows.size();
  while (left > 0) {
    std::vector<std::size_t> count(p.cols, 0);
    for (std::size_t r = 0; r < p.rows.size(); ++r)
      if (!covered[r])
        for (std::size_t c : p.rows[r]) ++count[c];
    auto c = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
    chosen.push_back(c);
    for (std::size_t r = 0; r < p.rows.size(); ++r)
      if (!covered[r] && std::binary_search(p.rows[r].begin(), p.rows[r].end(), c)) covered[r] = true, --left;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

inline std::vector<std::size_t> with_mandatory(const EvaluationMatrix& M, const std::vector<std::size_t>& cols) {
  std::set<std::size_t> ids(M.mandatory.begin(), M.mandatory.end());
  for (std::size_t c : cols) ids.insert(c + 1);
  return {ids.begin(), ids.end()};
}

}  // namespace detail

/// Greedy set cover: repeatedly the column hitting most uncovered rows, lowest id on ties.
inline ConflictSet cover_greedy(const EvaluationMatrix& M) {
  ConflictSet cs;
  cs.method = CoverMethod::Greedy;
  cs.ids = detail::with_mandatory(M, detail::greedy_columns(detail::residual(M, false)));
  return cs;
}

/// Minimum cover by branch and bound; among minimum covers the
/// lexicographically smallest id set.
inline ConflictSet cover_exact(const EvaluationMatrix& M) {
  const detail::CoverProblem p = detail::residual(M, true);
  detail::CoverSearch s(p);
  const std::size_t upper = detail::greedy_columns(p).size();
  std::size_t size = 0;
  while (size < upper && !s.feasible(size, 0)) ++size;
  std::vector<std::size_t> chosen;
  std::size_t next = 0;
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t c = next; c < p.cols; ++c) {
      s.take(c);
      if (s.feasible(size - k - 1, c + 1)) {
        chosen.push_back(c);
        next = c + 1;
        break;
      }
      s.drop(c);
    }
  }
  if (chosen.size() != size) throw std::logic_error("cover_exact: lexicographic reconstruction failed");
  ConflictSet cs;
  cs.method = CoverMethod::Exact;
  cs.ids = detail::with_mandatory(M, chosen);
  return cs;
}

/// True when every matrix row has a 1 in a chosen column (mandatory
/// columns included).
inline bool covers(const EvaluationMatrix& M, const std::vector<std::size_t>& ids) {
  for (const auto& r : M.rows) {
    bool hit = false;
    for (std::size_t id : ids) hit = hit || (id >= 1 && id <= r.size() && r[id - 1]);
    if (!hit) return false;
  }
  return true;
}

enum class Verdict { Verified, Refuted, Inconclusive };

inline Verdict verify_conflict(const ConstraintSystem& sys, ConflictSet& cs, const EngineOptions& opt = {}) {
  Decision d = decide(sys.restricted(cs.ids), opt);
  cs.verified = d.status == Status::Unsat;
  switch (d.status) {
    case Status::Unsat: return Verdict::Verified;
    case Status::Sat: return Verdict::Refuted;
    case Status::Unknown: return Verdict::Inconclusive;
  }
  return Verdict::Inconclusive;
}

/// Drops ids one at a time while the rest stays UNSAT. A probe that ends
/// Unknown keeps the id and clears minimality_certified.
inline ConflictSet minimize_dropwise(const ConstraintSystem& sys, ConflictSet cs, const EngineOptions& opt = {}) {
  for (std::size_t i = 0; i < cs.ids.size() && cs.ids.size() > 1;) {
    std::vector<std::size_t> rest = cs.ids;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    Status st = decide(sys.restricted(rest), opt).status;
    if (st == Status::Unsat) {
      cs.ids = std::move(rest);
    } else {
      if (st == Status::Unknown) cs.minimality_certified = false;
      ++i;
    }
  }
  return cs;
}

struct ConflictOptions {
  EngineOptions engine;
  CoverMethod cover = CoverMethod::Exact;
  bool minimize = false;
  bool verify = false;
};

struct ConflictResult {
  Decision decision;
  std::optional<ConflictSet> conflict;  ///< present iff UNSAT
  std::optional<Verdict> verification;
  std::size_t matrix_rows = 0, matrix_cols = 0;
  std::vector<std::size_t> mandatory;
};

/// Preprocess, decide, and on UNSAT cover the evaluation matrix of the trace.
inline ConflictResult extract_conflict(const ConstraintSystem& sys, const ConflictOptions& opt = {}) {
  ConflictResult out;
  PreprocessResult pre = preprocess(sys);
  const std::size_t m = std::max(sys.num_original, sys.size());
  if (pre.trivially_false) {
    out.decision.status = Status::Unsat;
    out.decision.engine = "preprocess";
    out.conflict = ConflictSet{{*pre.trivially_false}, opt.cover, false, true};
    out.matrix_cols = m;
  } else {
    out.decision = decide(pre.system, opt.engine);
    if (out.decision.status != Status::Unsat) return out;
    EvaluationMatrix M = build_matrix(out.decision, m);
    out.matrix_rows = M.rows.size();
    out.matrix_cols = M.cols;
    out.mandatory = M.mandatory;
    out.conflict = opt.cover == CoverMethod::Exact ? cover_exact(M) : cover_greedy(M);
  }
  if (opt.minimize) out.conflict = minimize_dropwise(sys, *out.conflict, opt.engine);
  if (opt.verify) out.verification = verify_conflict(sys, *out.conflict, opt.engine);
  return out;
}

}  // namespace nlcs
