#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "algebraic_point.hpp"
#include "constraint.hpp"
#include "decision.hpp"
#include "elimination.hpp"

namespace nlcs {

/// Projection factors by level: levels[k] holds squarefree, content-free
/// polynomials whose main variable is x_k.
struct ProjectionChain {
  std::size_t nvars = 0;
  std::vector<std::vector<MultiPoly>> levels;

  ProjectionChain() = default;
  explicit ProjectionChain(std::size_t n) : nvars(n), levels(n) {}

  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& l : levels) s += l.size();
    return s;
  }

  /// Splits p into its content and squarefree primitive part and files both.
  void add(const MultiPoly& p) {
    if (p.is_constant()) return;
    auto v = static_cast<std::size_t>(p.main_var());
    MultiPoly c = content(p, v);
    if (!c.is_constant()) add(c);
    MultiPoly f = squarefree_part(p, v);
    if (f.degree(v) < 1) return;
    auto& l = levels[v];
    if (std::find(l.begin(), l.end(), f) == l.end()) l.push_back(std::move(f));
  }
};

namespace detail {

/// p, red(p), red^2(p), ... stopping once the leading coefficient in v is a
/// nonzero constant (it cannot vanish, so later reducta never become relevant).
inline std::vector<MultiPoly> reducta(const MultiPoly& p, std::size_t v) {
  std::vector<MultiPoly> out{p};
  MultiPoly g = p;
  while (g.degree(v) >= 1 && !g.leading_coefficient(v).is_constant()) {
    int d = g.degree(v);
    g = g - g.leading_coefficient(v) * MultiPoly::var(g.nvars(), v, static_cast<unsigned>(d));
    if (g.degree(v) < 1) break;
    out.push_back(g);
  }
  return out;
}

/// Adds psc_0, psc_1, ... of (a, b) up to the first nonzero constant one:
/// psc_j only matters where psc_0..psc_{j-1} all vanish.
inline void add_psc_chain(ProjectionChain& ch, const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  for (const auto& s : subresultant_psc(a, b, v)) {
    if (s.is_constant() && !s.is_zero()) return;
    ch.add(s);
  }
}

}  // namespace detail

/// Projection: leading coefficients of the reducta, psc's of every reductum
/// with its derivative and psc's of every reductum of f against every other
/// factor g.
inline ProjectionChain project(const std::vector<MultiPoly>& polys, std::size_t nvars) {
  if (nvars == 0) throw std::invalid_argument("projection needs at least one variable");
  ProjectionChain ch(nvars);
  for (const auto& p : polys) ch.add(p);
  for (std::size_t k = nvars; k-- > 1;) {
    const std::vector<MultiPoly> fs = ch.levels[k];
    std::vector<std::vector<MultiPoly>> reds;
    for (const auto& f : fs) {
      reds.push_back(detail::reducta(f, k));
      for (const auto& r : reds.back()) {
        ch.add(r.leading_coefficient(k));
        if (r.degree(k) >= 2) detail::add_psc_chain(ch, r, r.derivative(k), k);
      }
    }
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j) {
        if (i == j) continue;
        if (j < i && reds[i].size() == 1 && reds[j].size() == 1) continue;  // symmetric case done once
        for (const auto& r : reds[i]) detail::add_psc_chain(ch, r, fs[j], k);
      }
  }
  return ch;
}

/// One cell of a stack: its sample coordinate and the factors vanishing on it.
struct StackCell {
  RealAlgebraic value;
  std::vector<MultiPoly> vanishing;
  bool section = false;
};

namespace detail {

/// A short rational strictly between a and b (a < b).
inline Rational simple_between(const RealAlgebraic& a, const RealAlgebraic& b) {
  Rational m = rational_between(a, b);
  for (unsigned long den = 1; den <= (1UL << 16); den *= 2) {
    const Integer d(den);
    for (const Rational& cc : {make_rational(floor_of(Rational(m * d)), d), make_rational(ceil_of(Rational(m * d)), d)}) {
      if (a.compare_rational(cc) == Ordering::Less && b.compare_rational(cc) == Ordering::Greater) return cc;
    }
  }
  return m;
}

}  // namespace detail

/// Cells of the stack over pt defined by the given factors of main variable
/// x_k, k = pt.size(): sectors interleaved with the distinct sections.
inline std::vector<StackCell> build_stack(const std::vector<MultiPoly>& factors, const AlgebraicPoint& pt) {
  struct Root {
    RealAlgebraic value;
    std::vector<MultiPoly> vanishing;
  };
  std::vector<Root> roots;
  std::vector<MultiPoly> everywhere;
  for (const auto& f : factors) {
    FiberRoots fr = roots_over(f, pt);
    if (fr.nullified) {
      everywhere.push_back(f);
      continue;
    }
    std::vector<MultiPoly> van{fr.truncated};
    if (!(fr.truncated == f)) van.push_back(f);
    std::vector<Root> merged;
    std::size_t i = 0, j = 0;
    while (i < roots.size() || j < fr.roots.size()) {
      if (j == fr.roots.size()) {
        merged.push_back(std::move(roots[i++]));
        continue;
      }
      if (i == roots.size()) {
        merged.push_back({fr.roots[j++], van});
        continue;
      }
      Ordering o = compare(roots[i].value, fr.roots[j]);
      if (o == Ordering::Less) {
        merged.push_back(std::move(roots[i++]));
      } else if (o == Ordering::Greater) {
        merged.push_back({fr.roots[j++], van});
      } else {
        for (const auto& v : van) roots[i].vanishing.push_back(v);
        merged.push_back(std::move(roots[i++]));
        ++j;
      }
    }
    roots = std::move(merged);
  }

  std::vector<StackCell> cells;
  if (roots.empty()) {
    cells.push_back({RealAlgebraic(Rational(0)), everywhere, false});
    return cells;
  }
  cells.push_back({RealAlgebraic(rational_below(roots.front().value)), everywhere, false});
  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::vector<MultiPoly> van = roots[i].vanishing;
    van.insert(van.end(), everywhere.begin(), everywhere.end());
    cells.push_back({roots[i].value, std::move(van), true});
    Rational s = i + 1 < roots.size() ? detail::simple_between(roots[i].value, roots[i + 1].value)
                                      : rational_above(roots[i].value);
    cells.push_back({RealAlgebraic(s), everywhere, false});
  }
  return cells;
}

struct CadOptions {
  bool partial = true;       ///< prune stacks above partial samples violating a constraint
  std::size_t budget = default_budget();  ///< maximum number of cells constructed
  bool record_trace = true;
};

namespace detail {

struct BudgetExceeded {};

class Lifter {
 public:
  Lifter(const ProjectionChain& chain, const ConstraintSystem& sys, const CadOptions& opt)
      : chain_(chain), sys_(sys), opt_(opt), n_(sys.nvars()), by_level_(sys.nvars() + 1) {
    std::size_t cols = sys.num_original;
    for (const auto& c : sys.constraints) cols = std::max(cols, c.id);
    for (std::size_t i = 0; i < sys.constraints.size(); ++i)
      by_level_[static_cast<std::size_t>(sys.constraints[i].poly.main_var() + 1)].push_back(i);
    entries_.assign(cols, Entry::Holds);
    for (const auto& c : sys.constraints) entries_[c.id - 1] = Entry::NotApplicable;
    out_.trace.num_columns = cols;
    out_.engine = "cad";
  }

  Decision run() {
    AlgebraicPoint pt(n_);
    try {
      out_.status = explore(pt) ? Status::Sat : Status::Unsat;
    } catch (const BudgetExceeded&) {
      out_.status = Status::Unknown;
    }
    out_.cells_or_branches = cells_;
    return std::move(out_);
  }

 private:
  bool explore(AlgebraicPoint& pt) {
    const std::size_t level = pt.size();
    bool violated_here = false;
    for (std::size_t i : by_level_[level]) {
      const Constraint& c = sys_.constraints[i];
      bool ok = holds(c.rel, sign_at(c.poly, pt));
      entries_[c.id - 1] = ok ? Entry::Holds : Entry::Violated;
      violated_here = violated_here || !ok;
      violated_ += ok ? 0 : 1;
    }
    bool sat = false;
    if (level == n_) {
      if (violated_ == 0) {
        std::vector<RealAlgebraic> w;
        for (const auto& c : pt.coords()) w.push_back(c.value);
        out_.witness = std::move(w);
        sat = true;
      }
      record(pt, false);
    } else if (violated_here && opt_.partial) {
      record(pt, true);
    } else {
      for (auto& cell : build_stack(chain_.levels[level], pt)) {
        if (++cells_ > opt_.budget) throw BudgetExceeded{};
        pt.push(cell.value, std::move(cell.vanishing));
        sat = explore(pt);
        pt.pop();
        if (sat) break;
      }
    }
    for (std::size_t i : by_level_[level]) {
      auto& e = entries_[sys_.constraints[i].id - 1];
      if (e == Entry::Violated) --violated_;
      e = Entry::NotApplicable;
    }
    return sat;
  }

  void record(const AlgebraicPoint& pt, bool compensation) {
    if (!opt_.record_trace) return;
    TraceRow row;
    row.level = pt.size();
    for (const auto& c : pt.coords()) row.point.push_back(c.value);
    row.entries = entries_;
    row.compensation = compensation;
    out_.trace.rows.push_back(std::move(row));
  }

  const ProjectionChain& chain_;
  const ConstraintSystem& sys_;
  CadOptions opt_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> by_level_;  // constraints decided once `level` coordinates are set
  std::vector<Entry> entries_;
  std::size_t violated_ = 0;
  std::size_t cells_ = 0;
  Decision out_;
};

}  // namespace detail

/// Lifts over a given chain and evaluates sys at every sample point.
inline Decision lift(const ProjectionChain& chain, const ConstraintSystem& sys, const CadOptions& opt = {}) {
  if (chain.levels.size() != sys.nvars()) throw std::invalid_argument("projection chain does not match the system");
  return detail::Lifter(chain, sys, opt).run();
}

inline Decision decide_cad(const ConstraintSystem& sys, const CadOptions& opt = {}) {
  ProjectionChain chain(sys.nvars());
  if (sys.nvars() > 0) {
    std::vector<MultiPoly> polys;
    for (const auto& c : sys.constraints) polys.push_back(c.poly);
    chain = project(polys, sys.nvars());
  }
  return lift(chain, sys, opt);
}

/// Complete decomposition over a chain: all full-dimensional-level sample
/// points and, for every stack, its level and cell count (depth-first order).
struct FullCad {
  std::vector<AlgebraicPoint> samples;
  std::vector<std::pair<std::size_t, std::size_t>> stacks;  ///< (level of the base point, cells)
  std::size_t cells = 0;
};

inline FullCad full_cad(const ProjectionChain& chain, std::size_t budget = default_budget()) {
  FullCad out;
  AlgebraicPoint pt(chain.nvars);
  auto rec = [&](auto&& self) -> void {
    if (pt.size() == chain.nvars) {
      out.samples.push_back(pt);
      return;
    }
    auto cells = build_stack(chain.levels[pt.size()], pt);
    out.stacks.emplace_back(pt.size(), cells.size());
    for (auto& cell : cells) {
      if (++out.cells > budget) throw NlcsError("cell budget exceeded");
      pt.push(cell.value, std::move(cell.vanishing));
      self(self);
      pt.pop();
    }
  };
  rec(rec);
  return out;
}

}  // namespace nlcs
