#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cad.hpp"
#include "constraint.hpp"
#include "decision.hpp"
#include "errors.hpp"

namespace nlcs {

using IdSet = std::vector<std::size_t>;  // sorted, duplicate-free

inline IdSet id_union(const IdSet& a, const IdSet& b) {
  IdSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

/// Constraint of a branch. `sources` are the input ids whose own substituted
/// form this is (they are marked violated when it is false); `origin` holds
/// every input id its derivation used, including the generators of the
/// test terms substituted into it.
struct VsConstraint {
  MultiPoly poly;
  Relation rel;
  IdSet sources;
  IdSet origin;
};

/// (a + b*sqrt(c)) / d.
struct RootExpr {
  MultiPoly a, b, c, d;
};

enum class TermKind { MinusInfinity, Standard, Epsilon };

struct Guard {
  MultiPoly poly;
  Relation rel;
  friend bool operator==(const Guard& x, const Guard& y) { return x.rel == y.rel && x.poly == y.poly; }
};

struct TestTerm {
  TermKind kind = TermKind::MinusInfinity;
  RootExpr root;
  std::vector<Guard> guards;
  MultiPoly generator;  ///< polynomial of which root is a zero
  int branch = 0;       ///< -1 / +1 picks (-b -+ sqrt D)/2a; 0 for a unique root
  IdSet sources, origin;

  std::string to_string(const std::vector<std::string>& names) const {
    if (kind == TermKind::MinusInfinity) return "-inf";
    std::string s;
    const RootExpr& r = root;
    std::string num = r.a.to_string(names);
    if (!r.b.is_zero()) num = "(" + num + ") + (" + r.b.to_string(names) + ")*sqrt(" + r.c.to_string(names) + ")";
    if (r.d == MultiPoly::constant(r.d.nvars(), 1)) {
      s = num;
    } else {
      s = "(" + num + ")/(" + r.d.to_string(names) + ")";
    }
    return kind == TermKind::Epsilon ? s + " + eps" : s;
  }
};

/// A conjunction of constraints over the variables not yet eliminated.
struct VsNode {
  std::size_t nvars = 0;
  std::vector<VsConstraint> constraints;
  std::vector<bool> eliminated;
  std::vector<std::pair<std::size_t, TestTerm>> substitution;

  static VsNode from_system(const ConstraintSystem& s) {
    VsNode n;
    n.nvars = s.nvars();
    n.eliminated.assign(s.nvars(), false);
    for (const auto& c : s.constraints) n.constraints.push_back({c.poly, c.rel, {c.id}, {c.id}});
    return n;
  }
};

namespace detail {

struct Atom {
  MultiPoly p;
  Relation rel;
};
using Conj = std::vector<Atom>;
using Dnf = std::vector<Conj>;  // {} is false, {{}} is true

inline Dnf dnf_true() { return {Conj{}}; }
inline bool is_true(const Dnf& d) {
  return std::any_of(d.begin(), d.end(), [](const Conj& c) { return c.empty(); });
}

inline Dnf atom(MultiPoly p, Relation r) {
  if (p.is_constant()) return holds(r, sign_of(p.constant_value())) ? dnf_true() : Dnf{};
  return {Conj{{std::move(p), r}}};
}

inline Dnf dnf_or(Dnf a, const Dnf& b) {
  if (is_true(a) || is_true(b)) return dnf_true();
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf r;
  for (const auto& x : a)
    for (const auto& y : b) {
      Conj c = x;
      c.insert(c.end(), y.begin(), y.end());
      r.push_back(std::move(c));
    }
  if (is_true(r)) return dnf_true();
  return r;
}

/// Every coefficient of q in v vanishes.
inline Dnf all_zero(const MultiPoly& q, std::size_t v) {
  Dnf r = dnf_true();
  for (const auto& c : q.coefficients(v)) r = dnf_and(r, atom(c, Relation::Eq));
  return r;
}

/// A + B sqrt(c) rel 0, for c >= 0.
inline Dnf sqrt_relation(const MultiPoly& A, const MultiPoly& B, const MultiPoly& c, Relation rel) {
  if (B.is_zero()) return atom(A, rel);
  MultiPoly D = A * A - B * B * c;
  switch (rel) {
    case Relation::Eq: return dnf_and(atom(A * B, Relation::Le), atom(D, Relation::Eq));
    case Relation::Ne: return dnf_or(atom(A * B, Relation::Gt), atom(D, Relation::Ne));
    case Relation::Lt:
      return dnf_or(dnf_or(dnf_and(atom(A, Relation::Lt), atom(D, Relation::Gt)),
                           dnf_and(atom(B, Relation::Lt), atom(A, Relation::Lt))),
                    dnf_and(atom(B, Relation::Lt), atom(D, Relation::Lt)));
    case Relation::Le:
      return dnf_or(dnf_and(atom(A, Relation::Le), atom(D, Relation::Ge)),
                    dnf_and(atom(B, Relation::Le), atom(D, Relation::Le)));
    case Relation::Gt: return sqrt_relation(-A, -B, c, Relation::Lt);
    case Relation::Ge: return sqrt_relation(-A, -B, c, Relation::Le);
  }
  return {};
}

/// q(root) rel 0. With k = deg_v q, d^k q(root) = A + B sqrt(c); an odd k
/// multiplies by d once more so the sign of the denominator cancels.
inline Dnf substitute_root(const MultiPoly& q, std::size_t v, const RootExpr& r, Relation rel) {
  int k = q.degree(v);
  if (k <= 0) return atom(q, rel);
  const std::size_t n = q.nvars();
  auto cs = q.coefficients(v);
  MultiPoly A(n), B(n);
  MultiPoly px = MultiPoly::constant(n, 1), py(n);  // (a + b sqrt c)^i
  std::vector<MultiPoly> dpow{MultiPoly::constant(n, 1)};
  for (int i = 1; i <= k; ++i) dpow.push_back(dpow.back() * r.d);
  for (int i = 0; i <= k; ++i) {
    if (i > 0) {
      MultiPoly nx = px * r.a + py * r.b * r.c;
      MultiPoly ny = px * r.b + py * r.a;
      px = std::move(nx);
      py = std::move(ny);
    }
    const MultiPoly& ci = cs[static_cast<std::size_t>(i)];
    if (ci.is_zero()) continue;
    MultiPoly f = ci * dpow[static_cast<std::size_t>(k - i)];
    A += f * px;
    if (!py.is_zero()) B += f * py;
  }
  if (k % 2 == 1) {
    A = A * r.d;
    B = B * r.d;
  }
  return sqrt_relation(A, B, r.c, rel);
}

inline Dnf epsilon_strict(const MultiPoly& q, std::size_t v, const RootExpr& r, Relation rel) {
  if (q.degree(v) <= 0) return atom(q, rel);
  return dnf_or(substitute_root(q, v, r, rel),
                dnf_and(substitute_root(q, v, r, Relation::Eq), epsilon_strict(q.derivative(v), v, r, rel)));
}

/// q(root + eps) rel 0 for a positive infinitesimal eps.
inline Dnf substitute_epsilon(const MultiPoly& q, std::size_t v, const RootExpr& r, Relation rel) {
  switch (rel) {
    case Relation::Eq: return all_zero(q, v);
    case Relation::Ne: {
      Dnf d;
      for (const auto& c : q.coefficients(v)) d = dnf_or(d, atom(c, Relation::Ne));
      return d;
    }
    case Relation::Lt:
    case Relation::Gt: return epsilon_strict(q, v, r, rel);
    case Relation::Le: return dnf_or(epsilon_strict(q, v, r, Relation::Lt), all_zero(q, v));
    case Relation::Ge: return dnf_or(epsilon_strict(q, v, r, Relation::Gt), all_zero(q, v));
  }
  return {};
}

inline Dnf minus_infinity_strict(const MultiPoly& q, std::size_t v, Relation rel) {
  int d = q.degree(v);
  if (d <= 0) return atom(q, rel);
  MultiPoly lc = q.leading_coefficient(v);
  MultiPoly signed_lc = d % 2 == 0 ? lc : -lc;
  MultiPoly red = q - lc * MultiPoly::var(q.nvars(), v, static_cast<unsigned>(d));
  return dnf_or(atom(signed_lc, rel), dnf_and(atom(lc, Relation::Eq), minus_infinity_strict(red, v, rel)));
}

/// q(v) rel 0 for all sufficiently negative v.
inline Dnf substitute_minus_infinity(const MultiPoly& q, std::size_t v, Relation rel) {
  switch (rel) {
    case Relation::Eq: return all_zero(q, v);
    case Relation::Ne: {
      Dnf d;
      for (const auto& c : q.coefficients(v)) d = dnf_or(d, atom(c, Relation::Ne));
      return d;
    }
    case Relation::Lt:
    case Relation::Gt: return minus_infinity_strict(q, v, rel);
    case Relation::Le: return dnf_or(minus_infinity_strict(q, v, Relation::Lt), all_zero(q, v));
    case Relation::Ge: return dnf_or(minus_infinity_strict(q, v, Relation::Gt), all_zero(q, v));
  }
  return {};
}

inline Dnf substitute_term(const MultiPoly& q, Relation rel, std::size_t v, const TestTerm& t) {
  if (!q.has_var(v)) return atom(q, rel);
  switch (t.kind) {
    case TermKind::MinusInfinity: return substitute_minus_infinity(q, v, rel);
    case TermKind::Standard: return substitute_root(q, v, t.root, rel);
    case TermKind::Epsilon: return substitute_epsilon(q, v, t.root, rel);
  }
  return {};
}

inline int max_degree(const VsNode& node, std::size_t v) {
  int d = 0;
  for (const auto& c : node.constraints) d = std::max(d, c.poly.degree(v));
  return d;
}

}  // namespace detail

/// Test terms for eliminating v: -inf, every root of every constraint
/// (guarded), and root + eps for roots of strict constraints.
inline std::vector<TestTerm> candidate_terms(const VsNode& node, std::size_t v) {
  const std::size_t n = node.nvars;
  std::vector<TestTerm> out;
  TestTerm minf;
  minf.kind = TermKind::MinusInfinity;
  out.push_back(minf);

  auto add = [&](const VsConstraint& src, RootExpr root, std::vector<Guard> guards, int branch) {
    std::vector<Guard> kept;
    for (auto& g : guards) {
      if (g.poly.is_constant()) {
        if (!holds(g.rel, sign_of(g.poly.constant_value()))) return;
        continue;
      }
      kept.push_back(std::move(g));
    }
    std::vector<TermKind> kinds{TermKind::Standard};
    if (is_strict(src.rel)) kinds.push_back(TermKind::Epsilon);
    for (TermKind k : kinds) {
      TestTerm t;
      t.kind = k;
      t.root = root;
      t.guards = kept;
      t.generator = src.poly;
      t.branch = branch;
      t.sources = src.sources;
      t.origin = src.origin;
      auto same = std::find_if(out.begin(), out.end(), [&](const TestTerm& o) {
        return o.kind == t.kind && o.branch == t.branch && o.root.a == t.root.a && o.root.b == t.root.b &&
               o.root.c == t.root.c && o.root.d == t.root.d && o.guards == t.guards && o.generator == t.generator;
      });
      if (same != out.end()) {
        same->sources = id_union(same->sources, t.sources);
        if (t.origin.size() < same->origin.size()) same->origin = t.origin;
        continue;
      }
      out.push_back(std::move(t));
    }
  };

  const MultiPoly zero(n);
  for (const auto& c : node.constraints) {
    int deg = c.poly.degree(v);
    if (deg <= 0) continue;
    if (deg > 2) throw DegreeTooHigh(v, deg);
    MultiPoly c0 = c.poly.coefficient(v, 0), c1 = c.poly.coefficient(v, 1);
    if (deg == 1) {
      add(c, {-c0, zero, zero, c1}, {{c1, Relation::Ne}}, 0);
      continue;
    }
    MultiPoly c2 = c.poly.coefficient(v, 2);
    if (!c2.is_constant() && !c1.is_zero()) add(c, {-c0, zero, zero, c1}, {{c2, Relation::Eq}, {c1, Relation::Ne}}, 0);
    MultiPoly disc = c1 * c1 - MultiPoly::constant(n, 4) * c2 * c0;
    MultiPoly den = MultiPoly::constant(n, 2) * c2;
    if (disc.is_zero()) {
      add(c, {-c1, zero, zero, den}, {{c2, Relation::Ne}}, 0);
      continue;
    }
    for (int branch : {-1, 1})
      add(c, {-c1, MultiPoly::constant(n, branch), disc, den}, {{c2, Relation::Ne}, {disc, Relation::Ge}}, branch);
  }
  return out;
}

inline std::vector<TestTerm> candidate_terms(const ConstraintSystem& sys, std::size_t v) {
  return candidate_terms(VsNode::from_system(sys), v);
}

/// Substitutes t for v in every constraint and appends the guards. Each
/// disjunct of the result becomes its own node. A constraint whose
/// substitution is false outright makes a single node holding it as a
/// constant false constraint.
inline std::vector<VsNode> virtual_substitute(const VsNode& node, std::size_t v, const TestTerm& t) {
  const std::size_t n = node.nvars;
  VsNode base;
  base.nvars = n;
  base.eliminated = node.eliminated;
  base.eliminated[v] = true;
  base.substitution = node.substitution;
  base.substitution.emplace_back(v, t);

  std::vector<std::pair<const VsConstraint*, detail::Dnf>> parts;
  std::vector<VsConstraint> falsified;
  for (const auto& c : node.constraints) {
    detail::Dnf d = detail::substitute_term(c.poly, c.rel, v, t);
    if (d.empty()) {
      falsified.push_back({MultiPoly(n), Relation::Ne, c.sources, c.poly.has_var(v) ? id_union(c.origin, t.origin) : c.origin});
      continue;
    }
    if (!detail::is_true(d)) parts.emplace_back(&c, std::move(d));
  }
  // Falsified constraints stay as constant markers next to the rest, so a
  // dead branch can still be followed to full rows.
  base.constraints = std::move(falsified);
  for (const auto& g : t.guards) base.constraints.push_back({g.poly, g.rel, t.sources, t.origin});

  std::vector<VsNode> out{base};
  for (const auto& [c, d] : parts) {
    IdSet origin = c->poly.has_var(v) ? id_union(c->origin, t.origin) : c->origin;
    std::vector<VsNode> next;
    for (const auto& partial : out)
      for (const auto& conj : d) {
        VsNode m = partial;
        for (const auto& a : conj) m.constraints.push_back({a.p, a.rel, c->sources, origin});
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  return out;
}

struct SimplifyResult {
  enum class Kind { Simplified, False, True };
  Kind kind = Kind::Simplified;
  VsNode node;
  IdSet local_conflict;  ///< origins of the constraints that clash
  IdSet violated;        ///< sources of constant constraints that are false
};

namespace detail {

inline bool compatible(Relation a, Relation b) {
  for (Sign s : {Sign::Negative, Sign::Zero, Sign::Positive})
    if (holds(a, s) && holds(b, s)) return true;
  return false;
}

}  // namespace detail

/// Canonical forms, constant evaluation, duplicate merging and detection of
/// a polynomial constrained by incompatible relations.
inline SimplifyResult simplify(const VsNode& node) {
  SimplifyResult r;
  r.node = node;
  r.node.constraints.clear();
  IdSet violated_origin;
  for (const auto& c : node.constraints) {
    MultiPoly p = c.poly.integer_primitive();
    Relation rel = c.rel;
    if (!p.is_zero() && p.leading_coefficient() < 0) {
      p = -p;
      rel = mirror(rel);
    }
    if (p.is_constant()) {
      if (!holds(rel, sign_of(p.constant_value()))) {
        r.violated = id_union(r.violated, c.sources);
        violated_origin = id_union(violated_origin, c.origin);
      }
      continue;
    }
    auto same = std::find_if(r.node.constraints.begin(), r.node.constraints.end(),
                             [&](const VsConstraint& o) { return o.rel == rel && o.poly == p; });
    if (same != r.node.constraints.end()) {
      same->sources = id_union(same->sources, c.sources);
      if (c.origin.size() < same->origin.size()) same->origin = c.origin;
      continue;
    }
    r.node.constraints.push_back({std::move(p), rel, c.sources, c.origin});
  }
  if (!r.violated.empty()) {
    r.kind = SimplifyResult::Kind::False;
    r.local_conflict = violated_origin;
    return r;
  }
  const auto& cs = r.node.constraints;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (cs[i].poly == cs[j].poly && !detail::compatible(cs[i].rel, cs[j].rel)) {
        r.kind = SimplifyResult::Kind::False;
        r.local_conflict = id_union(cs[i].origin, cs[j].origin);
        return r;
      }
  if (cs.empty()) r.kind = SimplifyResult::Kind::True;
  return r;
}

struct VsOptions {
  std::size_t budget = default_budget();  ///< maximum number of branches
  bool fallback_to_cad = true;            ///< degree above two anywhere: decide the whole input by CAD
  bool hybrid = false;                    ///< instead hand only the stuck branch to CAD
  bool full_rows = true;                  ///< keep substituting below constant-false constraints
  CadOptions cad;
};

namespace detail {

class VsSearch {
 public:
  VsSearch(const ConstraintSystem& sys, const VsOptions& opt) : sys_(sys), opt_(opt), n_(sys.nvars()) {
    std::size_t cols = sys.num_original;
    for (const auto& c : sys.constraints) cols = std::max(cols, c.id);
    out_.trace.num_columns = cols;
    out_.engine = "vs";
  }

  Decision run() {
    try {
      out_.status = search(VsNode::from_system(sys_)) ? Status::Sat : Status::Unsat;
    } catch (const BudgetExceeded&) {
      out_.status = Status::Unknown;
      out_.witness.reset();
    }
    out_.cells_or_branches = branches_ + dead_branches_;
    if (out_.status != Status::Unsat) {
      out_.trace.rows.clear();
      out_.trace.local_conflicts.clear();
    }
    return std::move(out_);
  }

 private:
  struct Step {
    std::size_t var;
    TestTerm term;
    VsNode before;
  };

  std::size_t choose_variable(const VsNode& node) const {
    std::size_t best = n_;
    int best_deg = 0;
    std::size_t best_terms = 0;
    std::size_t stuck = n_;
    int stuck_deg = 0;
    for (std::size_t v = n_; v-- > 0;) {
      if (node.eliminated[v]) continue;
      int d = max_degree(node, v);
      if (d == 0) continue;
      if (d > 2) {
        if (stuck == n_ || d < stuck_deg) stuck = v, stuck_deg = d;
        continue;
      }
      std::size_t terms = candidate_terms(node, v).size();
      if (best == n_ || d < best_deg || (d == best_deg && terms < best_terms)) {
        best = v;
        best_deg = d;
        best_terms = terms;
      }
    }
    if (best == n_) throw DegreeTooHigh(stuck, stuck_deg);
    return best;
  }

  std::string label() const {
    std::string s;
    for (const auto& st : path_) {
      if (!s.empty()) s += "; ";
      s += sys_.variables[st.var] + " = " + st.term.to_string(sys_.variables);
    }
    return s;
  }

  void add_row(const IdSet& violated, std::size_t level) {
    TraceRow row;
    row.level = level;
    row.label = label();
    row.entries.assign(out_.trace.num_columns, Entry::Holds);
    for (std::size_t id : violated) row.entries[id - 1] = Entry::Violated;
    row.compensation = level < n_;
    out_.trace.rows.push_back(std::move(row));
  }

  std::size_t eliminated_count(const VsNode& node) const {
    return static_cast<std::size_t>(std::count(node.eliminated.begin(), node.eliminated.end(), true));
  }

  bool search(const VsNode& node) {
    SimplifyResult s = simplify(node);
    if (s.kind == SimplifyResult::Kind::False) {
      if (!s.violated.empty()) {
        if (opt_.full_rows) {
          std::size_t left = kDeadBranchLimit;
          finish_dead(s.node, s.violated, left);
        } else {
          add_row(s.violated, eliminated_count(node));
        }
      } else {
        out_.trace.local_conflicts.push_back(s.local_conflict);
      }
      return false;
    }
    if (s.kind == SimplifyResult::Kind::True) {
      out_.witness = reconstruct(s.node, {});
      return true;
    }
    const VsNode& cur = s.node;
    std::size_t v;
    try {
      v = choose_variable(cur);
    } catch (const DegreeTooHigh&) {
      if (!opt_.hybrid) throw;
      return delegate(cur);
    }
    for (const auto& t : candidate_terms(cur, v)) {
      for (const auto& child : virtual_substitute(cur, v, t)) {
        if (++branches_ > opt_.budget) throw BudgetExceeded{};
        path_.push_back({v, t, cur});
        bool sat = search(child);
        path_.pop_back();
        if (sat) return true;
      }
    }
    return false;
  }

  static constexpr std::size_t kDeadBranchLimit = 64;

  /// Below a constant-false constraint the branch cannot be SAT, but its
  /// row only says which constraints failed so far. Substituting on until
  /// every variable is gone gives rows that say more, hence smaller covers.
  /// Out of budget or stuck on degree, the partial row stands.
  void finish_dead(const VsNode& node, const IdSet& dead, std::size_t& left) {
    SimplifyResult s = simplify(node);
    IdSet violated = id_union(dead, s.violated);
    if (s.node.constraints.empty() || (s.kind == SimplifyResult::Kind::False && s.violated.empty()) ||
        left == 0 || dead_branches_ >= opt_.budget) {
      add_row(violated, eliminated_count(node));
      return;
    }
    const VsNode& cur = s.node;
    std::size_t v;
    try {
      v = choose_variable(cur);
    } catch (const DegreeTooHigh&) {
      add_row(violated, eliminated_count(node));
      return;
    }
    for (const auto& t : candidate_terms(cur, v)) {
      for (const auto& child : virtual_substitute(cur, v, t)) {
        ++dead_branches_;
        if (left > 0) --left;
        path_.push_back({v, t, cur});
        finish_dead(child, violated, left);
        path_.pop_back();
      }
    }
  }

  /// Hybrid mode: the branch's conjunction goes to CAD; its rows are
  /// credited to the sources of the branch constraints.
  bool delegate(const VsNode& node) {
    ConstraintSystem sub;
    sub.variables = sys_.variables;
    for (std::size_t i = 0; i < node.constraints.size(); ++i)
      sub.constraints.push_back({node.constraints[i].poly, node.constraints[i].rel, i + 1});
    sub.num_original = sub.constraints.size();
    Decision d = decide_cad(sub, opt_.cad);
    branches_ += d.cells_or_branches;
    if (d.status == Status::Unknown) throw BudgetExceeded{};
    if (d.status == Status::Sat) {
      out_.witness = reconstruct(node, *d.witness);
      return true;
    }
    for (const auto& row : d.trace.rows) {
      IdSet violated;
      for (std::size_t i = 0; i < row.entries.size(); ++i)
        if (row.entries[i] == Entry::Violated) violated = id_union(violated, node.constraints[i].sources);
      add_row(violated, n_);
    }
    return false;
  }

  /// Realizes the test terms on the path from the last eliminated variable
  /// back to the first. Free variables take `free_values` (CAD hand-off) or 0.
  std::vector<RealAlgebraic> reconstruct(const VsNode& leaf, const std::vector<RealAlgebraic>& free_values) {
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < n_; ++v)
      if (!leaf.eliminated[v]) order.push_back(v);
    const std::size_t nfree = order.size();
    for (std::size_t i = path_.size(); i-- > 0;) order.push_back(path_[i].var);
    std::vector<std::size_t> perm(n_);
    for (std::size_t i = 0; i < n_; ++i) perm[order[i]] = i;
    auto P = [&](const MultiPoly& p) { return p.permuted(perm); };

    AlgebraicPoint pt(n_);
    for (std::size_t i = 0; i < nfree; ++i) pt.push(free_values.empty() ? RealAlgebraic(Rational(0)) : free_values[order[i]]);

    auto satisfied = [&](const VsNode& node) {
      for (const auto& c : node.constraints)
        if (!holds(c.rel, sign_at(P(c.poly), pt))) return false;
      return true;
    };
    for (std::size_t i = path_.size(); i-- > 0;) {
      const Step& st = path_[i];
      const TestTerm& t = st.term;
      bool ok = false;
      if (t.kind == TermKind::MinusInfinity) {
        for (int k = 0; k < 256 && !ok; ++k) {
          pt.push(RealAlgebraic(Rational(-pow2(k))));
          ok = satisfied(st.before);
          if (!ok) pt.pop();
        }
      } else {
        MultiPoly g = P(t.generator);
        FiberRoots fr = roots_over(g, pt);
        if (fr.roots.empty()) throw NlcsError("witness reconstruction: test term has no real value");
        std::size_t idx = 0;
        if (fr.roots.size() == 2 && t.branch != 0) {
          auto k = static_cast<std::size_t>(pt.size());
          bool positive = sign_at(fr.truncated.leading_coefficient(k), pt) == Sign::Positive;
          idx = (t.branch < 0) == positive ? 0 : 1;
        }
        RealAlgebraic root = fr.roots[idx];
        if (t.kind == TermKind::Standard) {
          pt.push(root, {fr.truncated, g});
          ok = satisfied(st.before);
        } else {
          for (int k = 1; k < 256 && !ok; ++k) {
            Rational eps = pow2(-k);
            Rational x;
            if (!root.is_rational()) root.refine_to(eps);
            x = root.is_rational() ? Rational(*root.exact() + eps) : root.hi();
            pt.push(RealAlgebraic(x));
            ok = satisfied(st.before);
            if (!ok) pt.pop();
          }
        }
      }
      if (!ok) throw NlcsError("witness reconstruction failed");
    }
    std::vector<RealAlgebraic> w(n_);
    for (std::size_t v = 0; v < n_; ++v) w[v] = pt[perm[v]].value;
    return w;
  }

  const ConstraintSystem& sys_;
  std::size_t dead_branches_ = 0;
  VsOptions opt_;
  std::size_t n_;
  std::vector<Step> path_;
  std::size_t branches_ = 0;
  Decision out_;
};

}  // namespace detail

/// Virtual substitution with CAD fallback when a degree exceeds two.
inline Decision decide_vs(const ConstraintSystem& sys, const VsOptions& opt = {}) {
  try {
    return detail::VsSearch(sys, opt).run();
  } catch (const DegreeTooHigh&) {
    if (!opt.fallback_to_cad) throw;
    return decide_cad(sys, opt.cad);
  }
}

}  // namespace nlcs
