#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "multipoly.hpp"
#include "rational.hpp"

namespace nlcs {

enum class Relation { Lt, Le, Eq, Ne, Gt, Ge };

inline bool holds(Relation rel, Sign s) {
  switch (rel) {
    case Relation::Lt: return s == Sign::Negative;
    case Relation::Le: return s != Sign::Positive;
    case Relation::Eq: return s == Sign::Zero;
    case Relation::Ne: return s != Sign::Zero;
    case Relation::Gt: return s == Sign::Positive;
    case Relation::Ge: return s != Sign::Negative;
  }
  return false;
}

/// not (p rel 0)  <=>  p negate(rel) 0
inline Relation negate(Relation rel) {
  switch (rel) {
    case Relation::Lt: return Relation::Ge;
    case Relation::Le: return Relation::Gt;
    case Relation::Eq: return Relation::Ne;
    case Relation::Ne: return Relation::Eq;
    case Relation::Gt: return Relation::Le;
    case Relation::Ge: return Relation::Lt;
  }
  return rel;
}

/// p rel 0  <=>  -p mirror(rel) 0
inline Relation mirror(Relation rel) {
  switch (rel) {
    case Relation::Lt: return Relation::Gt;
    case Relation::Le: return Relation::Ge;
    case Relation::Gt: return Relation::Lt;
    case Relation::Ge: return Relation::Le;
    default: return rel;
  }
}

inline bool is_strict(Relation rel) {
  return rel == Relation::Lt || rel == Relation::Gt || rel == Relation::Ne;
}

inline const char* to_string(Relation rel) {
  switch (rel) {
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Eq: return "=";
    case Relation::Ne: return "!=";
    case Relation::Gt: return ">";
    case Relation::Ge: return ">=";
  }
  return "?";
}

inline std::optional<Relation> parse_relation(std::string_view s) {
  if (s == "<") return Relation::Lt;
  if (s == "<=") return Relation::Le;
  if (s == "=" || s == "==") return Relation::Eq;
  if (s == "!=") return Relation::Ne;
  if (s == ">") return Relation::Gt;
  if (s == ">=") return Relation::Ge;
  return std::nullopt;
}

/// p rel 0, tagged with its 1-based position in the original input.
struct Constraint {
  MultiPoly poly;
  Relation rel;
  std::size_t id;

  bool is_constant() const { return poly.is_constant(); }
  /// Truth value of a constant constraint.
  bool constant_truth() const { return holds(rel, sign_of(poly.constant_value())); }
  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.rel == b.rel && a.id == b.id && a.poly == b.poly;
  }
};

struct ConstraintSystem {
  std::vector<std::string> variables;
  std::vector<Constraint> constraints;
  /// Number of constraints in the original input; ids range over 1..num_original.
  std::size_t num_original = 0;

  std::size_t nvars() const { return variables.size(); }
  std::size_t size() const { return constraints.size(); }
  /// Position -> original id.
  std::vector<std::size_t> provenance() const {
    std::vector<std::size_t> p;
    for (const auto& c : constraints) p.push_back(c.id);
    return p;
  }
  std::vector<std::size_t> ids() const { return provenance(); }

  /// Subsystem keeping only the given original ids (ids and universe preserved).
  ConstraintSystem restricted(const std::vector<std::size_t>& keep) const {
    std::set<std::size_t> k(keep.begin(), keep.end());
    ConstraintSystem s;
    s.variables = variables;
    s.num_original = num_original;
    for (const auto& c : constraints)
      if (k.count(c.id)) s.constraints.push_back(c);
    return s;
  }

  /// True when every constraint holds at the rational point.
  bool satisfied_by(const std::vector<Rational>& point) const {
    for (const auto& c : constraints)
      if (!holds(c.rel, sign_of(c.poly.evaluate(point)))) return false;
    return true;
  }

  std::string to_string(const Constraint& c) const {
    return c.poly.to_string(variables) + " " + nlcs::to_string(c.rel) + " 0";
  }

  /// Same constraints with variables renamed into the given order.
  ConstraintSystem reordered(const std::vector<std::string>& order) const {
    if (order.size() != variables.size()) throw std::invalid_argument("variable order must list every variable once");
    std::vector<std::size_t> perm(variables.size());
    std::vector<bool> seen(variables.size(), false);
    for (std::size_t i = 0; i < variables.size(); ++i) {
      auto it = std::find(order.begin(), order.end(), variables[i]);
      if (it == order.end()) throw std::invalid_argument("variable order is missing '" + variables[i] + "'");
      std::size_t j = static_cast<std::size_t>(it - order.begin());
      if (seen[j]) throw std::invalid_argument("variable order repeats a variable");
      seen[j] = true;
      perm[i] = j;
    }
    ConstraintSystem s;
    s.variables = order;
    s.num_original = num_original;
    for (const auto& c : constraints) s.constraints.push_back({c.poly.permuted(perm), c.rel, c.id});
    return s;
  }
};

struct PreprocessResult {
  ConstraintSystem system;
  /// Original id of a constant constraint that is false; the input is then UNSAT.
  std::optional<std::size_t> trivially_false;
};

/// Canonical form of one constraint: integer primitive polynomial with
/// positive leading coefficient, relation mirrored when the sign flips.
inline Constraint canonical(const Constraint& c) {
  MultiPoly p = c.poly.integer_primitive();
  Relation r = c.rel;
  if (!p.is_zero() && p.leading_coefficient() < 0) {
    p = -p;
    r = mirror(r);
  }
  return {p, r, c.id};
}

/// Trivial rewriting: denominators cleared by positive scaling, sign-normalized,
/// constant constraints evaluated, duplicates dropped keeping the lowest id.
inline PreprocessResult preprocess(const ConstraintSystem& sys) {
  PreprocessResult out;
  out.system.variables = sys.variables;
  out.system.num_original = sys.num_original;
  std::vector<Constraint> sorted = sys.constraints;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Constraint& a, const Constraint& b) { return a.id < b.id; });
  for (const auto& raw : sorted) {
    Constraint c = canonical(raw);
    if (c.is_constant()) {
      if (c.constant_truth()) continue;
      out.trivially_false = c.id;
      out.system.constraints = {c};
      return out;
    }
    bool dup = std::any_of(out.system.constraints.begin(), out.system.constraints.end(),
                           [&](const Constraint& o) { return o.rel == c.rel && o.poly == c.poly; });
    if (!dup) out.system.constraints.push_back(std::move(c));
  }
  return out;
}

}  // namespace nlcs
