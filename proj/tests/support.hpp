#pragma once
// Random instance generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nlcs/constraint.hpp"
#include "nlcs/real_algebraic.hpp"

namespace testsupport {

using nlcs::ConstraintSystem;
using nlcs::MultiPoly;
using nlcs::Rational;
using nlcs::Relation;

inline std::vector<std::string> var_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
  return v;
}

/// Polynomial in n variables with total degree <= max_deg and small integer coefficients.
inline MultiPoly random_poly(std::mt19937& rng, std::size_t n, unsigned max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  MultiPoly p(n);
  for (int t = 0; t < terms; ++t) {
    nlcs::Monomial m(n, 0);
    unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) ++m[var(rng)];
    p += MultiPoly::term(m, coef(rng));
  }
  return p;
}

inline Relation random_relation(std::mt19937& rng) {
  static const Relation rels[] = {Relation::Lt, Relation::Le, Relation::Eq, Relation::Ne, Relation::Gt, Relation::Ge};
  // Equalities and disequalities are rarer than inequalities.
  std::discrete_distribution<int> d({3, 3, 1, 1, 3, 3});
  return rels[d(rng)];
}

/// Random system: n variables, m constraints, total degree <= max_deg, no constant polynomials.
inline ConstraintSystem random_system(std::mt19937& rng, std::size_t n, std::size_t m, unsigned max_deg = 2) {
  ConstraintSystem s;
  s.variables = var_names(n);
  std::uniform_int_distribution<int> terms(2, 4);
  while (s.constraints.size() < m) {
    MultiPoly p = random_poly(rng, n, max_deg, terms(rng));
    if (p.is_constant()) continue;
    s.constraints.push_back({p, random_relation(rng), s.constraints.size() + 1});
  }
  s.num_original = m;
  return s;
}

/// UNSAT system: a planted contradiction mixed with random extra constraints.
inline ConstraintSystem planted_unsat(std::mt19937& rng, std::size_t n, std::size_t extra) {
  std::uniform_int_distribution<int> kind(0, 4), c(-3, 3);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  auto X = [&](std::size_t i) { return MultiPoly::var(n, i); };
  auto K = [&](long v) { return MultiPoly::constant(n, v); };
  std::vector<std::pair<MultiPoly, Relation>> core;
  switch (kind(rng)) {
    case 0: {  // p >= a and p <= a - 1
      MultiPoly p = random_poly(rng, n, 2, 3) + X(var(rng));
      long a = c(rng);
      core = {{p - K(a), Relation::Ge}, {p - K(a - 1), Relation::Le}};
      break;
    }
    case 1: {  // sum of squares below zero
      MultiPoly l1 = X(var(rng)) + K(c(rng)), l2 = X(var(rng)) - K(c(rng));
      core = {{l1 * l1 + l2 * l2, Relation::Lt}};
      break;
    }
    case 2: {  // disk and a half-plane far away
      std::size_t i = var(rng), j = var(rng);
      core = {{X(i) * X(i) + X(j) * X(j) - K(1), Relation::Le}, {X(i) - K(2), Relation::Ge}};
      break;
    }
    case 3: {  // p = 0 and p != 0
      MultiPoly p = random_poly(rng, n, 2, 3) + X(var(rng)) * X(var(rng));
      core = {{p, Relation::Eq}, {p, Relation::Ne}};
      break;
    }
    default: {  // x > 0, y > 0, x*y < 0
      std::size_t i = var(rng), j = var(rng);
      core = {{X(i), Relation::Gt}, {X(j), Relation::Gt}, {X(i) * X(j), Relation::Lt}};
      break;
    }
  }
  ConstraintSystem s = random_system(rng, n, extra);
  std::vector<nlcs::Constraint> all = s.constraints;
  for (auto& [p, r] : core) {
    std::uniform_int_distribution<std::size_t> pos(0, all.size());
    all.insert(all.begin() + static_cast<std::ptrdiff_t>(pos(rng)), nlcs::Constraint{p, r, 0});
  }
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = i + 1;
  s.constraints = all;
  s.num_original = all.size();
  return s;
}

/// One-sided SAT oracle: random small rational points.
inline std::optional<std::vector<Rational>> random_search(const ConstraintSystem& s, std::mt19937& rng, int tries) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 4);
  for (int t = 0; t < tries; ++t) {
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < s.nvars(); ++i) pt.push_back(nlcs::make_rational(num(rng), den(rng)));
    if (s.satisfied_by(pt)) return pt;
  }
  return std::nullopt;
}

/// Exact univariate oracle: tests every real root of every constraint
/// polynomial and one rational in each gap between consecutive roots.
inline bool univariate_sat(const ConstraintSystem& s) {
  std::vector<nlcs::RealAlgebraic> pts;
  for (const auto& c : s.constraints)
    if (!c.poly.is_zero() && c.poly.degree(0) > 0)
      for (const auto& r : nlcs::isolate_real_roots(c.poly.to_upoly(0))) pts.push_back(r);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return compare(a, b) == nlcs::Ordering::Less; });
  std::vector<nlcs::RealAlgebraic> tests;
  if (pts.empty()) {
    tests.emplace_back(Rational(0));
  } else {
    tests.emplace_back(nlcs::rational_below(pts.front()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      tests.push_back(pts[i]);
      if (i + 1 < pts.size() && compare(pts[i], pts[i + 1]) == nlcs::Ordering::Less)
        tests.emplace_back(nlcs::rational_between(pts[i], pts[i + 1]));
    }
    tests.emplace_back(nlcs::rational_above(pts.back()));
  }
  for (const auto& t : tests) {
    bool ok = true;
    for (const auto& c : s.constraints) ok = ok && nlcs::holds(c.rel, nlcs::sign_at(c.poly.to_upoly(0), t));
    if (ok) return true;
  }
  return false;
}

}  // namespace testsupport
