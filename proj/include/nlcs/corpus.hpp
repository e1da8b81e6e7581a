#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "constraint.hpp"

namespace nlcs {

/// A generated instance with its status known by construction.
struct CorpusInstance {
  std::string name;
  ConstraintSystem system;
  bool sat = false;
  std::size_t core_size = 0;  ///< size of the planted contradiction (UNSAT only)
};

namespace detail {

/// Random polynomial, total degree <= 2, coefficients in [-3, 3], never constant.
inline MultiPoly corpus_poly(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> coef(-3, 3), terms(2, 4), deg(1, 2);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  while (true) {
    MultiPoly p(n);
    for (int t = terms(rng); t-- > 0;) {
      Monomial m(n, 0);
      for (int k = deg(rng); k-- > 0;) ++m[var(rng)];
      p += MultiPoly::term(m, coef(rng));
    }
    p += MultiPoly::constant(n, coef(rng));
    if (!p.is_constant()) return p;
  }
}

/// A relation that p satisfies at w; sometimes shifts p to vanish there.
inline Constraint constraint_through(std::mt19937& rng, MultiPoly p, const std::vector<Rational>& w) {
  std::uniform_int_distribution<int> pick(0, 5);
  int k = pick(rng);
  const std::size_t n = p.nvars();
  if (k == 0) return {p - MultiPoly::constant(n, p.evaluate(w)), Relation::Eq, 0};
  Rational v = p.evaluate(w);
  if (v == 0) return {p, k % 2 ? Relation::Le : Relation::Ge, 0};
  if (v > 0) return {p, k % 2 ? Relation::Gt : (k == 2 ? Relation::Ne : Relation::Ge), 0};
  return {p, k % 2 ? Relation::Lt : (k == 2 ? Relation::Ne : Relation::Le), 0};
}

/// Small contradictions over variables i, j.
inline std::vector<Constraint> planted_core(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> kind(0, 3), c(-3, 3);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  const std::size_t i = var(rng), j = var(rng);
  auto X = [&](std::size_t v) { return MultiPoly::var(n, v); };
  auto K = [&](long v) { return MultiPoly::constant(n, v); };
  switch (kind(rng)) {
    case 0: {  // p >= a, p <= a - 1
      MultiPoly p = corpus_poly(rng, n);
      long a = c(rng);
      return {{p - K(a), Relation::Ge, 0}, {p - K(a - 1), Relation::Le, 0}};
    }
    case 1:  // disk and a far half-plane
      return {{X(i) * X(i) + X(j) * X(j) - K(4), Relation::Le, 0}, {X(i) - K(3), Relation::Ge, 0}};
    case 2:  // positive quadrant, negative product
      return {{X(i), Relation::Gt, 0}, {X(j), Relation::Gt, 0}, {X(i) * X(j) + K(1), Relation::Lt, 0}};
    default: {  // parabola above a line that it never reaches
      return {{X(i) - X(j) * X(j), Relation::Le, 0}, {X(i) - K(2), Relation::Ge, 0}, {X(j) * X(j) - K(1), Relation::Le, 0}};
    }
  }
}

}  // namespace detail

/// Deterministic desk corpus: `count` instances, 1-3 variables, total
/// degree <= 2, 2-10 constraints, every second one UNSAT.
inline std::vector<CorpusInstance> generate_corpus(std::size_t count, unsigned seed = 2024) {
  std::mt19937 rng(seed);
  std::vector<CorpusInstance> out;
  std::uniform_int_distribution<int> num(-3, 3);
  for (std::size_t t = 0; t < count; ++t) {
    CorpusInstance inst;
    const std::size_t n = 1 + t % 3;
    std::size_t m = 2 + (t * 7) % 9;
    if (n == 3) m = std::min<std::size_t>(m, 6);
    inst.sat = t % 2 == 0;
    std::vector<Rational> w;
    for (std::size_t k = 0; k < n; ++k) w.emplace_back(num(rng));
    std::vector<Constraint> cs;
    if (!inst.sat) {
      cs = detail::planted_core(rng, n);
      inst.core_size = cs.size();
    }
    while (cs.size() < m) {
      Constraint c = detail::constraint_through(rng, detail::corpus_poly(rng, n), w);
      std::uniform_int_distribution<std::size_t> pos(0, cs.size());
      cs.insert(cs.begin() + static_cast<std::ptrdiff_t>(pos(rng)), c);
    }
    for (std::size_t k = 0; k < cs.size(); ++k) cs[k].id = k + 1;
    for (std::size_t k = 0; k < n; ++k) inst.system.variables.push_back("x" + std::to_string(k + 1));
    inst.system.constraints = std::move(cs);
    inst.system.num_original = inst.system.constraints.size();
    char buf[32];
    std::snprintf(buf, sizeof buf, "desk%03zu.nra", t + 1);
    inst.name = buf;
    out.push_back(std::move(inst));
  }
  return out;
}

/// Native-format text of a system, parseable by parse_native.
inline std::string to_native(const ConstraintSystem& s, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "vars:";
  for (const auto& v : s.variables) out += " " + v;
  out += "\n";
  for (const auto& c : s.constraints) out += s.to_string(c) + "\n";
  return out;
}

}  // namespace nlcs
