#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "elimination.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "multipoly.hpp"
#include "real_algebraic.hpp"

namespace nlcs {

/// Coordinate i of a point in R^k: a real algebraic number plus polynomials in
/// x0..xi known to vanish at the prefix point. The first of them, when present,
/// has main variable xi and a leading coefficient that does not vanish at the
/// lower coordinates; it is the triangular defining polynomial of the coordinate.
struct Coordinate {
  RealAlgebraic value;
  std::vector<MultiPoly> vanishing;
};

/// Sample point x0..x{k-1} inside a universe of `nvars` variables.
class AlgebraicPoint {
 public:
  explicit AlgebraicPoint(std::size_t nvars) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return coords_.size(); }
  const Coordinate& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Coordinate>& coords() const { return coords_; }

  void push(const RealAlgebraic& v, std::vector<MultiPoly> vanishing = {}) {
    coords_.push_back({v, std::move(vanishing)});
  }
  void pop() { coords_.pop_back(); }
  AlgebraicPoint prefix(std::size_t k) const {
    AlgebraicPoint p(nvars_);
    p.coords_.assign(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(k));
    return p;
  }

  bool is_rational() const {
    for (const auto& c : coords_)
      if (!c.value.is_rational()) return false;
    return true;
  }
  std::vector<Rational> rational_values() const {
    std::vector<Rational> r;
    for (const auto& c : coords_) r.push_back(*c.value.exact());
    return r;
  }

  /// Substitutes every rational coordinate.
  MultiPoly substitute_rationals(const MultiPoly& p) const {
    MultiPoly r = p;
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i].value.is_rational() && r.has_var(i)) r = r.substitute(i, *coords_[i].value.exact());
    return r;
  }

  /// Enclosure of every coordinate, with unassigned variables at 0.
  std::vector<Interval> box() const {
    std::vector<Interval> b(nvars_, Interval::point(0));
    for (std::size_t i = 0; i < coords_.size(); ++i) b[i] = coords_[i].value.interval();
    return b;
  }
  void bisect_all(const std::vector<bool>& which) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (which[i]) coords_[i].value.bisect();
  }

  /// Triangular polynomial for coordinate i with rational coordinates substituted.
  MultiPoly triangular(std::size_t i) const {
    const auto& c = coords_[i];
    if (!c.vanishing.empty()) return substitute_rationals(c.vanishing.front());
    return MultiPoly::from_upoly(nvars_, i, c.value.defining());
  }

 private:
  std::size_t nvars_;
  std::vector<Coordinate> coords_;
};

/// Enclosure of p over a box.
inline Interval eval(const MultiPoly& p, const std::vector<Interval>& box) {
  Interval acc = Interval::point(0);
  for (const auto& [m, c] : p.terms()) {
    Interval t = Interval::point(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t = t * pow(box[i], m[i]);
    acc = acc + t;
  }
  return acc;
}

/// Exact sign of p at pt; p may only involve x0..x{k-1}.
inline Sign sign_at(const MultiPoly& p, const AlgebraicPoint& pt, bool known_nonzero = false);

namespace detail {

/// p without the leading terms in v whose coefficients vanish at pt.
inline MultiPoly trim_at(const MultiPoly& p, std::size_t v, const AlgebraicPoint& pt) {
  auto cs = p.coefficients(v);
  while (!cs.empty() && sign_at(cs.back(), pt) == Sign::Zero) cs.pop_back();
  return MultiPoly::from_coefficients(p.nvars(), v, cs);
}

/// gcd in x_v of a and b specialized at pt (pt.size() == v), up to a factor
/// nonzero at pt.
inline MultiPoly gcd_at(MultiPoly a, MultiPoly b, std::size_t v, const AlgebraicPoint& pt) {
  a = trim_at(a, v, pt);
  b = trim_at(b, v, pt);
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree(v) <= 0) return MultiPoly::constant(a.nvars(), 1);
    MultiPoly r = trim_at(prem(a, b, v), v, pt);
    a = std::move(b);
    b = r.is_zero() ? r : r.integer_primitive();
  }
  return a;
}

/// Pseudo-quotient of a by g in x_v: lc(g)^e a = q g + rem.
inline MultiPoly pquo(const MultiPoly& a, const MultiPoly& g, std::size_t v) {
  const MultiPoly lc = g.leading_coefficient(v);
  const int dg = g.degree(v);
  MultiPoly q(a.nvars()), rem = a;
  while (!rem.is_zero() && rem.degree(v) >= dg) {
    MultiPoly m = rem.leading_coefficient(v) * MultiPoly::var(a.nvars(), v, static_cast<unsigned>(rem.degree(v) - dg));
    q = q * lc + m;
    rem = rem * lc - m * g;
  }
  return q;
}

/// The factor t shares with r for every value of x_{>v}, at the point below v.
inline MultiPoly shared_factor(const MultiPoly& t, const MultiPoly& r, std::size_t v, const AlgebraicPoint& below) {
  std::map<Monomial, MultiPoly> groups;  // coefficients of r as a polynomial in x_{v+1}, ...
  const std::size_t n = r.nvars();
  for (const auto& [m, c] : r.terms()) {
    Monomial hi(n, 0), lo(n, 0);
    for (std::size_t k = 0; k < n; ++k) (k > v ? hi : lo)[k] = m[k];
    auto it = groups.try_emplace(hi, MultiPoly(n)).first;
    it->second += MultiPoly::term(lo, c);
  }
  MultiPoly g = t;
  for (const auto& [m, c] : groups) {
    g = gcd_at(g, c, v, below);
    if (g.degree(v) < 1) break;
  }
  return g;
}

inline std::vector<bool> irrational_vars(const MultiPoly& p, const AlgebraicPoint& pt) {
  std::vector<bool> s = p.var_set();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] && (i >= pt.size() || pt[i].value.is_rational())) s[i] = false;
  return s;
}

/// Eliminates x_{upto-1}..x_0 from `r` with the triangular polynomials of pt.
/// A resultant can be nonzero yet vanish identically further down, when a
/// defining polynomial shares a spurious root with r at a lower coordinate;
/// the alternatives at each level are then tried in turn. Returns nullopt
/// when every combination collapses to zero.
inline std::optional<MultiPoly> eliminate_down(const MultiPoly& r, const AlgebraicPoint& pt, std::size_t upto) {
  std::size_t i = upto;
  while (i > 0 && !r.has_var(i - 1)) --i;
  if (i == 0) return r;
  --i;
  const auto& c = pt[i];
  if (c.value.is_rational()) return eliminate_down(r.substitute(i, *c.value.exact()), pt, i);
  std::vector<MultiPoly> options;
  for (const auto& v : c.vanishing)
    if (v.degree(i) >= 1) options.push_back(pt.substitute_rationals(v));
  options.push_back(MultiPoly::from_upoly(pt.nvars(), i, c.value.defining()));
  for (const auto& t : options) {
    MultiPoly res = resultant(r, t, i);
    if (res.is_zero()) continue;
    if (auto done = eliminate_down(res.normalized(), pt, i)) return done;
  }
  // Every option collapsed: the polynomial defining x_i has a spurious root
  // that r shares over the point below. Divide that factor out and retry.
  AlgebraicPoint below = pt.prefix(i), upto_i = pt.prefix(i + 1);
  for (const auto& t : options) {
    MultiPoly g = shared_factor(t, r, i, below);
    if (g.degree(i) < 1) continue;
    MultiPoly t2 = pquo(t, g, i);
    if (t2.degree(i) < 1 || sign_at(t2, upto_i) != Sign::Zero) continue;
    MultiPoly res = resultant(r, t2.integer_primitive(), i);
    if (res.is_zero()) continue;
    if (auto done = eliminate_down(res.normalized(), pt, i)) return done;
  }
  return std::nullopt;
}

inline std::optional<MultiPoly> eliminate_down(const MultiPoly& r, const AlgebraicPoint& pt) {
  return eliminate_down(r, pt, pt.size());
}

}  // namespace detail

inline Sign sign_at(const MultiPoly& p, const AlgebraicPoint& pt, bool known_nonzero) {
  MultiPoly q = pt.substitute_rationals(p);
  if (q.is_constant()) return sign_of(q.constant_value());
  int mv = q.main_var();
  if (static_cast<std::size_t>(mv) >= pt.size()) throw std::logic_error("sign_at: polynomial exceeds the point's level");

  std::vector<bool> vars = detail::irrational_vars(q, pt);
  int nvars_used = 0;
  for (bool b : vars) nvars_used += b ? 1 : 0;
  if (nvars_used == 1) return sign_at(q.to_upoly(static_cast<std::size_t>(mv)), pt[static_cast<std::size_t>(mv)].value);

  if (!known_nonzero) {
    // Structural zero: q is a multiple of a polynomial known to vanish here.
    for (std::size_t i = 0; i <= static_cast<std::size_t>(mv); ++i) {
      for (const auto& v : pt[i].vanishing) {
        MultiPoly vv = pt.substitute_rationals(v);
        if (!vv.is_constant() && divide_exact(q, vv)) return Sign::Zero;
      }
    }
  }

  for (int round = 0; round < (known_nonzero ? 1 << 30 : 6); ++round) {
    if (auto s = eval(q, pt.box()).definite_sign()) return *s;
    pt.bisect_all(vars);
  }

  // Norm: r(t) has q(pt) among its roots, where t is a fresh last variable.
  const std::size_t n = pt.nvars();
  MultiPoly qe = q.extended(n + 1);
  AlgebraicPoint ext(n + 1);
  for (const auto& c : pt.coords()) {
    std::vector<MultiPoly> van;
    for (const auto& v : c.vanishing) van.push_back(v.extended(n + 1));
    ext.push(c.value, std::move(van));
  }
  MultiPoly t = MultiPoly::var(n + 1, n) - qe;
  auto r = detail::eliminate_down(t, ext);
  if (!r) throw NlcsError("sign determination failed: degenerate norm");
  UPoly norm = r->to_upoly(n);
  if (norm.sign_at(0) != Sign::Zero) {
    while (true) {
      if (auto s = eval(q, pt.box()).definite_sign()) return *s;
      pt.bisect_all(vars);
    }
  }
  UPoly sq = squarefree_part(norm);
  auto seq = sturm_sequence(sq);
  while (true) {
    Interval e = eval(q, pt.box());
    if (auto s = e.definite_sign(); s && *s != Sign::Zero) return *s;
    if (count_roots_closed(sq, seq, e.lo, e.hi) == 1) return Sign::Zero;
    pt.bisect_all(vars);
  }
}

/// Real roots of p(pt, x_k) for k = pt.size(), with p of main variable x_k.
struct FiberRoots {
  bool nullified = false;       ///< p(pt, x_k) is identically zero
  MultiPoly truncated;          ///< p with coefficients vanishing at pt removed
  std::vector<RealAlgebraic> roots;
};

inline FiberRoots roots_over(const MultiPoly& p, const AlgebraicPoint& pt) {
  const std::size_t k = pt.size();
  const std::size_t n = pt.nvars();
  FiberRoots out;
  MultiPoly f = pt.substitute_rationals(p);
  auto cs = f.coefficients(k);
  while (!cs.empty() && sign_at(cs.back(), pt) == Sign::Zero) cs.pop_back();
  if (cs.empty()) {
    out.nullified = true;
    out.truncated = MultiPoly(n);
    return out;
  }
  f = MultiPoly::from_coefficients(n, k, cs);
  out.truncated = f;
  if (cs.size() == 1) return out;

  bool univariate = true;
  for (std::size_t i = 0; i < k; ++i)
    if (f.has_var(i)) univariate = false;
  if (univariate) {
    out.roots = isolate_real_roots(f.to_upoly(k));
    return out;
  }

  std::vector<Sign> signs;
  for (const auto& s : sturm_habicht_principal(f, k)) signs.push_back(sign_at(s, pt));
  const int expected = sturm_habicht_count(signs);
  if (expected == 0) return out;

  auto r = detail::eliminate_down(f, pt);
  if (!r) throw NlcsError("root isolation failed: degenerate norm over sample point");
  std::vector<RealAlgebraic> cands = isolate_real_roots(r->to_upoly(k));

  std::vector<RealAlgebraic> confirmed, pending;
  for (const auto& c : cands) {
    if (c.is_rational()) {
      if (sign_at(f.substitute(k, *c.exact()), pt) == Sign::Zero) confirmed.push_back(c);
    } else {
      pending.push_back(c);
    }
  }
  std::vector<bool> vars = detail::irrational_vars(f, pt);
  while (confirmed.size() + pending.size() > static_cast<std::size_t>(expected)) {
    std::vector<RealAlgebraic> keep;
    auto base = pt.box();
    for (const auto& c : pending) {
      base[k] = c.interval();
      if (eval(f, base).contains_zero()) keep.push_back(c);
    }
    pending = std::move(keep);
    if (confirmed.size() + pending.size() <= static_cast<std::size_t>(expected)) break;
    pt.bisect_all(vars);
    for (const auto& c : pending) c.bisect();
  }
  if (confirmed.size() + pending.size() != static_cast<std::size_t>(expected))
    throw NlcsError("root isolation over sample point lost a root");
  for (auto& c : pending) confirmed.push_back(c);
  std::sort(confirmed.begin(), confirmed.end(), [](const RealAlgebraic& a, const RealAlgebraic& b) {
    return compare(a, b) == Ordering::Less;
  });
  out.roots = std::move(confirmed);
  return out;
}

}  // namespace nlcs
